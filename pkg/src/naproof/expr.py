"""Mathematical terms and propositions.

Every value is an immutable dataclass; the operations here (free variables,
capture-avoiding substitution, alpha-equivalence) are pure functions shared by
the parser, the static analyzer, the checker and the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

# ---------------------------------------------------------------------------
# Terms

POSITIVE = "PositiveInfty"
NEGATIVE = "NegativeInfty"

LAMBDA_B = "LambdaB"
SEQLIMIT_B = "SeqLimitB"

# unary term operators
NEG, SUP, INF, LN, SQRT, SIN, COS, TAN, ABS = (
    "Neg", "Sup", "Inf", "Ln", "Sqrt", "Sin", "Cos", "Tan", "Abs")

# binary term operators
ADD, SUB, MUL, DIV, POW, RLIM = "RAdd", "RSub", "RMul", "RDiv", "RPow", "RLim"

INTERVAL_KINDS = ("closed", "open", "closed_open", "open_closed")


@dataclass(frozen=True)
class TNum:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class TInfty:
    sign: str  # PositiveInfty | NegativeInfty


@dataclass(frozen=True)
class TConst:
    name: str  # e, pi


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TUnOp:
    op: str
    arg: "Term"


@dataclass(frozen=True)
class TBinOp:
    op: str
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class TApply:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class TBinder:
    binder: str  # LambdaB | SeqLimitB
    var: str
    body: "Term"


@dataclass(frozen=True)
class TInterval:
    kind: str
    lo: "Term"
    hi: "Term"


@dataclass(frozen=True)
class TSet:
    vars: tuple[str, ...]
    element: "Term"
    condition: "Prop"


Term = Union[TNum, TInfty, TConst, TVar, TUnOp, TBinOp, TApply, TBinder,
             TInterval, TSet]

# ---------------------------------------------------------------------------
# Propositions

# binary predicates
REQ, RNE, RGT, RLT, RGE, RLE = "REq", "RNe", "RGt", "RLt", "RGe", "RLe"
IS_SUBSEQ, CONTINUOUS_AT, RIN = "IsSubseq", "ContinuousAt", "RIn"

# unary predicates
CONVERGENT, MONO_INC, MONO_DEC, UPPER_BDD, LOWER_BDD = (
    "Convergent", "MonotonicIncreasing", "MonotonicDecreasing",
    "UpperBounded", "LowerBounded")

# prop operators
CNOT, CAND, COR, CIMPLY = "CNot", "CAnd", "COr", "CImply"
FORALL, EXISTS = "forall", "exists"

ORDER_PREDS = (RGT, RLT, RGE, RLE)
CHAIN_PREDS = (REQ,) + ORDER_PREDS


@dataclass(frozen=True)
class PTrue:
    pass


@dataclass(frozen=True)
class PFalse:
    pass


@dataclass(frozen=True)
class PUnPred:
    pred: str
    arg: Term


@dataclass(frozen=True)
class PBinPred:
    pred: str
    left: Term
    right: Term


@dataclass(frozen=True)
class PCBinPred:
    pred: str
    left: Term
    right: Term
    context: tuple["Prop", ...]


@dataclass(frozen=True)
class PLongOrder:
    """A relation chain like ``a < b <= c``: len(terms) == len(rels) + 1."""

    rels: tuple[str, ...]
    terms: tuple[Term, ...]

    def __post_init__(self):
        if len(self.terms) != len(self.rels) + 1 or len(self.rels) < 2:
            raise ValueError("chain needs at least two relations")


@dataclass(frozen=True)
class PUnOp:
    op: str
    arg: "Prop"


@dataclass(frozen=True)
class PBinOp:
    op: str
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class PQuant:
    quant: str  # forall | exists
    var: str
    body: "Prop"


Prop = Union[PTrue, PFalse, PUnPred, PBinPred, PCBinPred, PLongOrder, PUnOp,
             PBinOp, PQuant]

TRUE = PTrue()
FALSE = PFalse()


def num(value) -> TNum:
    return TNum(Fraction(value))


def var(name: str) -> TVar:
    return TVar(name)


def conj(*props: Prop) -> Prop:
    """Right-nested conjunction of one or more propositions."""
    if not props:
        return TRUE
    out = props[-1]
    for p in reversed(props[:-1]):
        out = PBinOp(CAND, p, out)
    return out


def conjuncts(p: Prop) -> list[Prop]:
    """Flatten top-level conjunctions."""
    if isinstance(p, PBinOp) and p.op == CAND:
        return conjuncts(p.left) + conjuncts(p.right)
    return [p]


def neg(p: Prop) -> Prop:
    return PUnOp(CNOT, p)


# ---------------------------------------------------------------------------
# Free variables

def free_vars(x) -> set[str]:
    """Identifiers occurring outside any enclosing binder for that name.

    Accepts a Term, a Prop, or an iterable of either.
    """
    out: set[str] = set()
    _fv(x, frozenset(), out)
    return out


def _fv(x, bound: frozenset, out: set[str]) -> None:
    match x:
        case TVar(name):
            if name not in bound:
                out.add(name)
        case TNum() | TInfty() | TConst() | PTrue() | PFalse():
            pass
        case TUnOp(_, arg) | PUnPred(_, arg):
            _fv(arg, bound, out)
        case TBinOp(_, left, right) | PBinPred(_, left, right):
            _fv(left, bound, out)
            _fv(right, bound, out)
        case PCBinPred(_, left, right, context):
            _fv(left, bound, out)
            _fv(right, bound, out)
            for c in context:
                _fv(c, bound, out)
        case TApply(fn, arg):
            _fv(fn, bound, out)
            _fv(arg, bound, out)
        case TBinder(_, v, body):
            _fv(body, bound | {v}, out)
        case TInterval(_, lo, hi):
            _fv(lo, bound, out)
            _fv(hi, bound, out)
        case TSet(vs, element, condition):
            inner = bound | set(vs)
            _fv(element, inner, out)
            _fv(condition, inner, out)
        case PLongOrder(_, terms):
            for t in terms:
                _fv(t, bound, out)
        case PUnOp(_, arg):
            _fv(arg, bound, out)
        case PBinOp(_, left, right):
            _fv(left, bound, out)
            _fv(right, bound, out)
        case PQuant(_, v, body):
            _fv(body, bound | {v}, out)
        case [*items] | (*items,):
            for it in items:
                _fv(it, bound, out)
        case _:
            raise TypeError(f"free_vars: unsupported value {x!r}")


def fresh_name(base: str, avoid: set[str]) -> str:
    """A name not in `avoid`, derived from `base` by priming."""
    name = base
    while name in avoid:
        name += "'"
    return name


# ---------------------------------------------------------------------------
# Substitution

def substitute(target, name: str, replacement: Term):
    """Replace free occurrences of `name` by `replacement`, avoiding capture."""
    repl_fv = free_vars(replacement)
    return _subst(target, name, replacement, repl_fv)


def _rename_binder(v: str, body, name: str, repl_fv: set[str]):
    """Pick a capture-free binder name, renaming the body if necessary."""
    if v in repl_fv and name in free_vars(body) - {v}:
        v2 = fresh_name(v, repl_fv | free_vars(body) | {name})
        body = _subst(body, v, TVar(v2), {v2})
        return v2, body
    return v, body


def _subst(x, name: str, repl: Term, repl_fv: set[str]):
    match x:
        case TVar(n):
            return repl if n == name else x
        case TNum() | TInfty() | TConst() | PTrue() | PFalse():
            return x
        case TUnOp(op, arg):
            return TUnOp(op, _subst(arg, name, repl, repl_fv))
        case TBinOp(op, left, right):
            return TBinOp(op, _subst(left, name, repl, repl_fv),
                          _subst(right, name, repl, repl_fv))
        case TApply(fn, arg):
            return TApply(_subst(fn, name, repl, repl_fv),
                          _subst(arg, name, repl, repl_fv))
        case TBinder(b, v, body):
            if v == name:
                return x
            v2, body = _rename_binder(v, body, name, repl_fv)
            return TBinder(b, v2, _subst(body, name, repl, repl_fv))
        case TInterval(kind, lo, hi):
            return TInterval(kind, _subst(lo, name, repl, repl_fv),
                             _subst(hi, name, repl, repl_fv))
        case TSet(vs, element, condition):
            if name in vs:
                return x
            new_vs, elem, cond = [], element, condition
            for v in vs:
                if v in repl_fv and name in (free_vars(elem) | free_vars(cond)) - set(vs):
                    v2 = fresh_name(v, repl_fv | free_vars(elem) | free_vars(cond) | {name})
                    elem = _subst(elem, v, TVar(v2), {v2})
                    cond = _subst(cond, v, TVar(v2), {v2})
                    new_vs.append(v2)
                else:
                    new_vs.append(v)
            return TSet(tuple(new_vs), _subst(elem, name, repl, repl_fv),
                        _subst(cond, name, repl, repl_fv))
        case PUnPred(pred, arg):
            return PUnPred(pred, _subst(arg, name, repl, repl_fv))
        case PBinPred(pred, left, right):
            return PBinPred(pred, _subst(left, name, repl, repl_fv),
                            _subst(right, name, repl, repl_fv))
        case PCBinPred(pred, left, right, context):
            return PCBinPred(pred, _subst(left, name, repl, repl_fv),
                             _subst(right, name, repl, repl_fv),
                             tuple(_subst(c, name, repl, repl_fv) for c in context))
        case PLongOrder(rels, terms):
            return PLongOrder(rels, tuple(_subst(t, name, repl, repl_fv)
                                          for t in terms))
        case PUnOp(op, arg):
            return PUnOp(op, _subst(arg, name, repl, repl_fv))
        case PBinOp(op, left, right):
            return PBinOp(op, _subst(left, name, repl, repl_fv),
                          _subst(right, name, repl, repl_fv))
        case PQuant(q, v, body):
            if v == name:
                return x
            v2, body = _rename_binder(v, body, name, repl_fv)
            return PQuant(q, v2, _subst(body, name, repl, repl_fv))
        case _:
            raise TypeError(f"substitute: unsupported value {x!r}")


# ---------------------------------------------------------------------------
# Chain desugaring and alpha-equivalence

def desugar(p: Prop) -> Prop:
    """Expand relation chains into right-nested binary conjunctions."""
    match p:
        case PLongOrder(rels, terms):
            links = [PBinPred(r, terms[i], terms[i + 1])
                     for i, r in enumerate(rels)]
            return conj(*links)
        case PUnPred() | PBinPred() | PCBinPred() | PTrue() | PFalse():
            return p
        case PUnOp(op, arg):
            return PUnOp(op, desugar(arg))
        case PBinOp(op, left, right):
            return PBinOp(op, desugar(left), desugar(right))
        case PQuant(q, v, body):
            return PQuant(q, v, desugar(body))
        case _:
            raise TypeError(f"desugar: unsupported value {p!r}")


_FLIP = {RGT: RLT, RGE: RLE}


def _canon(x):
    """Desugar chains and orient >,>= as <,<= for structural comparison."""
    match x:
        case PLongOrder():
            return _canon(desugar(x))
        case PBinPred(pred, left, right) if pred in _FLIP:
            return PBinPred(_FLIP[pred], _canon(right), _canon(left))
        case PBinPred(pred, left, right):
            return PBinPred(pred, _canon(left), _canon(right))
        case PCBinPred(pred, left, right, ctx):
            return PCBinPred(pred, _canon(left), _canon(right),
                             tuple(_canon(c) for c in ctx))
        case PUnPred(pred, arg):
            return PUnPred(pred, _canon(arg))
        case PUnOp(op, arg):
            return PUnOp(op, _canon(arg))
        case PBinOp(op, left, right):
            return PBinOp(op, _canon(left), _canon(right))
        case PQuant(q, v, body):
            return PQuant(q, v, _canon(body))
        case TUnOp(op, arg):
            return TUnOp(op, _canon(arg))
        case TBinOp(op, left, right):
            return TBinOp(op, _canon(left), _canon(right))
        case TApply(fn, arg):
            return TApply(_canon(fn), _canon(arg))
        case TBinder(b, v, body):
            return TBinder(b, v, _canon(body))
        case TInterval(kind, lo, hi):
            return TInterval(kind, _canon(lo), _canon(hi))
        case TSet(vs, element, condition):
            return TSet(vs, _canon(element), _canon(condition))
        case _:
            return x


def _alpha(a, b, env_a: dict, env_b: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a, b:
        case TVar(n1), TVar(n2):
            d1, d2 = env_a.get(n1), env_b.get(n2)
            if d1 is None and d2 is None:
                return n1 == n2
            return d1 == d2
        case (TNum(v1), TNum(v2)):
            return v1 == v2
        case (TInfty(s1), TInfty(s2)) | (TConst(s1), TConst(s2)):
            return s1 == s2
        case (PTrue(), PTrue()) | (PFalse(), PFalse()):
            return True
        case TUnOp(o1, x1), TUnOp(o2, x2):
            return o1 == o2 and _alpha(x1, x2, env_a, env_b, depth)
        case (TBinOp(o1, l1, r1), TBinOp(o2, l2, r2)) | \
             (PBinPred(o1, l1, r1), PBinPred(o2, l2, r2)):
            return (o1 == o2 and _alpha(l1, l2, env_a, env_b, depth)
                    and _alpha(r1, r2, env_a, env_b, depth))
        case PCBinPred(o1, l1, r1, c1), PCBinPred(o2, l2, r2, c2):
            return (o1 == o2 and len(c1) == len(c2)
                    and _alpha(l1, l2, env_a, env_b, depth)
                    and _alpha(r1, r2, env_a, env_b, depth)
                    and all(_alpha(x, y, env_a, env_b, depth)
                            for x, y in zip(c1, c2)))
        case TApply(f1, x1), TApply(f2, x2):
            return (_alpha(f1, f2, env_a, env_b, depth)
                    and _alpha(x1, x2, env_a, env_b, depth))
        case TBinder(b1, v1, t1), TBinder(b2, v2, t2):
            if b1 != b2:
                return False
            return _alpha(t1, t2, {**env_a, v1: depth}, {**env_b, v2: depth},
                          depth + 1)
        case TInterval(k1, l1, h1), TInterval(k2, l2, h2):
            return (k1 == k2 and _alpha(l1, l2, env_a, env_b, depth)
                    and _alpha(h1, h2, env_a, env_b, depth))
        case TSet(vs1, e1, c1), TSet(vs2, e2, c2):
            if len(vs1) != len(vs2):
                return False
            ea = {**env_a, **{v: depth + i for i, v in enumerate(vs1)}}
            eb = {**env_b, **{v: depth + i for i, v in enumerate(vs2)}}
            d = depth + len(vs1)
            return _alpha(e1, e2, ea, eb, d) and _alpha(c1, c2, ea, eb, d)
        case PUnPred(o1, x1), PUnPred(o2, x2):
            return o1 == o2 and _alpha(x1, x2, env_a, env_b, depth)
        case PUnOp(o1, x1), PUnOp(o2, x2):
            return o1 == o2 and _alpha(x1, x2, env_a, env_b, depth)
        case PBinOp(o1, l1, r1), PBinOp(o2, l2, r2):
            return (o1 == o2 and _alpha(l1, l2, env_a, env_b, depth)
                    and _alpha(r1, r2, env_a, env_b, depth))
        case PQuant(q1, v1, b1), PQuant(q2, v2, b2):
            if q1 != q2:
                return False
            return _alpha(b1, b2, {**env_a, v1: depth}, {**env_b, v2: depth},
                          depth + 1)
    return False


def alpha_equal(a, b) -> bool:
    """Structural equality up to bound-variable renaming.

    Relation chains are desugared and >/>= comparisons oriented as </<=
    before comparison, so ``a < b < c`` equals ``(a < b) and (b < c)`` and
    ``x > 0`` equals ``0 < x``.
    """
    return _alpha(_canon(a), _canon(b), {}, {}, 0)


def alpha_in(p: Prop, props) -> bool:
    return any(alpha_equal(p, q) for q in props)
