"""Canonical textual AST serialization.

Parenthesized constructor-name notation, e.g.::

    (ProofAction (ASet "A" (TBinOp RLim (TInfty PositiveInfty)
        (TBinder LambdaB "n" (TApply (TVar "a") (TVar "n"))))) ...)

Whitespace-insensitive and round-trippable; spans and step labels are not
part of the canonical form.
"""

from __future__ import annotations

from fractions import Fraction

from . import expr as E
from . import proof as P


class SExprError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Writer

def _atom(s: str) -> str:
    return '"' + s + '"'


def dumps(node, indent: int = 0) -> str:
    """Serialize a Term, Prop, method, action or Proof node."""
    w = _write(node)
    return _layout(w, indent)


def _write(n) -> list:
    match n:
        case E.TNum(v):
            return ["TNum", str(v)]
        case E.TInfty(sign):
            return ["TInfty", sign]
        case E.TConst(name):
            return ["TConst", _atom(name)]
        case E.TVar(name):
            return ["TVar", _atom(name)]
        case E.TUnOp(op, a):
            return ["TUnOp", op, _write(a)]
        case E.TBinOp(op, l, r):
            return ["TBinOp", op, _write(l), _write(r)]
        case E.TApply(f, a):
            return ["TApply", _write(f), _write(a)]
        case E.TBinder(b, v, body):
            return ["TBinder", b, _atom(v), _write(body)]
        case E.TInterval(k, lo, hi):
            return ["TInterval", k, _write(lo), _write(hi)]
        case E.TSet(vs, e, c):
            return ["TSet", [_atom(v) for v in vs], _write(e), _write(c)]
        case E.PTrue():
            return "PTrue"
        case E.PFalse():
            return "PFalse"
        case E.PUnPred(pred, a):
            return ["PUnPred", pred, _write(a)]
        case E.PBinPred(pred, l, r):
            return ["PBinPred", pred, _write(l), _write(r)]
        case E.PCBinPred(pred, l, r, ctx):
            return ["PCBinPred", pred, _write(l), _write(r),
                    [_write(c) for c in ctx]]
        case E.PLongOrder(rels, terms):
            return ["PLongOrder", list(rels), [_write(t) for t in terms]]
        case E.PUnOp(op, a):
            return ["PUnOp", op, _write(a)]
        case E.PBinOp(op, l, r):
            return ["PBinOp", op, _write(l), _write(r)]
        case E.PQuant(q, v, body):
            return ["PQuant", q, _atom(v), _write(body)]
        case P.FNoHint():
            return "FNoHint"
        case P.FDefinition(name):
            return ["FDefinition", _atom(name)]
        case P.FTheorem(name):
            return ["FTheorem", _atom(name)]
        case P.FAddEqn(labels):
            return ["FAddEqn", [_atom(x) for x in labels]]
        case P.FDeriBothTerms(v):
            return ["FDeriBothTerms", _atom(v)]
        case P.BNoHint():
            return "BNoHint"
        case P.BContra():
            return "BContra"
        case P.AIntros(v):
            return ["AIntros", _atom(v)]
        case P.AExists(t):
            return ["AExists", _write(t)]
        case P.ASuppose(p):
            return ["ASuppose", _write(p)]
        case P.ASet(v, t):
            return ["ASet", _atom(v), _write(t)]
        case P.ASetProp(p):
            return ["ASetProp", _write(p)]
        case P.AExistVar(v):
            return ["AExistVar", _atom(v)]
        case P.APoseVar(v, assumptions):
            return ["APoseVar", _atom(v), [_write(a) for a in assumptions]]
        case P.APoseProp(p):
            return ["APoseProp", _write(p)]
        case P.ProofAction(a, rest):
            return ["ProofAction", _write(a), _write(rest)]
        case P.PoseWithoutProof(m, p, rest):
            return ["PoseWithoutProof", _write(m), _write(p), _write(rest)]
        case P.PoseAndProve(m, p, sub, rest):
            return ["PoseAndProve", _write(m), _write(p), _write(sub),
                    _write(rest)]
        case P.ClaimSuffice(m, p, rest):
            return ["ClaimSuffice", _write(m), _write(p), _write(rest)]
        case P.ProveSuffice(m, p, sub, rest):
            return ["ProveSuffice", _write(m), _write(p), _write(sub),
                    _write(rest)]
        case P.ConclWithoutProof(m):
            return ["ConclWithoutProof", _write(m)]
        case P.ConclAndProve(m, sub):
            return ["ConclAndProve", _write(m), _write(sub)]
        case P.PosePartialProof(pose, partial, rest):
            return ["PosePartialProof", _write(pose), _write(partial),
                    _write(rest)]
        case P.EndPartialProof():
            return "EndPartialProof"
    raise SExprError(f"cannot serialize {n!r}")


_PROOF_HEADS = {"ProofAction", "PoseWithoutProof", "PoseAndProve",
                "ClaimSuffice", "ProveSuffice", "ConclWithoutProof",
                "ConclAndProve", "PosePartialProof"}


def _layout(w, depth: int) -> str:
    if isinstance(w, str):
        return w
    head = w[0] if w and isinstance(w[0], str) else None
    parts = [_layout(x, depth + 1) for x in w]
    if head in _PROOF_HEADS:
        pad = "  " * (depth + 1)
        body = parts[0]
        for part in parts[1:]:
            sep = "\n" + pad if part.lstrip("(").split(" ")[0].rstrip(")") in _PROOF_HEADS | {"EndPartialProof"} else " "
            body += sep + part
        return "(" + body + ")"
    return "(" + " ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Reader

def _tokens(text: str):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c
            i += 1
        elif c == '"':
            j = text.index('"', i + 1)
            yield ("str", text[i + 1:j])
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield ("sym", text[i:j])
            i = j


def _read(toks, pos):
    if pos >= len(toks):
        raise SExprError("unexpected end of input")
    t = toks[pos]
    if t == "(":
        items = []
        pos += 1
        while pos < len(toks) and toks[pos] != ")":
            item, pos = _read(toks, pos)
            items.append(item)
        if pos >= len(toks):
            raise SExprError("missing closing parenthesis")
        return items, pos + 1
    if t == ")":
        raise SExprError("unexpected ')'")
    return t, pos + 1


def loads(text: str):
    """Parse a canonical serialization back into an AST value."""
    toks = list(_tokens(text))
    tree, pos = _read(toks, 0)
    if pos != len(toks):
        raise SExprError("trailing input after expression")
    return _build(tree)


def _sym(x) -> str:
    if isinstance(x, tuple) and x[0] == "sym":
        return x[1]
    raise SExprError(f"expected symbol, got {x!r}")


def _str(x) -> str:
    if isinstance(x, tuple) and x[0] == "str":
        return x[1]
    raise SExprError(f"expected quoted string, got {x!r}")


def _strlist(x) -> tuple[str, ...]:
    if not isinstance(x, list):
        raise SExprError("expected a list")
    return tuple(_str(i) for i in x)


def _build(t):
    if isinstance(t, tuple):
        kind, val = t
        if kind == "sym":
            zero = {"FNoHint": P.FNoHint, "BNoHint": P.BNoHint,
                    "BContra": P.BContra, "EndPartialProof": P.EndPartialProof,
                    "PTrue": E.PTrue, "PFalse": E.PFalse}
            if val in zero:
                return zero[val]()
            raise SExprError(f"unknown bare constructor {val!r}")
        raise SExprError(f"unexpected bare string {val!r}")
    if not t:
        raise SExprError("empty expression")
    head = _sym(t[0])
    args = t[1:]

    def n(i):
        return _build(args[i])

    match head:
        case "TNum":
            return E.TNum(Fraction(_sym(args[0])))
        case "TInfty":
            return E.TInfty(_sym(args[0]))
        case "TConst":
            return E.TConst(_str(args[0]))
        case "TVar":
            return E.TVar(_str(args[0]))
        case "TUnOp":
            return E.TUnOp(_sym(args[0]), n(1))
        case "TBinOp":
            return E.TBinOp(_sym(args[0]), n(1), n(2))
        case "TApply":
            return E.TApply(n(0), n(1))
        case "TBinder":
            return E.TBinder(_sym(args[0]), _str(args[1]), n(2))
        case "TInterval":
            return E.TInterval(_sym(args[0]), n(1), n(2))
        case "TSet":
            return E.TSet(_strlist(args[0]), n(1), n(2))
        case "PUnPred":
            return E.PUnPred(_sym(args[0]), n(1))
        case "PBinPred":
            return E.PBinPred(_sym(args[0]), n(1), n(2))
        case "PCBinPred":
            return E.PCBinPred(_sym(args[0]), n(1), n(2),
                               tuple(_build(x) for x in args[3]))
        case "PLongOrder":
            return E.PLongOrder(tuple(_sym(x) for x in args[0]),
                                tuple(_build(x) for x in args[1]))
        case "PUnOp":
            return E.PUnOp(_sym(args[0]), n(1))
        case "PBinOp":
            return E.PBinOp(_sym(args[0]), n(1), n(2))
        case "PQuant":
            return E.PQuant(_sym(args[0]), _str(args[1]), n(2))
        case "FDefinition":
            return P.FDefinition(_str(args[0]))
        case "FTheorem":
            return P.FTheorem(_str(args[0]))
        case "FAddEqn":
            return P.FAddEqn(_strlist(args[0]))
        case "FDeriBothTerms":
            return P.FDeriBothTerms(_str(args[0]))
        case "AIntros":
            return P.AIntros(_str(args[0]))
        case "AExists":
            return P.AExists(n(0))
        case "ASuppose":
            return P.ASuppose(n(0))
        case "ASet":
            return P.ASet(_str(args[0]), n(1))
        case "ASetProp":
            return P.ASetProp(n(0))
        case "AExistVar":
            return P.AExistVar(_str(args[0]))
        case "APoseVar":
            return P.APoseVar(_str(args[0]), tuple(_build(x) for x in args[1]))
        case "APoseProp":
            return P.APoseProp(n(0))
        case "ProofAction":
            return P.ProofAction(n(0), n(1))
        case "PoseWithoutProof":
            return P.PoseWithoutProof(n(0), n(1), n(2))
        case "PoseAndProve":
            return P.PoseAndProve(n(0), n(1), n(2), n(3))
        case "ClaimSuffice":
            return P.ClaimSuffice(n(0), n(1), n(2))
        case "ProveSuffice":
            return P.ProveSuffice(n(0), n(1), n(2), n(3))
        case "ConclWithoutProof":
            return P.ConclWithoutProof(n(0))
        case "ConclAndProve":
            return P.ConclAndProve(n(0), n(1))
        case "PosePartialProof":
            return P.PosePartialProof(n(0), n(1), n(2))
    raise SExprError(f"unknown constructor {head!r}")
