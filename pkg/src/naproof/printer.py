"""Pretty printer: AST back to canonical surface text.

Output re-parses to an alpha-equal AST (round-trip property).  Exactly one
canonical phrasing is emitted per construct; aliases accepted by the parser
are never produced.
"""

from __future__ import annotations

from typing import Optional

from . import expr as E
from . import proof as P
from .parser import KeywordTable, default_table

# term precedence levels
_P_ADD, _P_MUL, _P_UNARY, _P_POW, _P_POSTFIX, _P_ATOM = 1, 2, 3, 4, 5, 6

_TERM_BIN = {E.ADD: (" + ", _P_ADD, _P_ADD, _P_MUL),
             E.SUB: (" - ", _P_ADD, _P_ADD, _P_MUL),
             E.MUL: ("*", _P_MUL, _P_MUL, _P_UNARY),
             E.DIV: ("/", _P_MUL, _P_MUL, _P_UNARY)}

_FUN_NAMES = {E.LN: "ln", E.SQRT: "sqrt", E.SIN: "sin", E.COS: "cos",
              E.TAN: "tan", E.ABS: "abs"}

_REL_SYMS = {E.REQ: "=", E.RNE: "!=", E.RGT: ">", E.RLT: "<",
             E.RGE: ">=", E.RLE: "<="}


def term_str(t: E.Term, prec: int = 0) -> str:
    s, p = _term(t)
    if p < prec:
        return "(" + s + ")"
    return s


def _term(t: E.Term) -> tuple[str, int]:
    match t:
        case E.TNum(v):
            if v < 0:
                return str(v), _P_UNARY - 1  # forces parens inside operators
            if v.denominator != 1:
                return str(v), _P_MUL
            return str(v), _P_ATOM
        case E.TInfty(sign):
            s = "+infty" if sign == E.POSITIVE else "-infty"
            return s, _P_UNARY - 1
        case E.TConst(name):
            return name, _P_ATOM
        case E.TVar(name):
            return name, _P_ATOM
        case E.TUnOp(op, arg):
            if op == E.NEG:
                return "-" + term_str(arg, _P_UNARY), _P_UNARY - 1
            if op in (E.SUP, E.INF):
                name = "sup" if op == E.SUP else "inf"
                return name + " " + term_str(arg, _P_ATOM), _P_POSTFIX
            return _FUN_NAMES[op] + "(" + term_str(arg) + ")", _P_ATOM
        case E.TBinOp(E.RLIM, point, E.TBinder(_, v, body)):
            head = f"lim({v} -> {term_str(point)}) "
            return head + term_str(body, _P_MUL), _P_MUL
        case E.TBinOp(E.RLIM, point, fn):
            # binder-less operand: print an explicit application
            v = E.fresh_name("k", E.free_vars(fn))
            head = f"lim({v} -> {term_str(point)}) "
            return head + term_str(E.TApply(fn, E.TVar(v)), _P_MUL), _P_MUL
        case E.TBinOp(E.POW, left, right):
            return (term_str(left, _P_POSTFIX) + "^" +
                    term_str(right, _P_POW), _P_POW)
        case E.TBinOp(op, left, right):
            sym, prec, lp, rp = _TERM_BIN[op]
            return term_str(left, lp) + sym + term_str(right, rp), prec
        case E.TApply(fn, arg):
            return term_str(fn, _P_POSTFIX) + "(" + term_str(arg) + ")", _P_POSTFIX
        case E.TBinder(binder, v, body):
            kw = "fun" if binder == E.LAMBDA_B else "seq"
            return f"({kw} {v} -> {term_str(body)})", _P_ATOM
        case E.TInterval(kind, lo, hi):
            opens = {"closed": "[", "open": "(", "closed_open": "[",
                     "open_closed": "("}
            closes = {"closed": "]", "open": ")", "closed_open": ")",
                      "open_closed": "]"}
            return (opens[kind] + term_str(lo) + ", " + term_str(hi) +
                    closes[kind]), _P_ATOM
        case E.TSet(vs, element, condition):
            body = term_str(element)
            if vs:
                body += " : " + " ".join(vs)
                if condition != E.TRUE:
                    body += " | " + prop_str(condition)
            return "{" + body + "}", _P_ATOM
    raise TypeError(f"term_str: unsupported term {t!r}")


# prop precedence: quant/imply 0, or 1, and 2, not 3, atom 4
_PP_TOP, _PP_OR, _PP_AND, _PP_NOT, _PP_ATOM = 0, 1, 2, 3, 4


def prop_str(p: E.Prop, prec: int = 0, table: Optional[KeywordTable] = None
             ) -> str:
    table = table or default_table()
    s, level = _prop(p, table)
    if level < prec:
        return "(" + s + ")"
    return s


def _pred_phrase(table: KeywordTable, category: str, name: str) -> str:
    key = f"{category}.{name}"
    if key in table.phrases:
        return table.canonical(key)
    raise TypeError(f"no surface phrase for predicate {name!r}")


def _prop(p: E.Prop, table: KeywordTable) -> tuple[str, int]:
    match p:
        case E.PTrue():
            return "true", _PP_ATOM
        case E.PFalse():
            return "false", _PP_ATOM
        case E.PUnPred(pred, arg):
            phrase = _pred_phrase(table, "pred", pred)
            return term_str(arg, _P_ATOM) + " " + phrase, _PP_ATOM
        case E.PBinPred(E.RIN, left, right):
            return (term_str(left, _P_ADD) + " in " + term_str(right, _P_ADD),
                    _PP_ATOM)
        case E.PBinPred(pred, left, right) if pred in _REL_SYMS:
            return (term_str(left, _P_ADD) + " " + _REL_SYMS[pred] + " " +
                    term_str(right, _P_ADD)), _PP_ATOM
        case E.PBinPred(pred, left, right):
            phrase = _pred_phrase(table, "predbin", pred)
            return (term_str(left, _P_ATOM) + " " + phrase + " " +
                    term_str(right, _P_ATOM)), _PP_ATOM
        case E.PCBinPred(pred, left, right, _):
            inner = E.PBinPred(pred, left, right)
            return _prop(inner, table)
        case E.PLongOrder(rels, terms):
            parts = [term_str(terms[0], _P_ADD)]
            for r, t in zip(rels, terms[1:]):
                parts.append(_REL_SYMS[r])
                parts.append(term_str(t, _P_ADD))
            return " ".join(parts), _PP_ATOM
        case E.PUnOp(E.CNOT, arg):
            return "not " + prop_str(arg, _PP_ATOM, table), _PP_NOT
        case E.PBinOp(E.CAND, left, right):
            return (prop_str(left, _PP_NOT, table) + " and " +
                    prop_str(right, _PP_AND, table)), _PP_AND
        case E.PBinOp(E.COR, left, right):
            return (prop_str(left, _PP_AND, table) + " or " +
                    prop_str(right, _PP_OR, table)), _PP_OR
        case E.PBinOp(E.CIMPLY, left, right):
            return ("if " + prop_str(left, _PP_TOP, table) + " then " +
                    prop_str(right, _PP_TOP, table)), _PP_TOP
        case E.PQuant(E.FORALL, v, body):
            guard, inner = _split_guard(v, body)
            if guard is not None:
                return (f"for every {v} {guard}, " +
                        prop_str(inner, _PP_TOP, table)), _PP_TOP
            return f"for every {v}, " + prop_str(body, _PP_TOP, table), _PP_TOP
        case E.PQuant(E.EXISTS, v, body):
            return (f"there exists {v} such that " +
                    prop_str(body, _PP_TOP, table)), _PP_TOP
    raise TypeError(f"prop_str: unsupported proposition {p!r}")


def _split_guard(v: str, body: E.Prop):
    """``forall v. (v REL t) => Q`` prints as ``for every v REL t, Q``."""
    match body:
        case E.PBinOp(E.CIMPLY, E.PBinPred(pred, E.TVar(lv), t), inner) \
                if lv == v and pred in _REL_SYMS and pred != E.RNE \
                and v not in E.free_vars(t):
            return _REL_SYMS[pred] + " " + term_str(t, _P_ADD), inner
    return None, None


# ---------------------------------------------------------------------------
# Proof printing

def _method_clause(m: P.FwdMethod, table: KeywordTable) -> str:
    match m:
        case P.FTheorem(name):
            return "theorem " + name
        case P.FDefinition(name):
            return "definition " + name
        case P.FAddEqn(labels):
            return "adding " + " ".join(f"({x})" for x in labels)
        case P.FDeriBothTerms(v):
            return (f"taking the derivative of {v} on the both sides of "
                    "the equality")
    raise TypeError(f"no surface clause for {m!r}")


def _pose_action(pa: P.PoseAction, table: KeywordTable) -> str:
    match pa:
        case P.APoseVar(v, assumptions):
            if not assumptions:
                return f"For every {v}"
            if len(assumptions) == 1:
                match assumptions[0]:
                    case E.PBinPred(pred, E.TVar(lv), t) \
                            if lv == v and pred in _REL_SYMS and pred != E.RNE:
                        return (f"For every {v} {_REL_SYMS[pred]} "
                                f"{term_str(t, _P_ADD)}")
            guard = " and ".join(prop_str(a, _PP_NOT, table)
                                 for a in assumptions)
            return f"For every {v} such that {guard}"
        case P.APoseProp(p):
            return "Suppose " + prop_str(p, table=table)
    raise TypeError(f"no surface clause for {pa!r}")


def proof_lines(pr: P.Proof, table: KeywordTable, indent: int) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    node = pr
    while True:
        tag = f"({node.label}) " if node.label else ""
        match node:
            case P.ProofAction(action, rest):
                match action:
                    case P.AIntros(v):
                        stmt = f"Let {v}"
                    case P.AExists(t):
                        stmt = f"There exists {term_str(t)}"
                    case P.ASuppose(p):
                        stmt = "Suppose " + prop_str(p, table=table)
                    case P.ASet(v, t):
                        stmt = f"Set {v} = {term_str(t)}"
                    case P.ASetProp(p):
                        stmt = "Introduce " + prop_str(p, table=table)
                    case P.AExistVar(v):
                        stmt = f"Fix {v}"
                lines.append(pad + tag + stmt)
                node = rest
            case P.PoseWithoutProof(method, p, rest):
                if isinstance(method, P.FNoHint):
                    stmt = "Obviously " + prop_str(p, table=table)
                else:
                    stmt = (f"By {_method_clause(method, table)}, " +
                            prop_str(p, table=table))
                lines.append(pad + tag + stmt)
                node = rest
            case P.PoseAndProve(method, p, sub, rest):
                if isinstance(method, P.FNoHint):
                    head = "The following proves " + prop_str(p, table=table)
                else:
                    head = (f"Use {_method_clause(method, table)} to prove " +
                            prop_str(p, table=table))
                lines.append(pad + tag + head + " {")
                lines.extend(proof_lines(sub, table, indent + 1))
                lines.append(pad + "}")
                node = rest
            case P.ClaimSuffice(method, p, rest):
                head = ("Assume for contradiction "
                        if isinstance(method, P.BContra)
                        else "It suffices to prove ")
                lines.append(pad + tag + head + prop_str(p, table=table))
                node = rest
            case P.ProveSuffice(method, p, sub, rest):
                head = ("Assume for contradiction "
                        if isinstance(method, P.BContra)
                        else "It suffices to prove ")
                lines.append(pad + tag + head + prop_str(p, table=table) +
                             " {")
                lines.extend(proof_lines(sub, table, indent + 1))
                lines.append(pad + "}")
                node = rest
            case P.ConclWithoutProof(method):
                if isinstance(method, P.FNoHint):
                    lines.append(pad + tag + "which proves the proposition.")
                elif isinstance(method, (P.FTheorem, P.FDefinition)):
                    lines.append(pad + tag +
                                 f"Use {_method_clause(method, table)} "
                                 "to prove the proposition.")
                else:
                    lines.append(pad + tag +
                                 f"By {_method_clause(method, table)}, "
                                 "which proves the proposition.")
                return lines
            case P.ConclAndProve(method, sub):
                if isinstance(method, P.FNoHint):
                    head = "The following proves the proposition {"
                else:
                    head = (f"Use {_method_clause(method, table)} to prove "
                            "the proposition {")
                lines.append(pad + tag + head)
                lines.extend(proof_lines(sub, table, indent + 1))
                lines.append(pad + "}")
                return lines
            case P.PosePartialProof(pose, partial, rest):
                lines.append(pad + tag + _pose_action(pose, table) + " {")
                lines.extend(proof_lines(partial, table, indent + 1))
                lines.append(pad + "}")
                node = rest
            case P.EndPartialProof():
                # implied by the closing brace of the partial body
                return lines
            case _:
                raise TypeError(f"proof_lines: unsupported node {node!r}")


def pretty_print(node, table: Optional[KeywordTable] = None) -> str:
    """Render a Proof, Prop or Term as canonical surface text."""
    table = table or default_table()
    if isinstance(node, (P.ProofAction, P.PoseWithoutProof, P.PoseAndProve,
                         P.ClaimSuffice, P.ProveSuffice, P.ConclWithoutProof,
                         P.ConclAndProve, P.PosePartialProof,
                         P.EndPartialProof)):
        return "\n".join(proof_lines(node, table, 0)) + "\n"
    try:
        return prop_str(node, table=table)
    except TypeError:
        return term_str(node)


def print_document(statement: E.Prop, pr: P.Proof,
                   table: Optional[KeywordTable] = None) -> str:
    table = table or default_table()
    return ("Theorem: " + prop_str(statement, table=table) + "\nProof:\n" +
            pretty_print(pr, table))
