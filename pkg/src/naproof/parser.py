"""Recursive-descent parser for the surface proof language.

The parser performs a plain, structure-preserving translation of the
controlled grammar into the proof AST; it never resolves semantics (no
existential instantiation, no notation rewriting — that is the analyzer's
job).  Statements are separated by commas or newlines, subproof and partial
proof bodies are brace-delimited, and steps may carry explicit ``(label)``
tags.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import expr as E
from . import proof as P
from .lexer import (ParseDiagnostic, ProofSyntaxError, SourceDocument, Token,
                    tokenize)
from .proof import Span

# Words that cannot be used as identifiers.
RESERVED = {
    "for", "every", "all", "there", "exists", "such", "that", "if", "then",
    "and", "or", "not", "is", "in", "sup", "inf", "lim", "ln", "sqrt", "sin",
    "cos", "tan", "abs", "fun", "seq", "infty", "infinity", "true", "false",
    "the", "of", "as", "to",
}

REL_OPS = {"=": E.REQ, "!=": E.RNE, "<": E.RLT, ">": E.RGT,
           "<=": E.RLE, ">=": E.RGE}
_ASC = {E.RLT, E.RLE, E.REQ}
_DESC = {E.RGT, E.RGE, E.REQ}

_FUN_OPS = {"ln": E.LN, "sqrt": E.SQRT, "sin": E.SIN, "cos": E.COS,
            "tan": E.TAN, "abs": E.ABS}


class KeywordTable:
    """Phrase table mapping grammar constructs to surface keyword phrases.

    Format: one ``construct<TAB>phrase`` pair per line; the first phrase for
    a construct is canonical (used by the pretty printer), the rest are
    accepted aliases.
    """

    def __init__(self, pairs: list[tuple[str, str]]):
        self.phrases: dict[str, list[tuple[str, ...]]] = {}
        for construct, phrase in pairs:
            words = tuple(w.lower() for w in phrase.split())
            self.phrases.setdefault(construct, []).append(words)
        # category -> [(words, construct)] sorted longest-first
        self._by_cat: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for construct, alts in self.phrases.items():
            cat = construct.split(".", 1)[0]
            for words in alts:
                self._by_cat.setdefault(cat, []).append((words, construct))
        for cat in self._by_cat:
            self._by_cat[cat].sort(key=lambda x: -len(x[0]))

    @classmethod
    def from_text(cls, text: str) -> "KeywordTable":
        pairs = []
        for i, line in enumerate(text.splitlines(), start=1):
            line = line.rstrip()
            if not line or line.lstrip().startswith("#"):
                continue
            if "\t" not in line:
                raise ValueError(f"keyword table line {i}: expected TAB")
            construct, phrase = line.split("\t", 1)
            pairs.append((construct.strip(), phrase.strip()))
        return cls(pairs)

    @classmethod
    def load(cls, path: Optional[str] = None) -> "KeywordTable":
        if path is None:
            text = (importlib.resources.files("naproof.data") / "keywords.tsv"
                    ).read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return cls.from_text(text)

    def canonical(self, construct: str) -> str:
        return " ".join(self.phrases[construct][0])

    def alternatives(self, category: str):
        return self._by_cat.get(category, [])


_DEFAULT_TABLE: Optional[KeywordTable] = None


def default_table() -> KeywordTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = KeywordTable.load()
    return _DEFAULT_TABLE


class _StmtError(Exception):
    def __init__(self, diag: ParseDiagnostic):
        self.diag = diag


@dataclass
class _Parsed:
    """One parsed statement before chain assembly."""
    build: object       # callable(rest) -> Proof, or a terminal Proof node
    terminal: bool
    span: Span
    label: str


class Parser:
    def __init__(self, tokens: list[Token], table: Optional[KeywordTable] = None,
                 path: Optional[str] = None):
        self.toks = tokens
        self.pos = 0
        self.table = table or default_table()
        self.path = path
        self.diags: list[ParseDiagnostic] = []
        self._auto = 0

    # -- token helpers ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> Token:
        t = self.peek()
        if t.kind != "eof":
            self.pos += 1
        return t

    def at_op(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.value == value

    def eat_op(self, value: str) -> Token:
        if not self.at_op(value):
            self.fail(f"expected {value!r}", expected=(value,))
        return self.next()

    def skip_seps(self):
        while self.peek().kind == "sep" or self.at_op(","):
            self.next()

    def fail(self, message: str, expected=()):
        raise _StmtError(ParseDiagnostic(self.peek().span, message,
                                         tuple(expected)))

    def match_phrase(self, category: str) -> Optional[str]:
        """Match the longest keyword phrase of `category`; returns construct."""
        for words, construct in self.table.alternatives(category):
            ok = True
            for i, w in enumerate(words):
                t = self.peek(i)
                if t.kind != "word" or t.value.lower() != w:
                    ok = False
                    break
            if ok:
                self.pos += len(words)
                return construct
        return None

    def accept_phrase(self, category: str, construct: str) -> bool:
        """Match a specific construct's phrase; no tokens consumed on miss."""
        save = self.pos
        if self.match_phrase(category) == construct:
            return True
        self.pos = save
        return False

    def ident(self, what: str = "identifier") -> str:
        t = self.peek()
        if t.kind != "word" or t.value.lower() in RESERVED:
            self.fail(f"expected {what}", expected=(what,))
        self.next()
        return t.value

    def auto_label(self) -> str:
        self._auto += 1
        return f"s{self._auto}"

    # -- terms -------------------------------------------------------------

    def term(self) -> E.Term:
        return self._add()

    def _add(self) -> E.Term:
        t = self._mul()
        while self.at_op("+") or self.at_op("-"):
            op = E.ADD if self.next().value == "+" else E.SUB
            t = E.TBinOp(op, t, self._mul())
        return t

    def _mul(self) -> E.Term:
        t = self._unary()
        while self.at_op("*") or self.at_op("/"):
            op = E.MUL if self.next().value == "*" else E.DIV
            rhs = self._unary()
            if (op == E.DIV and isinstance(t, E.TNum)
                    and isinstance(rhs, E.TNum) and rhs.value != 0):
                t = E.TNum(t.value / rhs.value)  # fold literal rationals
            else:
                t = E.TBinOp(op, t, rhs)
        return t

    def _unary(self) -> E.Term:
        if self.at_op("-"):
            self.next()
            arg = self._unary()
            if isinstance(arg, E.TNum):
                return E.TNum(-arg.value)
            if isinstance(arg, E.TInfty):
                return E.TInfty(E.NEGATIVE if arg.sign == E.POSITIVE
                                else E.POSITIVE)
            return E.TUnOp(E.NEG, arg)
        if self.at_op("+"):
            self.next()
            return self._unary()
        return self._pow()

    def _pow(self) -> E.Term:
        t = self._postfix()
        if self.at_op("^"):
            self.next()
            return E.TBinOp(E.POW, t, self._unary())
        return t

    def _postfix(self) -> E.Term:
        t = self._atom()
        while True:
            if self.at_op("_") and isinstance(t, (E.TVar, E.TApply)):
                self.next()
                sub = self.peek()
                if sub.kind == "num":
                    self.next()
                    t = E.TApply(t, E.TNum(Fraction(sub.value)))
                else:
                    t = E.TApply(t, E.TVar(self.ident("subscript")))
            elif self.at_op("(") and isinstance(t, (E.TVar, E.TApply)):
                self.next()
                arg = self.term()
                self.eat_op(")")
                t = E.TApply(t, arg)
            else:
                return t

    def _atom(self) -> E.Term:
        t = self.peek()
        if t.kind == "num":
            self.next()
            return E.TNum(Fraction(t.value))
        if t.kind == "word":
            low = t.value.lower()
            if low in ("infty", "infinity"):
                self.next()
                return E.TInfty(E.POSITIVE)
            if t.value in ("e", "pi"):
                self.next()
                return E.TConst(t.value)
            if low in ("sup", "inf"):
                self.next()
                return E.TUnOp(E.SUP if low == "sup" else E.INF, self._atom())
            if low in _FUN_OPS:
                self.next()
                self.eat_op("(")
                arg = self.term()
                self.eat_op(")")
                return E.TUnOp(_FUN_OPS[low], arg)
            if low == "lim":
                return self._lim()
            if self.match_phrase("term") is not None:
                return self._limit_of_sequence()
            if low in RESERVED:
                self.fail(f"unexpected keyword {t.value!r} in term")
            self.next()
            return E.TVar(t.value)
        if self.at_op("("):
            return self._paren_or_interval("(", {")": "open",
                                                 "]": "open_closed"})
        if self.at_op("["):
            return self._paren_or_interval("[", {")": "closed_open",
                                                 "]": "closed"})
        if self.at_op("{"):
            return self._set()
        self.fail("expected a term")

    def _lim(self) -> E.Term:
        self.next()
        self.eat_op("(")
        v = self.ident("limit variable")
        self.eat_op("->")
        point = self.term()
        self.eat_op(")")
        body = self._mul()
        return E.TBinOp(E.RLIM, point, E.TBinder(E.LAMBDA_B, v, body))

    def _limit_of_sequence(self) -> E.Term:
        # "the limit of the sequence (a_n)" -> lim(n -> +infty) a(n)
        self.eat_op("(")
        seq = self.ident("sequence name")
        self.eat_op("_")
        v = self.ident("index variable")
        self.eat_op(")")
        body = E.TApply(E.TVar(seq), E.TVar(v))
        return E.TBinOp(E.RLIM, E.TInfty(E.POSITIVE),
                        E.TBinder(E.LAMBDA_B, v, body))

    def _paren_or_interval(self, open_op, closers) -> E.Term:
        self.eat_op(open_op)
        if open_op == "(" and self.peek().kind == "word" and \
                self.peek().value.lower() in ("fun", "seq"):
            binder = E.LAMBDA_B if self.next().value.lower() == "fun" \
                else E.SEQLIMIT_B
            v = self.ident("binder variable")
            self.eat_op("->")
            body = self.term()
            self.eat_op(")")
            return E.TBinder(binder, v, body)
        lo = self.term()
        if self.at_op(","):
            self.next()
            hi = self.term()
            for closer, kind in closers.items():
                if self.at_op(closer):
                    self.next()
                    return E.TInterval(kind, lo, hi)
            self.fail("expected ')' or ']' closing an interval")
        if open_op == "[":
            self.fail("expected ',' in interval")
        self.eat_op(")")
        return lo

    def _set(self) -> E.Term:
        self.eat_op("{")
        element = self.term()
        vars_: tuple[str, ...] = ()
        cond: E.Prop = E.TRUE
        if self.at_op(":"):
            self.next()
            names = [self.ident("set variable")]
            while self.peek().kind == "word" and \
                    self.peek().value.lower() not in RESERVED:
                names.append(self.ident())
            vars_ = tuple(names)
            if self.at_op("|"):
                self.next()
                cond = self.prop()
        self.eat_op("}")
        return E.TSet(vars_, element, cond)

    # -- propositions -------------------------------------------------------

    def prop(self) -> E.Prop:
        construct = self.match_phrase("prop")
        if construct == "prop.forall":
            return self._forall_body()
        if construct == "prop.exists":
            v = self.ident("bound variable")
            if self.match_phrase("kw") != "kw.suchthat":
                self.fail("expected 'such that' after the bound variable")
            return E.PQuant(E.EXISTS, v, self.prop())
        if construct == "prop.if":
            left = self.prop()
            if self.match_phrase("prop") != "prop.then":
                self.fail("expected 'then'")
            return E.PBinOp(E.CIMPLY, left, self.prop())
        if construct is not None:
            # 'then'/'and'/... are not valid prop openers
            self.fail("unexpected keyword at start of proposition")
        return self._or()

    def _forall_body(self) -> E.Prop:
        v = self.ident("bound variable")
        guard = None
        t = self.peek()
        if t.kind == "op" and t.value in REL_OPS:
            self.next()
            guard = E.PBinPred(REL_OPS[t.value], E.TVar(v), self.term())
        elif self.match_phrase("kw") == "kw.suchthat":
            guard = self.prop()
        if self.at_op(","):
            self.next()
        body = self.prop()
        if guard is not None:
            body = E.PBinOp(E.CIMPLY, guard, body)
        return E.PQuant(E.FORALL, v, body)

    def _or(self) -> E.Prop:
        left = self._and()
        save = self.pos
        c = self.match_phrase("prop")
        if c == "prop.or":
            return E.PBinOp(E.COR, left, self._or())
        if c is not None:
            self.pos = save
        return left

    def _and(self) -> E.Prop:
        left = self._not()
        save = self.pos
        c = self.match_phrase("prop")
        if c == "prop.and":
            return E.PBinOp(E.CAND, left, self._and())
        if c is not None:
            self.pos = save
        return left

    def _not(self) -> E.Prop:
        save = self.pos
        if self.match_phrase("prop") == "prop.not":
            return E.PUnOp(E.CNOT, self._not())
        self.pos = save
        return self._atom_prop()

    def _atom_prop(self) -> E.Prop:
        t = self.peek()
        if t.kind == "word" and t.value.lower() in ("true", "false"):
            self.next()
            return E.TRUE if t.value.lower() == "true" else E.FALSE
        if self.at_op("("):
            save = self.pos
            try:
                self.next()
                inner = self.prop()
                self.eat_op(")")
                return inner
            except _StmtError:
                self.pos = save
        left = self.term()
        rel_t = self.peek()
        if rel_t.kind == "op" and rel_t.value in REL_OPS:
            return self._chain(left)
        construct = self.match_phrase("pred")
        if construct is not None:
            return E.PUnPred(construct.split(".", 1)[1], left)
        construct = self.match_phrase("predbin")
        if construct is not None:
            return E.PBinPred(construct.split(".", 1)[1], left, self.term())
        if rel_t.kind == "word" and rel_t.value.lower() == "in":
            self.next()
            return E.PBinPred(E.RIN, left, self.term())
        self.fail("expected a relation or predicate after term")

    def _chain(self, first: E.Term) -> E.Prop:
        rels: list[str] = []
        terms: list[E.Term] = [first]
        while True:
            t = self.peek()
            if t.kind == "op" and t.value in REL_OPS:
                self.next()
                rels.append(REL_OPS[t.value])
                terms.append(self.term())
            else:
                break
        if len(rels) == 1:
            return E.PBinPred(rels[0], terms[0], terms[1])
        if all(r == E.REQ for r in rels):
            links = [E.PBinPred(E.REQ, terms[i], terms[i + 1])
                     for i in range(len(rels))]
            return E.conj(*links)
        if not (set(rels) <= _ASC or set(rels) <= _DESC):
            self.fail("relation chain mixes directions")
        return E.PLongOrder(tuple(rels), tuple(terms))

    # -- statements ----------------------------------------------------------

    def proof(self, in_partial: bool = False) -> P.Proof:
        """Parse a statement sequence into a right-folded proof chain."""
        stmts: list[_Parsed] = []
        self.skip_seps()
        while self.peek().kind != "eof" and not self.at_op("}"):
            start = self.pos
            try:
                stmts.append(self.statement())
            except _StmtError as err:
                self.diags.append(err.diag)
                self._recover(start)
            self._end_statement()
            self.skip_seps()
        return self._assemble(stmts, in_partial)

    def _recover(self, start: int):
        if self.pos == start:
            self.next()
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                return
            if t.kind == "op" and t.value == "{":
                depth += 1
            elif t.kind == "op" and t.value == "}":
                if depth == 0:
                    return
                depth -= 1
            elif depth == 0 and (t.kind == "sep" or
                                 (t.kind == "op" and t.value == ",")):
                return
            self.next()

    def _end_statement(self):
        if self.at_op("."):
            self.next()
        t = self.peek()
        if t.kind in ("sep", "eof") or t.value in (",", "}"):
            if t.kind == "sep" or t.value == ",":
                self.next()
            return
        diag = ParseDiagnostic(t.span, "expected end of statement",
                               (",", "newline",))
        self.diags.append(diag)
        self._recover(self.pos)

    def _assemble(self, stmts: list[_Parsed], in_partial: bool) -> P.Proof:
        if not stmts:
            if in_partial:
                return P.EndPartialProof(span=self.peek().span,
                                         label=self.auto_label())
            self.diags.append(ParseDiagnostic(
                self.peek().span, "proof has no statements"))
            return P.EndPartialProof(span=self.peek().span,
                                     label=self.auto_label())
        for s in stmts[:-1]:
            if s.terminal:
                self.diags.append(ParseDiagnostic(
                    s.span, "unreachable statements after a concluding step"))
        last = stmts[-1]
        if last.terminal:
            chain = last.build
        elif in_partial:
            chain = last.build(P.EndPartialProof(span=last.span,
                                                 label=self.auto_label()))
        else:
            self.diags.append(ParseDiagnostic(
                last.span, "proof does not end with a concluding step"))
            chain = last.build(P.EndPartialProof(span=last.span,
                                                 label=self.auto_label()))
        for s in reversed(stmts[:-1]):
            if s.terminal:
                continue
            chain = s.build(chain)
        return chain

    def statement(self) -> _Parsed:
        self.skip_seps()
        start_tok = self.peek()
        label = self._label() or self.auto_label()
        construct = self.match_phrase("stmt")
        if construct is None:
            self.fail("expected a proof statement keyword")
        handler = getattr(self, "_stmt_" + construct.split(".", 1)[1])
        build, terminal = handler()
        end_tok = self.toks[max(self.pos - 1, 0)]
        span = Span(start_tok.span.start_line, start_tok.span.start_col,
                    end_tok.span.end_line, end_tok.span.end_col)

        if terminal:
            node = build(span, label)
            return _Parsed(node, True, span, label)

        def wrap(rest, _build=build, _span=span, _label=label):
            return _build(rest, _span, _label)
        return _Parsed(wrap, False, span, label)

    def _label(self) -> Optional[str]:
        if self.at_op("(") and self.peek(1).kind in ("num", "word") and \
                self.peek(2).kind == "op" and self.peek(2).value == ")":
            self.next()
            value = self.next().value
            self.next()
            return value
        return None

    def _opt_comma(self):
        if self.at_op(","):
            self.next()

    def _brace_proof(self, in_partial: bool = False) -> P.Proof:
        self.eat_op("{")
        body = self.proof(in_partial=in_partial)
        self.eat_op("}")
        return body

    # individual statement forms -------------------------------------------

    def _stmt_let(self):
        v = self.ident("variable")
        return (lambda rest, span, label:
                P.ProofAction(P.AIntros(v), rest, span, label)), False

    def _stmt_fix(self):
        v = self.ident("variable")
        return (lambda rest, span, label:
                P.ProofAction(P.AExistVar(v), rest, span, label)), False

    def _stmt_set(self):
        v = self.ident("variable")
        self.eat_op("=")
        t = self.term()
        return (lambda rest, span, label:
                P.ProofAction(P.ASet(v, t), rest, span, label)), False

    def _stmt_note(self):
        v = self.ident("variable")
        if self.match_phrase("kw") != "kw.as":
            self.fail("expected 'as'")
        t = self.term()
        return (lambda rest, span, label:
                P.ProofAction(P.ASet(v, t), rest, span, label)), False

    def _stmt_introduce(self):
        p = self.prop()
        return (lambda rest, span, label:
                P.ProofAction(P.ASetProp(p), rest, span, label)), False

    def _stmt_exists(self):
        save = self.pos
        t = self.peek()
        if t.kind == "word" and t.value.lower() not in RESERVED:
            self.next()
            if self.match_phrase("kw") == "kw.suchthat":
                body = self.prop()
                prop = E.PQuant(E.EXISTS, t.value, body)
                return (lambda rest, span, label:
                        P.PoseWithoutProof(P.FNoHint(), prop, rest, span,
                                           label)), False
            self.pos = save
        witness = self.term()
        return (lambda rest, span, label:
                P.ProofAction(P.AExists(witness), rest, span, label)), False

    def _stmt_suppose(self):
        p = self.prop()
        if self.at_op("{"):
            partial = self._brace_proof(in_partial=True)
            return (lambda rest, span, label:
                    P.PosePartialProof(P.APoseProp(p), partial, rest, span,
                                       label)), False
        return (lambda rest, span, label:
                P.ProofAction(P.ASuppose(p), rest, span, label)), False

    def _stmt_forevery(self):
        v = self.ident("variable")
        assumptions: tuple[E.Prop, ...] = ()
        t = self.peek()
        if t.kind == "op" and t.value in REL_OPS:
            self.next()
            assumptions = (E.PBinPred(REL_OPS[t.value], E.TVar(v),
                                      self.term()),)
        elif self.match_phrase("kw") == "kw.suchthat":
            assumptions = tuple(E.conjuncts(self.prop()))
        partial = self._brace_proof(in_partial=True)
        return (lambda rest, span, label:
                P.PosePartialProof(P.APoseVar(v, assumptions), partial, rest,
                                   span, label)), False

    def _stmt_obviously(self):
        self._opt_comma()
        p = self.prop()
        return (lambda rest, span, label:
                P.PoseWithoutProof(P.FNoHint(), p, rest, span, label)), False

    def _stmt_because(self):
        self.prop()  # justification; carried only by the surface text
        if not self.at_op(","):
            if self.match_phrase("prop") != "prop.then":
                self.fail("expected ',' or 'then'")
        else:
            self.next()
        p = self.prop()
        return (lambda rest, span, label:
                P.PoseWithoutProof(P.FNoHint(), p, rest, span, label)), False

    def _method_clause(self) -> P.FwdMethod:
        construct = self.match_phrase("kw")
        if construct == "kw.theorem":
            return P.FTheorem(self._knowledge_name())
        if construct == "kw.definition":
            return P.FDefinition(self._knowledge_name())
        if construct == "kw.adding":
            labels = []
            while self.at_op("("):
                self.next()
                t = self.peek()
                if t.kind not in ("num", "word"):
                    self.fail("expected a step label")
                self.next()
                labels.append(t.value)
                self.eat_op(")")
            if not labels:
                self.fail("expected at least one step label after 'adding'")
            return P.FAddEqn(tuple(labels))
        if construct == "kw.derivative":
            v = self.ident("variable")
            self.match_phrase("kw")  # optional 'on the both sides ...'
            return P.FDeriBothTerms(v)
        self.fail("expected a method (theorem, definition, adding, ...)")

    def _knowledge_name(self) -> str:
        t = self.peek()
        if t.kind != "word":
            self.fail("expected a knowledge name")
        alias = self.match_phrase("name")
        if alias is not None:
            return alias.split(".", 1)[1]
        self.next()
        return t.value

    def _stmt_by(self):
        method = self._method_clause()
        if not self.at_op(","):
            if self.match_phrase("prop") != "prop.then":
                self.fail("expected ',' or 'then' after the method")
        else:
            self.next()
        save = self.pos
        if self.match_phrase("stmt") == "stmt.concl":
            return (lambda span, label:
                    P.ConclWithoutProof(method, span, label)), True
        self.pos = save
        p = self.prop()
        return (lambda rest, span, label:
                P.PoseWithoutProof(method, p, rest, span, label)), False

    def _stmt_use(self):
        method = self._method_clause()
        c = self.match_phrase("kw")
        if c not in ("kw.toprove", "kw.toshow"):
            self.fail("expected 'to prove'")
        if self.at_op(":"):
            self.next()
        if self.match_phrase("kw") == "kw.theproposition":
            if self.at_op("."):
                self.next()
            if self.at_op("{"):
                sub = self._brace_proof()
                return (lambda span, label:
                        P.ConclAndProve(method, sub, span, label)), True
            return (lambda span, label:
                    P.ConclWithoutProof(method, span, label)), True
        p = self.prop()
        if self.at_op("{"):
            sub = self._brace_proof()
            return (lambda rest, span, label:
                    P.PoseAndProve(method, p, sub, rest, span, label)), False
        return (lambda rest, span, label:
                P.PoseWithoutProof(method, p, rest, span, label)), False

    def _stmt_following(self):
        if self.match_phrase("kw") == "kw.theproposition":
            sub = self._brace_proof()
            return (lambda span, label:
                    P.ConclAndProve(P.FNoHint(), sub, span, label)), True
        p = self.prop()
        sub = self._brace_proof()
        return (lambda rest, span, label:
                P.PoseAndProve(P.FNoHint(), p, sub, rest, span, label)), False

    def _stmt_suffices(self):
        p = self.prop()
        if self.at_op("{"):
            sub = self._brace_proof()
            return (lambda rest, span, label:
                    P.ProveSuffice(P.BNoHint(), p, sub, rest, span,
                                   label)), False
        return (lambda rest, span, label:
                P.ClaimSuffice(P.BNoHint(), p, rest, span, label)), False

    def _stmt_contradiction(self):
        p = self.prop()
        if self.at_op("{"):
            sub = self._brace_proof()
            return (lambda rest, span, label:
                    P.ProveSuffice(P.BContra(), p, sub, rest, span,
                                   label)), False
        return (lambda rest, span, label:
                P.ClaimSuffice(P.BContra(), p, rest, span, label)), False

    def _stmt_concl(self):
        return (lambda span, label:
                P.ConclWithoutProof(P.FNoHint(), span, label)), True


def _check_labels(pr: P.Proof, diags: list[ParseDiagnostic]):
    seen = set()
    for label in P.iter_labels(pr):
        if label in seen:
            diags.append(ParseDiagnostic(
                Span(), f"duplicate step label {label!r}"))
        seen.add(label)


def parse_proof(doc: SourceDocument,
                table: Optional[KeywordTable] = None) -> P.Proof:
    """Parse proof text (no theorem header) into a Proof chain."""
    toks = tokenize(doc)
    parser = Parser(toks, table, doc.path)
    pr = parser.proof()
    if parser.peek().kind != "eof":
        parser.diags.append(ParseDiagnostic(parser.peek().span,
                                            "unexpected trailing input"))
    _check_labels(pr, parser.diags)
    if parser.diags:
        raise ProofSyntaxError(parser.diags, doc.path)
    return pr


def parse_prop(text: str, table: Optional[KeywordTable] = None) -> E.Prop:
    """Parse a single proposition."""
    toks = [t for t in tokenize(SourceDocument(text)) if t.kind != "sep"]
    parser = Parser(toks, table)
    try:
        p = parser.prop()
    except _StmtError as err:
        raise ProofSyntaxError([err.diag]) from None
    if parser.peek().kind != "eof":
        raise ProofSyntaxError([ParseDiagnostic(
            parser.peek().span, "unexpected trailing input")])
    return p


def parse_term(text: str, table: Optional[KeywordTable] = None) -> E.Term:
    toks = [t for t in tokenize(SourceDocument(text)) if t.kind != "sep"]
    parser = Parser(toks, table)
    try:
        t = parser.term()
    except _StmtError as err:
        raise ProofSyntaxError([err.diag]) from None
    if parser.peek().kind != "eof":
        raise ProofSyntaxError([ParseDiagnostic(
            parser.peek().span, "unexpected trailing input")])
    return t


def parse_document(doc: SourceDocument, table: Optional[KeywordTable] = None
                   ) -> tuple[E.Prop, P.Proof]:
    """Parse a ``Theorem: ... Proof: ...`` file into (statement, proof)."""
    toks = tokenize(doc)
    parser = Parser(toks, table, doc.path)
    parser.skip_seps()
    t = parser.peek()
    if not (t.kind == "word" and t.value == "Theorem"):
        raise ProofSyntaxError([ParseDiagnostic(
            t.span, "expected 'Theorem:' header")], doc.path)
    parser.next()
    try:
        parser.eat_op(":")
    except _StmtError as err:
        raise ProofSyntaxError([err.diag], doc.path) from None

    # collect the statement tokens up to the 'Proof:' marker
    stmt_toks = []
    while True:
        t = parser.peek()
        if t.kind == "eof":
            raise ProofSyntaxError([ParseDiagnostic(
                t.span, "expected 'Proof:' after the theorem statement")],
                doc.path)
        if t.kind == "word" and t.value == "Proof" and \
                parser.peek(1).value == ":":
            parser.next()
            parser.next()
            break
        if t.kind != "sep":
            stmt_toks.append(t)
        parser.next()

    from .lexer import Token as _Tok
    stmt_parser = Parser(stmt_toks + [_Tok("eof", "", t.span)], table,
                         doc.path)
    try:
        statement = stmt_parser.prop()
    except _StmtError as err:
        raise ProofSyntaxError([err.diag], doc.path) from None
    if stmt_parser.peek().kind != "eof":
        raise ProofSyntaxError([ParseDiagnostic(
            stmt_parser.peek().span,
            "unexpected trailing input in theorem statement")], doc.path)

    pr = parser.proof()
    if parser.peek().kind != "eof":
        parser.diags.append(ParseDiagnostic(parser.peek().span,
                                            "unexpected trailing input"))
    _check_labels(pr, parser.diags)
    if parser.diags:
        raise ProofSyntaxError(parser.diags, doc.path)
    return statement, pr
