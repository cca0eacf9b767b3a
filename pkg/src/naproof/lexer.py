"""Tokenizer for the surface proof language.

Positions are 1-based line/column over Unicode scalar values.  Unicode and
ASCII spellings of the same symbol produce identical tokens (``ε`` lexes as
the word ``eps``, ``≤`` as the operator ``<=``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .proof import Span


@dataclass(frozen=True)
class SourceDocument:
    text: str
    path: Optional[str] = None


@dataclass(frozen=True)
class ParseDiagnostic:
    span: Span
    message: str
    expected: tuple[str, ...] = ()

    def render(self, path: Optional[str] = None) -> str:
        where = f"{path or '<input>'}:{self.span.start_line}:{self.span.start_col}"
        msg = f"{where}: {self.message}"
        if self.expected:
            msg += " (expected " + ", ".join(self.expected) + ")"
        return msg


class ProofSyntaxError(Exception):
    def __init__(self, diagnostics: list[ParseDiagnostic], path=None):
        self.diagnostics = list(diagnostics)
        self.path = path
        super().__init__("\n".join(d.render(path) for d in self.diagnostics))


@dataclass(frozen=True)
class Token:
    kind: str   # word | num | op | sep | eof
    value: str
    span: Span

    def __repr__(self):
        return f"{self.kind}({self.value!r})"


# Greek letters and math symbols accepted as aliases of their ASCII spelling.
_UNICODE_WORDS = {
    "ε": "eps", "δ": "delta", "α": "alpha", "β": "beta", "γ": "gamma",
    "λ": "lambda", "θ": "theta", "μ": "mu", "π": "pi", "φ": "phi",
    "∞": "infty",
}
_UNICODE_OPS = {
    "≤": "<=", "≥": ">=", "≠": "!=", "×": "*", "÷": "/", "−": "-",
    "→": "->", "∈": "in",
}

_TWO_CHAR_OPS = ("<=", ">=", "!=", "->")
_ONE_CHAR_OPS = "+-*/^=<>_(){}[],.:|"


def _is_word_char(c: str) -> bool:
    return c.isalpha() or c.isdigit() or c == "'"


def tokenize(doc: SourceDocument) -> list[Token]:
    """Lex a document into tokens; raises ProofSyntaxError on illegal input."""
    text = doc.text
    toks: list[Token] = []
    diags: list[ParseDiagnostic] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span_at(l, c, l2=None, c2=None):
        return Span(l, c, l2 if l2 is not None else l,
                    c2 if c2 is not None else c)

    while i < n:
        c = text[i]
        if c == "\n":
            if toks and toks[-1].kind not in ("sep",):
                toks.append(Token("sep", "\n", span_at(line, col)))
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        if c in _UNICODE_OPS:
            op = _UNICODE_OPS[c]
            kind = "word" if op == "in" else "op"
            toks.append(Token(kind, op, span_at(line, col)))
            i += 1
            col += 1
            continue
        if c in _UNICODE_WORDS:
            toks.append(Token("word", _UNICODE_WORDS[c], span_at(line, col)))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j, c2 = i, col
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            value = text[i:j]
            toks.append(Token("num", value, span_at(line, col, line,
                                                    col + (j - i) - 1)))
            col += j - i
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and _is_word_char(text[j]):
                j += 1
            value = text[i:j]
            toks.append(Token("word", value, span_at(line, col, line,
                                                     col + (j - i) - 1)))
            col += j - i
            i = j
            continue
        two = text[i:i + 2]
        if two in _TWO_CHAR_OPS:
            toks.append(Token("op", two, span_at(line, col, line, col + 1)))
            i += 2
            col += 2
            continue
        if c in _ONE_CHAR_OPS:
            toks.append(Token("op", c, span_at(line, col)))
            i += 1
            col += 1
            continue
        diags.append(ParseDiagnostic(span_at(line, col),
                                     f"illegal character {c!r}"))
        i += 1
        col += 1

    if diags:
        raise ProofSyntaxError(diags, doc.path)
    end = Span(line, col, line, col)
    toks.append(Token("eof", "", end))
    return toks
