"""naproof: checker for a natural-language-like formal proof language.

Pipeline: parse surface text into a proof AST, statically resolve
context-dependent phrasing and overloaded notation, then check the proof
step by step against goal-transformation rules backed by a fee-bounded
solver manager and a declarative theorem library.
"""

from .expr import (Prop, Term, alpha_equal, desugar, free_vars,  # noqa: F401
                   substitute)
from .lexer import (ParseDiagnostic, ProofSyntaxError,  # noqa: F401
                    SourceDocument, tokenize)
from .parser import (KeywordTable, parse_document, parse_proof,  # noqa: F401
                     parse_prop, parse_term)
from .printer import pretty_print, print_document  # noqa: F401
from .proof import Proof, ProofGoal, Span  # noqa: F401

__version__ = "0.1.0"
