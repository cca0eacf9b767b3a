"""Proof syntax tree and proof-goal state."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .expr import Prop, Term, TRUE, conjuncts, free_vars


@dataclass(frozen=True)
class Span:
    start_line: int = 0
    start_col: int = 0
    end_line: int = 0
    end_col: int = 0

    def as_tuple(self):
        return (self.start_line, self.start_col, self.end_line, self.end_col)


NO_SPAN = Span()

# ---------------------------------------------------------------------------
# Forward/backward methods

@dataclass(frozen=True)
class FNoHint:
    pass


@dataclass(frozen=True)
class FDefinition:
    name: str


@dataclass(frozen=True)
class FTheorem:
    name: str


@dataclass(frozen=True)
class FAddEqn:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class FDeriBothTerms:
    var: str


FwdMethod = Union[FNoHint, FDefinition, FTheorem, FAddEqn, FDeriBothTerms]


@dataclass(frozen=True)
class BNoHint:
    pass


@dataclass(frozen=True)
class BContra:
    pass


BwdMethod = Union[BNoHint, BContra]

# ---------------------------------------------------------------------------
# Actions

@dataclass(frozen=True)
class AIntros:
    var: str


@dataclass(frozen=True)
class AExists:
    witness: Term


@dataclass(frozen=True)
class ASuppose:
    prop: Prop


@dataclass(frozen=True)
class ASet:
    var: str
    value: Term


@dataclass(frozen=True)
class ASetProp:
    prop: Prop


@dataclass(frozen=True)
class AExistVar:
    var: str


Action = Union[AIntros, AExists, ASuppose, ASet, ASetProp, AExistVar]


@dataclass(frozen=True)
class APoseVar:
    var: str
    assumptions: tuple[Prop, ...]


@dataclass(frozen=True)
class APoseProp:
    prop: Prop


PoseAction = Union[APoseVar, APoseProp]

# ---------------------------------------------------------------------------
# Proof nodes.  Every node carries a source span and a step label; labels are
# unique within one proof.

@dataclass(frozen=True)
class ProofAction:
    action: Action
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class PoseWithoutProof:
    method: FwdMethod
    prop: Prop
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class PoseAndProve:
    method: FwdMethod
    prop: Prop
    subproof: "Proof"
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class ClaimSuffice:
    method: BwdMethod
    prop: Prop
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class ProveSuffice:
    method: BwdMethod
    prop: Prop
    subproof: "Proof"
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class ConclWithoutProof:
    method: FwdMethod
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class ConclAndProve:
    method: FwdMethod
    subproof: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class PosePartialProof:
    pose: PoseAction
    partial: "Proof"
    rest: "Proof"
    span: Span = NO_SPAN
    label: str = ""


@dataclass(frozen=True)
class EndPartialProof:
    span: Span = NO_SPAN
    label: str = ""


Proof = Union[ProofAction, PoseWithoutProof, PoseAndProve, ClaimSuffice,
              ProveSuffice, ConclWithoutProof, ConclAndProve,
              PosePartialProof, EndPartialProof]


def proof_free_vars(pr: Proof) -> set[str]:
    """Identifiers used in `pr` before being (re)introduced by one of its steps."""
    match pr:
        case ProofAction(action, rest):
            r = proof_free_vars(rest)
            match action:
                case AIntros(v) | AExistVar(v):
                    return r - {v}
                case ASet(v, t):
                    return free_vars(t) | (r - {v})
                case AExists(t):
                    return free_vars(t) | r
                case ASuppose(p) | ASetProp(p):
                    return free_vars(p) | r
        case PoseWithoutProof(_, p, rest) | ClaimSuffice(_, p, rest):
            return free_vars(p) | proof_free_vars(rest)
        case PoseAndProve(_, p, sub, rest) | ProveSuffice(_, p, sub, rest):
            return free_vars(p) | proof_free_vars(sub) | proof_free_vars(rest)
        case ConclWithoutProof():
            return set()
        case ConclAndProve(_, sub):
            return proof_free_vars(sub)
        case PosePartialProof(pose, partial, rest):
            inner = proof_free_vars(partial)
            match pose:
                case APoseVar(s, assumptions):
                    inner = (free_vars(list(assumptions)) | inner) - {s}
                case APoseProp(p):
                    inner = free_vars(p) | inner
            return inner | proof_free_vars(rest)
        case EndPartialProof():
            return set()
    raise TypeError(f"proof_free_vars: unsupported node {pr!r}")


def iter_labels(pr: Proof):
    """Yield every step label in source order."""
    yield pr.label
    match pr:
        case ProofAction(_, rest) | PoseWithoutProof(_, _, rest) | \
             ClaimSuffice(_, _, rest):
            yield from iter_labels(rest)
        case PoseAndProve(_, _, sub, rest) | ProveSuffice(_, _, sub, rest):
            yield from iter_labels(sub)
            yield from iter_labels(rest)
        case ConclAndProve(_, sub):
            yield from iter_labels(sub)
        case PosePartialProof(_, partial, rest):
            yield from iter_labels(partial)
            yield from iter_labels(rest)
        case _:
            pass


# ---------------------------------------------------------------------------
# Proof goal

@dataclass(frozen=True)
class Hole:
    """Absent conclusion inside a partial proof."""


HOLE = Hole()


@dataclass(frozen=True)
class Premise:
    label: str
    prop: Prop


@dataclass(frozen=True)
class ProofGoal:
    premises: tuple[Premise, ...]
    conclusion: Union[Prop, Hole]

    def props(self) -> list[Prop]:
        return [p.prop for p in self.premises]

    def has_conclusion(self) -> bool:
        return not isinstance(self.conclusion, Hole)

    def free_vars(self) -> set[str]:
        out = free_vars(self.props())
        if self.has_conclusion():
            out |= free_vars(self.conclusion)
        return out

    def with_conclusion(self, c) -> "ProofGoal":
        return ProofGoal(self.premises, c)

    def add(self, label: str, prop: Prop, split: bool = False) -> "ProofGoal":
        """Append premises; `split` flattens a top-level conjunction."""
        parts = conjuncts(prop) if split else [prop]
        existing = {p.label for p in self.premises}
        new = []
        for i, part in enumerate(parts):
            sub = label if len(parts) == 1 else f"{label}.{i + 1}"
            while sub in existing:
                sub += "'"
            existing.add(sub)
            new.append(Premise(sub, part))
        return ProofGoal(self.premises + tuple(new), self.conclusion)

    def find(self, label: str) -> Optional[Premise]:
        for p in self.premises:
            if p.label == label:
                return p
        return None


def goal(premises=(), conclusion=TRUE) -> ProofGoal:
    prems = tuple(Premise(f"h{i + 1}", p) if not isinstance(p, Premise) else p
                  for i, p in enumerate(premises))
    return ProofGoal(prems, conclusion)
