"""Three-valued outcomes of fuel-bounded semi-decision procedures."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .rewrite import Step
from .terms import Term


class Outcome(enum.Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    """Result of a bounded check.

    `witness` and `traces` carry the evidence: for a refutation the offending
    term and a trace reaching it, for a conversion the common reduct and one
    trace per side.  `explored` counts the contractions spent.
    """

    outcome: Outcome
    witness: Term | None = None
    traces: tuple[tuple[Step, ...], ...] = ()
    explored: int = 0
    note: str = ""
    parts: tuple["Verdict", ...] = field(default=(), repr=False)

    @property
    def proved(self) -> bool:
        return self.outcome is Outcome.PROVED

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def __str__(self) -> str:
        return self.outcome.value


def proved(**kw) -> Verdict:
    return Verdict(Outcome.PROVED, **kw)


def refuted(**kw) -> Verdict:
    return Verdict(Outcome.REFUTED, **kw)


def unknown(**kw) -> Verdict:
    return Verdict(Outcome.UNKNOWN, **kw)


def combine(verdicts: list[Verdict], note: str = "") -> Verdict:
    """Conjunction: any Refuted wins, then any Unknown, else Proved."""
    explored = sum(v.explored for v in verdicts)
    for v in verdicts:
        if v.refuted:
            return refuted(witness=v.witness, traces=v.traces, explored=explored,
                           note=v.note or note, parts=tuple(verdicts))
    if any(v.unknown for v in verdicts):
        return unknown(explored=explored, note=note, parts=tuple(verdicts))
    return proved(explored=explored, note=note, parts=tuple(verdicts))


EXIT_CODES = {Outcome.PROVED: 0, Outcome.REFUTED: 1, Outcome.UNKNOWN: 2}
