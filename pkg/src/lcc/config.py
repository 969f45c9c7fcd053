"""Budgets shared by the command line, the harnesses and the scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass

BUILTIN_FUEL = 1000
FUEL_ENV = "LCC_DEFAULT_FUEL"


def default_fuel() -> int:
    """The built-in fuel, unless overridden by the environment."""
    raw = os.environ.get(FUEL_ENV)
    if raw is None or not raw.strip():
        return BUILTIN_FUEL
    value = int(raw)
    if value < 0:
        raise ValueError(f"{FUEL_ENV} must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class SearchConfig:
    """How a conversion search spends its fuel.

    The two probe shares go to deterministic single-path reductions
    (leftmost-outermost, then leftmost-innermost) before breadth-first
    exploration takes the rest.  A probe that reaches a normal form or
    cycles returns its unused share to the later phases.  Reducts larger
    than `max_term_size` nodes are dropped (the contraction still costs
    fuel); a side that dropped one can no longer be refuted by exhaustion.
    """

    fuel: int = BUILTIN_FUEL
    outermost_share: float = 0.85
    innermost_share: float = 0.05
    max_term_size: int = 1_000_000

    def __post_init__(self) -> None:
        if self.fuel < 0:
            raise ValueError("fuel must be non-negative")
        if not 0 <= self.outermost_share + self.innermost_share <= 1:
            raise ValueError("probe shares must sum to at most 1")
        if self.max_term_size < 1:
            raise ValueError("max_term_size must be positive")
