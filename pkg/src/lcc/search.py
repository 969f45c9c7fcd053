"""Breadth-first exploration of reduct sets, memoised up to alpha."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .rewrite import ALL, Rule, Step, one_step_reducts
from .terms import Term, alpha_key


@dataclass
class Explorer:
    """Reduct graph of one start term, grown a generation at a time.

    Every visited term is recorded under its alpha key together with the
    step that first reached it, so a trace back to the start can be rebuilt.
    `spent` counts contractions performed.
    """

    start: Term
    rules: frozenset[Rule] = ALL
    seen: dict[str, Term] = field(default_factory=dict)
    parent: dict[str, tuple[str, Step] | None] = field(default_factory=dict)
    frontier: deque = field(default_factory=deque)
    normal_forms: list[Term] = field(default_factory=list)
    spent: int = 0
    depth: int = 0

    def __post_init__(self) -> None:
        k = alpha_key(self.start)
        self.seen[k] = self.start
        self.parent[k] = None
        self.frontier.append(k)

    @property
    def exhausted(self) -> bool:
        """True once every reduct has been visited (the closure is finite)."""
        return not self.frontier

    def add(self, term: Term, via: tuple[str, Step] | None) -> str | None:
        """Record `term`; returns its key when it is new."""
        k = alpha_key(term)
        if k in self.seen:
            return None
        self.seen[k] = term
        self.parent[k] = via
        return k

    def expand_one(self, budget: int) -> tuple[int, list[str], bool]:
        """Expand the oldest frontier node.

        Returns (contractions used, new keys, complete); `complete` is False
        when the budget ran out before all reducts of the node were taken,
        in which case the node stays on the frontier.
        """
        k = self.frontier[0]
        term = self.seen[k]
        used = 0
        new: list[str] = []
        reducts = one_step_reducts(term, self.rules)
        for rule, pos, after in reducts:
            if used >= budget:
                return used, new, False
            used += 1
            nk = self.add(after, (k, Step(rule, pos, term, after)))
            if nk is not None:
                new.append(nk)
                self.frontier.append(nk)
        self.frontier.popleft()
        if used == 0:
            self.normal_forms.append(term)
        return used, new, True

    def generation(self, budget: int) -> tuple[int, list[str], bool]:
        """Expand every node currently on the frontier (one BFS level)."""
        level = len(self.frontier)
        used_total = 0
        new_total: list[str] = []
        for _ in range(level):
            used, new, complete = self.expand_one(budget - used_total)
            used_total += used
            new_total.extend(new)
            if not complete:
                self.spent += used_total
                return used_total, new_total, False
        self.spent += used_total
        self.depth += 1
        return used_total, new_total, True

    def trace_to(self, key: str) -> list[Step]:
        steps: list[Step] = []
        cur = self.parent.get(key)
        while cur is not None:
            pk, step = cur
            steps.append(step)
            cur = self.parent[pk]
        steps.reverse()
        return steps


def find_reduct(
    start: Term,
    goal: Callable[[Term], bool],
    rules: frozenset[Rule] = ALL,
    fuel: int = 200,
) -> tuple[Term | None, list[Step], int, bool]:
    """Breadth-first search for a reduct of `start` (zero or more steps) satisfying `goal`.

    Returns (found term or None, trace, contractions spent, closure exhausted).
    """
    ex = Explorer(start, rules)
    if goal(start):
        return start, [], 0, False
    while ex.frontier and ex.spent < fuel:
        used, new, _ = ex.generation(fuel - ex.spent)
        for k in new:
            t = ex.seen[k]
            if goal(t):
                return t, ex.trace_to(k), ex.spent, False
    return None, [], ex.spent, ex.exhausted
