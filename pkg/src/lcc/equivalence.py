"""Bounded convertibility and the soundness and completeness harnesses."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .completion import complete, is_hereditarily_defined
from .config import SearchConfig, default_fuel
from .rewrite import (
    ALL,
    Rule,
    Step,
    leftmost_innermost,
    leftmost_outermost,
    normalize_cc,
    one_step_reducts,
)
from .search import find_reduct
from .terms import Signature, Term, alpha_key
from .verdict import Verdict, combine, proved, refuted, unknown


@dataclass(frozen=True)
class EquivQuery:
    left: Term
    right: Term
    fuel: int = 1000
    rules: frozenset[Rule] = ALL


@dataclass
class _Side:
    """The explored part of one side's reduct graph."""

    start: Term
    rules: frozenset[Rule]
    seen: dict[str, Term] = field(default_factory=dict)
    parent: dict[str, tuple[str, Step] | None] = field(default_factory=dict)
    expanded: set[str] = field(default_factory=set)
    frontier: deque = field(default_factory=deque)
    normal: dict[str, Term] = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self) -> None:
        k = alpha_key(self.start)
        self.seen[k] = self.start
        self.parent[k] = None

    def add(self, term: Term, via: tuple[str, Step] | None) -> tuple[str, bool]:
        k = alpha_key(term)
        if k in self.seen:
            return k, False
        self.seen[k] = term
        self.parent[k] = via
        return k, True

    def trace(self, key: str) -> tuple[Step, ...]:
        steps = []
        cur = self.parent[key]
        while cur is not None:
            pk, step = cur
            steps.append(step)
            cur = self.parent[pk]
        return tuple(reversed(steps))

    @property
    def has_work(self) -> bool:
        while self.frontier and self.frontier[0] in self.expanded:
            self.frontier.popleft()
        return bool(self.frontier)

    @property
    def exhausted(self) -> bool:
        return not self.truncated and not self.frontier and len(self.expanded) == len(self.seen)


class _Search:
    def __init__(self, left: Term, right: Term, rules: frozenset[Rule], fuel: int,
                 max_size: int = SearchConfig.max_term_size):
        self.sides = (_Side(left, rules), _Side(right, rules))
        self.rules = rules
        self.fuel = fuel
        self.max_size = max_size
        self.spent = 0
        self.result: Verdict | None = None

    # bookkeeping shared by the probes and the breadth-first phase

    def _record(self, i: int, term: Term, via: tuple[str, Step] | None) -> str:
        k, new = self.sides[i].add(term, via)
        if new and k in self.sides[1 - i].seen:
            self._join(k)
        return k

    def _join(self, k: str) -> None:
        left, right = self.sides
        self.result = proved(
            witness=left.seen[k],
            traces=(left.trace(k), right.trace(k)),
            explored=self.spent,
            note="common reduct",
        )

    def _check_separation(self) -> None:
        """Definite negative answers justified by confluence."""
        if self.result is not None:
            return
        left, right = self.sides
        if left.normal and right.normal:
            kl, kr = next(iter(left.normal)), next(iter(right.normal))
            if kl != kr:
                self._refute(kl, kr, "distinct normal forms")
                return
        if left.exhausted and right.normal:
            kr = next(iter(right.normal))
            if kr not in left.seen:
                self._refute(None, kr, "normal form outside the other side's finite closure")
                return
        if right.exhausted and left.normal:
            kl = next(iter(left.normal))
            if kl not in right.seen:
                self._refute(kl, None, "normal form outside the other side's finite closure")
                return
        if left.exhausted and right.exhausted:
            self._refute(None, None, "disjoint finite reduct closures")

    def _refute(self, kl: str | None, kr: str | None, note: str) -> None:
        left, right = self.sides
        witness = left.seen[kl] if kl is not None else None
        traces = (left.trace(kl) if kl else (), right.trace(kr) if kr else ())
        self.result = refuted(witness=witness, traces=traces, explored=self.spent, note=note)

    # phases

    def probe(self, strategy, budget: int) -> None:
        """Follow `strategy` on both sides in lockstep, one contraction per turn.

        A walk stops at a normal form, when it revisits one of its own terms
        or when a term outgrows the size limit; the phase stops when `budget`
        contractions are spent.
        """
        walks = []
        for side in self.sides:
            k = alpha_key(side.start)
            walks.append([k, side.start, {k}])
        active = [0, 1]
        used = 0
        while active and self.result is None and used < budget and self.spent < self.fuel:
            for i in list(active):
                if used >= budget or self.spent >= self.fuel or self.result is not None:
                    break
                k, term, own = walks[i]
                nxt = strategy(term, self.rules)
                if nxt is None:
                    self.sides[i].normal.setdefault(k, term)
                    self.sides[i].expanded.add(k)
                    active.remove(i)
                    continue
                rule, pos, after = nxt
                used += 1
                self.spent += 1
                if after.size > self.max_size:
                    self.sides[i].truncated = True
                    active.remove(i)
                    continue
                nk = self._record(i, after, (k, Step(rule, pos, term, after)))
                if nk in own:
                    active.remove(i)
                    continue
                own.add(nk)
                walks[i] = [nk, after, own]

    def expand(self, i: int) -> None:
        side = self.sides[i]
        while side.frontier and side.frontier[0] in side.expanded:
            side.frontier.popleft()
        if not side.frontier:
            return
        k = side.frontier[0]
        term = side.seen[k]
        count = 0
        for rule, pos, after in one_step_reducts(term, self.rules):
            if self.spent >= self.fuel:
                return  # the node stays on the frontier
            self.spent += 1
            count += 1
            if after.size > self.max_size:
                side.truncated = True
                continue
            nk, new = side.add(after, (k, Step(rule, pos, term, after)))
            if new:
                side.frontier.append(nk)
                if nk in self.sides[1 - i].seen:
                    self._join(nk)
                    return
        side.frontier.popleft()
        side.expanded.add(k)
        if count == 0:
            side.normal.setdefault(k, term)

    def run(self, config: SearchConfig) -> Verdict:
        left, right = self.sides
        kl, kr = alpha_key(left.start), alpha_key(right.start)
        if kl == kr:
            return proved(witness=left.start, traces=((), ()), note="alpha-equal")
        for strategy, share in ((leftmost_outermost, config.outermost_share),
                                (leftmost_innermost, config.innermost_share)):
            self.probe(strategy, int(self.fuel * share))
            self._check_separation()
            if self.result is not None:
                return self.result
        for side in self.sides:
            side.frontier.extend(side.seen)
        while self.result is None:
            live = [i for i in (0, 1) if self.sides[i].has_work]
            if not live or self.spent >= self.fuel:
                break
            i = min(live, key=lambda j: (len(self.sides[j].frontier), j))
            self.expand(i)
            self._check_separation()
        if self.result is None:
            self._check_separation()
        if self.result is not None:
            return self.result
        return unknown(explored=self.spent,
                       note=f"no common reduct among {len(left.seen)} + {len(right.seen)} terms")


def convertible(
    left: Term | EquivQuery,
    right: Term | None = None,
    fuel: int | None = None,
    rules: frozenset[Rule] = ALL,
    config: SearchConfig | None = None,
) -> Verdict:
    """Semi-decide convertibility of two terms within `fuel` contractions.

    Proved carries the common reduct as witness and one trace per side.
    Refuted requires distinct normal forms, or finite reduct closures that
    are disjoint; both are conclusive because the calculus is confluent.
    """
    if isinstance(left, EquivQuery):
        q = left
        left, right, fuel, rules = q.left, q.right, q.fuel, q.rules
    if right is None:
        raise TypeError("convertible needs two terms")
    if fuel is None:
        fuel = config.fuel if config is not None else default_fuel()
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    config = config or SearchConfig(fuel=fuel)
    return _Search(left, right, rules, fuel, config.max_term_size).run(config)


def joins(verdict: Verdict) -> Term | None:
    """The common reduct of a Proved conversion, if any."""
    return verdict.witness if verdict.proved else None


# -- harnesses ---------------------------------------------------------------------


class NotHereditarilyDefined(ValueError):
    """The completeness harness was given a term not known to be hereditarily defined."""

    def __init__(self, term: Term, verdict: Verdict):
        super().__init__(f"term is not known to be hereditarily defined ({verdict})")
        self.term = term
        self.verdict = verdict


def check_soundness(
    t: Term, ctx: Sequence[str], signature: Signature, fuel: int = 500
) -> Verdict:
    """For every one-step reduct t' of t, interpret(t) and interpret(t') are convertible."""
    from .per_model import interpret

    rep = interpret(ctx, t, signature).rep
    verdicts = []
    for rule, pos, u in one_step_reducts(t, ALL):
        v = convertible(rep, interpret(ctx, u, signature).rep, fuel=fuel)
        if v.refuted:
            return refuted(witness=u, traces=v.traces, explored=v.explored,
                           note=f"{rule.long} at {list(pos)} changes the interpretation")
        verdicts.append(v)
    return combine(verdicts, note=f"{len(verdicts)} one-step reducts")


def check_completeness_pair(
    t1: Term,
    t2: Term,
    signature: Signature,
    fuel: int = 1000,
    hdef_fuel: int | None = None,
    require_hdef: bool = True,
) -> Verdict:
    """Conversion of completions agrees with conversion of the terms themselves.

    Proved when both conversions are Proved or both Refuted, Refuted when
    they disagree definitely, Unknown otherwise.
    """
    if require_hdef:
        budget = fuel if hdef_fuel is None else hdef_fuel
        for t in (t1, t2):
            h = is_hereditarily_defined(t, budget)
            if not h.proved:
                raise NotHereditarilyDefined(t, h)
    completed = convertible(complete(t1, signature), complete(t2, signature), fuel=fuel)
    original = convertible(t1, t2, fuel=fuel)
    parts = (completed, original)
    if completed.unknown or original.unknown:
        return unknown(explored=completed.explored + original.explored, parts=parts,
                       note=f"completions {completed}, originals {original}")
    if completed.outcome is original.outcome:
        return proved(explored=completed.explored + original.explored, parts=parts,
                      note=f"both {completed}")
    return refuted(explored=completed.explored + original.explored, parts=parts,
                   note=f"completions {completed} but originals {original}")


def check_cpl_red_replay(
    t: Term,
    signature: Signature,
    rng: random.Random,
    steps: int = 6,
    fuel: int = 500,
) -> Verdict:
    """Walk cpl(t) ->* t' at random; then cnf(t') = cpl(t0) for a reduct t0 of t."""
    current = complete(t, signature)
    for _ in range(steps):
        reducts = list(one_step_reducts(current, ALL))
        if not reducts:
            break
        current = rng.choice(reducts)[2]
    target = alpha_key(normalize_cc(current))
    found, trace, spent, _ = find_reduct(
        t, lambda s: alpha_key(complete(s, signature)) == target, ALL, fuel
    )
    if found is None:
        return unknown(witness=current, explored=spent, note="no matching reduct of t within fuel")
    return proved(witness=found, traces=(tuple(trace),), explored=spent)


def check_local_confluence(t: Term, fuel: int = 300, rules: frozenset[Rule] = ALL) -> Verdict:
    """Every pair of one-step reducts of `t` has a common reduct."""
    reducts = [u for _, _, u in one_step_reducts(t, rules)]
    distinct: dict[str, Term] = {}
    for u in reducts:
        distinct.setdefault(alpha_key(u), u)
    terms = list(distinct.values())
    verdicts = []
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            verdicts.append(convertible(terms[i], terms[j], fuel=fuel, rules=rules))
    return combine(verdicts, note=f"{len(verdicts)} critical pairs")


def symmetric_agreement(a: Term, b: Term, fuel: int) -> bool:
    """The two orientations never give contradictory definite verdicts."""
    x, y = convertible(a, b, fuel=fuel), convertible(b, a, fuel=fuel)
    return not ({x.outcome, y.outcome} >= {proved().outcome, refuted().outcome})


__all__ = [
    "EquivQuery",
    "NotHereditarilyDefined",
    "check_completeness_pair",
    "check_cpl_red_replay",
    "check_local_confluence",
    "check_soundness",
    "convertible",
    "joins",
    "symmetric_agreement",
]
