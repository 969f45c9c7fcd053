"""The six reduction rules, positions, strategies, CaseCase normal forms."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable, Iterator

from .terms import (
    App,
    Binding,
    Case,
    Cons,
    Lam,
    Term,
    Var,
    alpha_eq,
    fresh,
    substitute,
)


class Rule(enum.Enum):
    APP_LAM = "AL"
    LAM_APP = "LA"
    CASE_CONS = "CO"
    CASE_APP = "CA"
    CASE_LAM = "CL"
    CASE_CASE = "CC"

    @property
    def short(self) -> str:
        return self.value

    @property
    def long(self) -> str:
        return _LONG[self]

    @classmethod
    def parse(cls, name: str) -> "Rule":
        for r in cls:
            if name in (r.value, r.long, r.name):
                return r
        raise ValueError(f"unknown rule {name!r}")


_LONG = {
    Rule.APP_LAM: "AppLam",
    Rule.LAM_APP: "LamApp",
    Rule.CASE_CONS: "CaseCons",
    Rule.CASE_APP: "CaseApp",
    Rule.CASE_LAM: "CaseLam",
    Rule.CASE_CASE: "CaseCase",
}

RuleSet = frozenset  # of Rule

ALL: frozenset[Rule] = frozenset(Rule)
LCM: frozenset[Rule] = ALL - {Rule.CASE_CASE}
CC_ONLY: frozenset[Rule] = frozenset({Rule.CASE_CASE})

PRESETS = {"all": ALL, "lcm": LCM, "cc": CC_ONLY}

Position = tuple  # of str selectors: "function", "argument", "body", "scrutinee", "branch:C"


class PreconditionError(ValueError):
    """Raised when a rule is applied where its left-hand side does not match."""


@dataclass(frozen=True)
class Step:
    rule: Rule
    position: tuple[str, ...]
    before: Term
    after: Term


Trace = list  # of Step


# -- rules at the root ------------------------------------------------------


def compose_bindings(theta: Binding, phi: Binding) -> Binding:
    """theta o phi: every branch of phi wrapped by a case on theta."""
    return Binding(tuple((c, Case(theta, u)) for c, u in phi))


def root_rule(t: Term, rules: frozenset[Rule] = ALL) -> Rule | None:
    """The rule whose left-hand side matches `t` at the root, if enabled.

    At most one rule can match a given node.
    """
    match t:
        case App(Lam(), _):
            r = Rule.APP_LAM
        case Lam(x, App(f, Var(y))) if x == y and x not in f.fv:
            r = Rule.LAM_APP
        case Case(binding, Cons(c)):
            if binding.get(c) is None:
                return None  # match failure
            r = Rule.CASE_CONS
        case Case(_, App()):
            r = Rule.CASE_APP
        case Case(_, Lam()):
            r = Rule.CASE_LAM
        case Case(_, Case()):
            r = Rule.CASE_CASE
        case _:
            return None
    return r if r in rules else None


def contract(t: Term, rule: Rule) -> Term:
    """Rewrite the root of `t` with `rule`."""
    if root_rule(t, frozenset((rule,))) is not rule:
        raise PreconditionError(f"{rule.long} does not match at this position")
    match rule, t:
        case Rule.APP_LAM, App(Lam(x, body), u):
            return substitute(body, x, u)
        case Rule.LAM_APP, Lam(_, App(f, _)):
            return f
        case Rule.CASE_CONS, Case(binding, Cons(c)):
            return binding.get(c)
        case Rule.CASE_APP, Case(binding, App(f, a)):
            return App(Case(binding, f), a)
        case Rule.CASE_LAM, Case(binding, Lam(x, body)):
            if x in binding.fv:
                x2 = fresh(x, binding.fv | body.fv)
                body = substitute(body, x, Var(x2))
                x = x2
            return Lam(x, Case(binding, body))
        case Rule.CASE_CASE, Case(theta, Case(phi, u)):
            return Case(compose_bindings(theta, phi), u)
    raise AssertionError("unreachable")


# -- positions ----------------------------------------------------------------


def _children(t: Term) -> list[tuple[str, Term]]:
    match t:
        case App(f, a):
            return [("function", f), ("argument", a)]
        case Lam(_, b):
            return [("body", b)]
        case Case(binding, u):
            out = [(f"branch:{c}", v) for c, v in binding]
            out.append(("scrutinee", u))
            return out
    return []


def _rebuild(t: Term, sel: str, new: Term) -> Term:
    match t:
        case App(f, a):
            if sel == "function":
                return App(new, a)
            if sel == "argument":
                return App(f, new)
        case Lam(x, _):
            if sel == "body":
                return Lam(x, new)
        case Case(binding, u):
            if sel == "scrutinee":
                return Case(binding, new)
            if sel.startswith("branch:"):
                c = sel[len("branch:"):]
                if binding.get(c) is not None:
                    return Case(binding.replace(c, new), u)
    raise PreconditionError(f"no child {sel!r} in {type(t).__name__}")


def subterm_at(t: Term, pos: tuple[str, ...]) -> Term:
    for sel in pos:
        for name, child in _children(t):
            if name == sel:
                t = child
                break
        else:
            raise PreconditionError(f"position {list(pos)} does not address a subterm")
    return t


def replace_at(t: Term, pos: tuple[str, ...], new: Term) -> Term:
    if not pos:
        return new
    sel, rest = pos[0], pos[1:]
    child = subterm_at(t, (sel,))
    return _rebuild(t, sel, replace_at(child, rest, new))


# -- redexes and steps -----------------------------------------------------------


def enumerate_redexes(t: Term, rules: frozenset[Rule] = ALL) -> list[tuple[Rule, tuple[str, ...]]]:
    """All (rule, position) redexes of `t`, leftmost-outermost first."""
    return [(r, p) for r, p, _ in one_step_reducts(t, rules)]


def one_step_reducts(
    t: Term, rules: frozenset[Rule] = ALL
) -> Iterator[tuple[Rule, tuple[str, ...], Term]]:
    """Yield (rule, position, reduct) for every redex, leftmost-outermost first."""
    r = root_rule(t, rules)
    if r is not None:
        yield r, (), contract(t, r)
    for sel, child in _children(t):
        for rr, p, new in one_step_reducts(child, rules):
            yield rr, (sel,) + p, _rebuild(t, sel, new)


def _innermost_reducts(
    t: Term, rules: frozenset[Rule]
) -> Iterator[tuple[Rule, tuple[str, ...], Term]]:
    for sel, child in _children(t):
        for rr, p, new in _innermost_reducts(child, rules):
            yield rr, (sel,) + p, _rebuild(t, sel, new)
    r = root_rule(t, rules)
    if r is not None:
        yield r, (), contract(t, r)


def apply_step(t: Term, rule: Rule, pos: tuple[str, ...]) -> Term:
    sub = subterm_at(t, tuple(pos))
    return replace_at(t, tuple(pos), contract(sub, rule))


def leftmost_outermost(t: Term, rules: frozenset[Rule] = ALL) -> tuple[Rule, tuple[str, ...], Term] | None:
    return next(one_step_reducts(t, rules), None)


def leftmost_innermost(t: Term, rules: frozenset[Rule] = ALL) -> tuple[Rule, tuple[str, ...], Term] | None:
    return next(_innermost_reducts(t, rules), None)


Strategy = Callable[[Term, frozenset], "tuple[Rule, tuple[str, ...], Term] | None"]


def is_normal(t: Term, rules: frozenset[Rule] = ALL) -> bool:
    return leftmost_outermost(t, rules) is None


def reduce(
    t: Term,
    rules: frozenset[Rule] = ALL,
    fuel: int = 1000,
    strategy: Strategy = leftmost_outermost,
) -> tuple[Term, list[Step], bool]:
    """Contract redexes chosen by `strategy` until normal or out of fuel.

    Returns (final term, trace, exhausted); `exhausted` is True only when a
    redex remained after the budget was spent.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    trace: list[Step] = []
    while True:
        nxt = strategy(t, rules)
        if nxt is None:
            return t, trace, False
        if len(trace) >= fuel:
            return t, trace, True
        rule, pos, after = nxt
        trace.append(Step(rule, pos, t, after))
        t = after


def replay(start: Term, trace: list[Step]) -> bool:
    """Re-check that `trace` is a valid reduction sequence from `start`."""
    current = start
    for step in trace:
        if not alpha_eq(step.before, current):
            return False
        try:
            again = apply_step(step.before, step.rule, step.position)
        except PreconditionError:
            return False
        if not alpha_eq(again, step.after):
            return False
        current = step.after
    return True


# -- CaseCase normal form and the structural measure -----------------------------


def normalize_cc(t: Term) -> Term:
    """The unique CaseCase normal form of `t`."""
    match t:
        case Var() | Cons():
            return t
        case Lam(x, b):
            return Lam(x, normalize_cc(b))
        case App(f, a):
            return App(normalize_cc(f), normalize_cc(a))
        case Case(theta, Case(phi, u)):
            return normalize_cc(Case(compose_bindings(theta, phi), u))
        case Case(theta, u):
            return Case(theta.map(normalize_cc), normalize_cc(u))
    raise TypeError(t)


def measure(t: Term) -> int:
    match t:
        case Var() | Cons():
            return 1
        case Lam(_, b):
            return measure(b) + 1
        case App(f, a):
            return measure(f) + measure(a)
        case Case(theta, u):
            return measure(u) * (binding_measure(theta) + 2)
    raise TypeError(t)


def binding_measure(theta: Binding) -> int:
    return sum(measure(u) for _, u in theta)


# -- serialisation --------------------------------------------------------------


def step_to_json(step: Step, show: Callable[[Term], str], with_before: bool = True) -> str:
    obj: dict = {"rule": step.rule.short, "pos": list(step.position)}
    if with_before:
        obj["before"] = show(step.before)
        obj["after"] = show(step.after)
    else:
        obj["term"] = show(step.after)
    return json.dumps(obj, ensure_ascii=False)


def trace_to_jsonl(trace: list[Step], show: Callable[[Term], str], with_before: bool = True) -> str:
    """One JSON object per line, one line per step."""
    return "\n".join(step_to_json(s, show, with_before) for s in trace)
