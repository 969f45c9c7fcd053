"""Match failures, case-completion, and executable completion lemmas."""

from __future__ import annotations

from dataclasses import dataclass

from .rewrite import (
    ALL,
    CC_ONLY,
    LCM,
    Rule,
    Step,
    apply_step,
    normalize_cc,
    one_step_reducts,
    subterm_at,
)
from .search import Explorer, find_reduct
from .terms import (
    App,
    Binding,
    Case,
    Cons,
    Lam,
    Signature,
    Term,
    Var,
    alpha_eq,
    alpha_key,
    failure,
    subterms,
)
from .verdict import Verdict, proved, refuted, unknown


@dataclass(frozen=True)
class DefinednessReport:
    defined: bool
    failure_positions: tuple[tuple[str, ...], ...]


def is_failure(t: Term) -> bool:
    match t:
        case Case(binding, Cons(c)):
            return binding.get(c) is None
    return False


def is_defined(t: Term) -> DefinednessReport:
    positions = tuple(pos for pos, s in subterms(t) if is_failure(s))
    return DefinednessReport(not positions, positions)


def defined(t: Term) -> bool:
    return not any(is_failure(s) for _, s in subterms(t))


def is_hereditarily_defined(t: Term, fuel: int = 1000, rules: frozenset[Rule] = ALL) -> Verdict:
    """Semi-decide whether every reduct of `t` (including `t`) is defined.

    Proved only when the whole reduct closure has been enumerated.
    """
    if not defined(t):
        return refuted(witness=t, traces=((),), note="the term itself is undefined")
    ex = Explorer(t, rules)
    while ex.frontier:
        if ex.spent >= fuel:
            return unknown(explored=ex.spent, note=f"{len(ex.seen)} reducts visited")
        _, new, _ = ex.generation(fuel - ex.spent)
        for k in new:
            s = ex.seen[k]
            if not defined(s):
                return refuted(witness=s, traces=(tuple(ex.trace_to(k)),), explored=ex.spent)
    return proved(explored=ex.spent, note=f"closure of {len(ex.seen)} terms")


# -- case-completion ---------------------------------------------------------------


def complete(t: Term, signature: Signature) -> Term:
    """Totalise every case-binding over the signature, filling gaps with {} . c1."""
    match t:
        case Var() | Cons():
            return t
        case App(f, a):
            return App(complete(f, signature), complete(a, signature))
        case Lam(x, b):
            return Lam(x, complete(b, signature))
        case Case(theta, u):
            return Case(complete_binding(theta, signature), complete(u, signature))
    raise TypeError(t)


def complete_binding(theta: Binding, signature: Signature) -> Binding:
    fail = failure(signature)
    out = []
    for c in signature:
        u = theta.get(c)
        out.append((c, fail if u is None else complete(u, signature)))
    return Binding(tuple(out))


def is_complete(t: Term, signature: Signature) -> bool:
    """Every case-binding of `t` is total, except for canonical failures {} . c1.

    Completion inserts the failure literally and does not complete it, so
    cpl is not idempotent; its image satisfies this predicate.
    """
    full = frozenset(signature)
    canonical = failure(signature)
    return all(
        s.binding.dom == full or s == canonical
        for _, s in subterms(t)
        if isinstance(s, Case)
    )


# -- executable lemmas -------------------------------------------------------------
#
# Each check takes a concrete term, enumerates the relevant one-step
# reductions and searches (within fuel) for the object the lemma asserts.


def _reducts(t: Term, rules: frozenset[Rule]) -> list[tuple[Rule, tuple[str, ...], Term]]:
    return list(one_step_reducts(t, rules))


def _simulate_cc(t: Term, ct: Term, pos: tuple[str, ...], signature: Signature,
                 fuel: int) -> tuple[Verdict, int]:
    """cpl(t) ->cc v at `pos` followed by cc* steps reaching cpl(u), where t ->cc u at `pos`.

    The direct path contracts the residual ``{cpl theta} . {} . c1`` left in
    each branch outside dom(phi); failing that, a CaseCase search runs from
    the rewritten subterm (the context is unchanged by cpl).
    """
    v = apply_step(ct, Rule.CASE_CASE, pos)
    target = complete(apply_step(t, Rule.CASE_CASE, pos), signature)
    phi = subterm_at(t, pos).scrutinee.binding.dom
    w, spent = v, 1
    for c in signature:
        if c not in phi:
            w = apply_step(w, Rule.CASE_CASE, pos + (f"branch:{c}",))
            spent += 1
    if alpha_eq(w, target):
        return proved(), spent
    goal = subterm_at(target, pos)
    found, _, used, exhausted = find_reduct(
        subterm_at(v, pos), lambda s: alpha_eq(s, goal), CC_ONLY, fuel
    )
    spent += used
    if found is not None:
        return proved(), spent
    note = f"CaseCase at {list(pos)} not joined by cc steps"
    return (refuted if exhausted else unknown)(witness=t, note=note), spent


def check_red_cpl(t: Term, signature: Signature, fuel: int = 200) -> Verdict:
    """Completion simulates every one-step reduction of `t`.

    For a step t -> u by a rule other than CaseCase, cpl(t) -> cpl(u) in one
    step of the same rule.  For CaseCase the totalised bindings leave a
    residual ``{cpl theta} . {} . c1`` in each branch outside dom(phi), so
    cpl(t) ->cc v ->cc* cpl(u) where v is the CaseCase step at the same
    position.  Also: if cpl(t) is normal then `t` is normal.
    """
    ct = complete(t, signature)
    spent = 0
    for rule, pos, u in _reducts(t, ALL):
        if rule is Rule.CASE_CASE:
            v, used = _simulate_cc(t, ct, pos, signature, fuel)
            spent += used
            if not v.proved:
                return v
            continue
        try:
            image = apply_step(ct, rule, pos)
        except Exception:
            return refuted(witness=t, note=f"{rule.long} at {list(pos)} has no image in cpl(t)")
        spent += 1
        if not alpha_eq(image, complete(u, signature)):
            return refuted(witness=t, note=f"{rule.long} at {list(pos)} not simulated in one step")
    if not _reducts(ct, ALL) and _reducts(t, ALL):
        return refuted(witness=t, note="cpl(t) normal but t is not")
    return proved(explored=spent)


def check_cpl_red_lcm(t: Term, signature: Signature) -> Verdict:
    """For defined `t`: each one-step lcm-reduct of cpl(t) is cpl(t0) with t -> t0."""
    if not defined(t):
        raise ValueError("check_cpl_red_lcm needs a defined term")
    images = {alpha_key(complete(u, signature)) for _, _, u in _reducts(t, ALL)}
    for rule, pos, v in _reducts(complete(t, signature), LCM):
        if alpha_key(v) not in images:
            return refuted(witness=v, note=f"{rule.long} at {list(pos)} reflects no step of t")
    return proved()


def check_cpl_red_cc(t: Term, signature: Signature, fuel: int = 200) -> Verdict:
    """If cpl(t) ->cc t' then t' ->cc* cpl(t0) for some t ->cc t0.

    CaseCase redexes of cpl(t) sit exactly where t has one, so t0 is first
    tried as the step of t at the same position; a search over every
    cc-reduct of t is the fallback.
    """
    ct = complete(t, signature)
    targets = {alpha_key(complete(u, signature)) for _, _, u in _reducts(t, CC_ONLY)}
    spent = 0
    for rule, pos, v in _reducts(ct, CC_ONLY):
        direct, used = _simulate_cc(t, ct, pos, signature, fuel)
        spent += used
        if direct.proved:
            continue
        found, _, used, exhausted = find_reduct(v, lambda s: alpha_key(s) in targets, CC_ONLY, fuel)
        spent += used
        if found is None:
            note = f"no cc-reduct of the CaseCase step at {list(pos)} is a completed reduct of t"
            return (refuted if exhausted else unknown)(explored=spent, witness=v, note=note)
    return proved(explored=spent)


def check_cnf_cpl(t: Term, signature: Signature) -> Verdict:
    """cnf(cpl(t)) equals cpl(cnf(t)) up to alpha."""
    lhs = normalize_cc(complete(t, signature))
    rhs = complete(normalize_cc(t), signature)
    return proved() if alpha_eq(lhs, rhs) else refuted(witness=t, note="cnf o cpl != cpl o cnf")


def check_lcm_cnf(t: Term, fuel: int = 200) -> Verdict:
    """Postponement: for each t ->lcm t', cnf(t) ->lcm* u ->cc* cnf(t').

    u ->cc* cnf(t') holds iff cnf(u) = cnf(t'), since CaseCase is confluent
    and terminating; the search runs over lcm-reducts of cnf(t).
    """
    start = normalize_cc(t)
    spent = 0
    for rule, pos, t2 in _reducts(t, LCM):
        target = alpha_key(normalize_cc(t2))
        found, _, used, exhausted = find_reduct(
            start, lambda s: alpha_key(normalize_cc(s)) == target, LCM, fuel
        )
        spent += used
        if found is None and exhausted:
            return refuted(explored=spent, witness=t2,
                           note=f"finite lcm-closure of cnf(t) has no postponed path for"
                                f" {rule.long} at {list(pos)}")
        if found is None:
            return unknown(explored=spent, witness=t2,
                           note=f"no postponed path for {rule.long} at {list(pos)} within fuel")
    return proved(explored=spent)


def check_cpl_equal(t: Term, u: Term, signature: Signature) -> Verdict:
    """Case-completion identifies two defined terms only when they are alpha-equal."""
    if not (defined(t) and defined(u)):
        raise ValueError("check_cpl_equal needs defined terms")
    same_cpl = alpha_eq(complete(t, signature), complete(u, signature))
    if same_cpl and not alpha_eq(t, u):
        return refuted(witness=u, note="distinct defined terms with equal completions")
    return proved()
