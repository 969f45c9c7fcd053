import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SIG, term_strategy
from lcc.config import SearchConfig, default_fuel
from lcc.equivalence import (
    EquivQuery,
    NotHereditarilyDefined,
    check_completeness_pair,
    check_cpl_red_replay,
    check_local_confluence,
    check_soundness,
    convertible,
    symmetric_agreement,
)
from lcc.generate import GenConfig, TermGenerator, random_walk
from lcc.rewrite import ALL, Rule, is_normal, replay
from lcc.syntax import parse
from lcc.terms import App, Case, Binding, Lam, Signature, Var, alpha_eq

PRED = r"(\n. {C0 -> C0; S -> \x. x} . n)"
COUNTER_SIG = Signature(("C1", "C2"))
small = term_strategy(max_leaves=6)


def p(text, sig=SIG):
    return parse(text, sig)


def check_evidence(a, b, v):
    """A Proved verdict carries two replayable traces into the witness."""
    left, right = v.traces
    assert replay(a, list(left)) and replay(b, list(right))
    end_l = left[-1].after if left else a
    end_r = right[-1].after if right else b
    assert alpha_eq(end_l, v.witness) and alpha_eq(end_r, v.witness)


class TestConvertible:
    def test_reflexive(self):
        t = p(r"\x. x (\y. y)")
        assert convertible(t, t, fuel=0).proved

    def test_pred_of_one(self):
        a, b = p(f"{PRED} (S C0)"), p("C0")
        v = convertible(a, b, fuel=10)
        assert v.proved
        check_evidence(a, b, v)

    def test_counterexample_terms_are_distinct_normal_forms(self):
        a = p(r"{C1 -> \y. y y} . C2", COUNTER_SIG)
        b = p(r"{C2 -> \y. y} . C1", COUNTER_SIG)
        v = convertible(a, b, fuel=100)
        assert v.refuted
        assert is_normal(a) and is_normal(b)

    def test_finite_closure_refutes(self):
        omega = p(r"(\x. x x) (\x. x x)")
        assert convertible(omega, p("C0"), fuel=50).refuted

    def test_unknown_when_fuel_runs_out(self):
        growing = p(r"(\x. x x x) (\x. x x x)")
        v = convertible(growing, p("C0"), fuel=40)
        assert v.unknown
        assert v.explored <= 40

    def test_size_cap_never_refutes(self):
        omega = p(r"(\x. x x) (\x. x x)")
        capped = SearchConfig(fuel=50, max_term_size=5)
        v = convertible(omega, p("C0"), config=capped)
        assert v.unknown

    def test_query_object(self):
        q = EquivQuery(p(r"(\x. x) y"), p("y"), fuel=5)
        assert convertible(q).proved

    def test_eta_is_part_of_conversion(self):
        a, b = p(r"\x. f x"), p("f")
        assert convertible(a, b, fuel=5).proved
        assert not convertible(a, b, fuel=5, rules=ALL - {Rule.LAM_APP}).proved

    def test_default_fuel_from_environment(self, monkeypatch):
        monkeypatch.setenv("LCC_DEFAULT_FUEL", "7")
        assert default_fuel() == 7
        monkeypatch.delenv("LCC_DEFAULT_FUEL")
        assert default_fuel() == 1000

    def test_configurable_search(self):
        a, b = p(f"{PRED} (S C0)"), p("C0")
        only_bfs = SearchConfig(fuel=50, outermost_share=0.0, innermost_share=0.0)
        assert convertible(a, b, config=only_bfs).proved

    @given(small, small)
    def test_definite_verdicts_carry_evidence(self, a, b):
        v = convertible(a, b, fuel=200)
        if v.proved:
            check_evidence(a, b, v)
        if v.refuted and v.note == "distinct normal forms":
            left, right = v.traces
            nl = left[-1].after if left else a
            nr = right[-1].after if right else b
            assert is_normal(nl) and is_normal(nr) and not alpha_eq(nl, nr)

    @given(small, small)
    def test_symmetric(self, a, b):
        assert symmetric_agreement(a, b, 150)

    @given(small, st.randoms(use_true_random=False))
    def test_reducts_are_convertible(self, t, rnd):
        u = random_walk(t, rnd, 3)
        assert convertible(t, u, fuel=500).proved

    @given(small, st.randoms(use_true_random=False))
    def test_congruence(self, t, rnd):
        u = random_walk(t, rnd, 2)
        if not convertible(t, u, fuel=200).proved:
            return
        for ctx in (lambda s: App(Var("f"), s), lambda s: Lam("z", s),
                    lambda s: Case(Binding((("C0", s),)), Var("y"))):
            assert convertible(ctx(t), ctx(u), fuel=2000).proved


class TestSoundness:
    def test_identity_application(self):
        assert check_soundness(p(r"(\x. x) C0"), [], SIG, 50).proved

    def test_case_app_then_case_cons(self):
        assert check_soundness(p(r"{C0 -> C0; S -> \y. y} . (S x)"), ["x"], SIG, 100).proved

    def test_case_case(self):
        assert check_soundness(p(r"{C0 -> a; S -> b} . {C1 -> C0} . x"), ["x", "a", "b"], SIG, 200).proved

    @pytest.mark.parametrize("text", [
        r"(\x. x x) C0",
        r"\x. y x",
        r"{C0 -> y} . C0",
        r"{C0 -> y} . (x C0)",
        r"{C0 -> x} . (\x. x)",
        r"{C0 -> y} . {C1 -> x} . x",
    ])
    def test_each_rule(self, text):
        assert check_soundness(p(text), ["x", "y"], SIG, 500).proved


class TestCompleteness:
    def test_forward_steps(self):
        rng = random.Random(5)
        gen = TermGenerator(GenConfig(max_size=10, signature=SIG), rng)
        t = gen.hereditarily_defined()
        u = random_walk(t, rng, 3)
        assert check_completeness_pair(t, u, SIG, fuel=500).proved

    def test_distinct_constructors(self):
        v = check_completeness_pair(p("C0"), p("C1"), SIG, fuel=50)
        assert v.proved
        assert all(part.refuted for part in v.parts)

    def test_eta_expansion(self):
        v = check_completeness_pair(p(r"\x. x"), p(r"\y. (\x. x) y"), SIG, fuel=50)
        assert v.proved
        assert all(part.proved for part in v.parts)

    def test_counterexample_pair(self):
        a = p(r"{C1 -> \y. y y} . C2", COUNTER_SIG)
        b = p(r"{C2 -> \y. y} . C1", COUNTER_SIG)
        with pytest.raises(NotHereditarilyDefined):
            check_completeness_pair(a, b, COUNTER_SIG, fuel=100)
        v = check_completeness_pair(a, b, COUNTER_SIG, fuel=100, require_hdef=False)
        assert v.refuted
        completed, original = v.parts
        assert completed.proved and original.refuted

    def test_cpl_red_replay(self):
        rng = random.Random(11)
        gen = TermGenerator(GenConfig(max_size=12, signature=SIG), rng)
        for _ in range(10):
            t = gen.hereditarily_defined()
            assert check_cpl_red_replay(t, SIG, rng, steps=6, fuel=500).proved


class TestLocalConfluence:
    def test_critical_pair_cl_al(self):
        t = p(r"{C0 -> y} . ((\x. \z. x) C0)")
        assert check_local_confluence(t, 100).proved

    @given(term_strategy(max_leaves=8))
    def test_random(self, t):
        assert check_local_confluence(t, 300).proved
