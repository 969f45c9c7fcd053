import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import term_strategy
from lcc.equivalence import convertible
from lcc.per_model import (
    D,
    ONE,
    PROJ1,
    ContextError,
    Diagram,
    ModelConstants,
    MorphismRep,
    TagMismatch,
    check_diagram,
    church_proj,
    church_tuple,
    diagram_sides,
    interpret,
    interpret_figure3,
    morphism_compose,
    morphism_curry,
    morphism_ev,
    morphism_id,
    morphism_pair,
    morphism_product,
    morphism_proj,
    morphism_terminal,
    pdt,
    power,
    prod,
)
from lcc.rewrite import ALL, Rule, leftmost_innermost, reduce
from lcc.syntax import parse
from lcc.terms import App, Binding, Case, Cons, Lam, Signature, Var, alpha_eq

SIG2 = Signature(("C1", "C2"))
SIG3 = Signature(("C0", "C1", "S"))


def joins(a, b, fuel=300):
    return convertible(a, b, fuel=fuel).proved


def closed_morphism(text, source=D, target=D):
    return MorphismRep(parse(text, SIG3), source, target)


class TestChurch:
    def test_encodings(self):
        assert alpha_eq(church_tuple([Var("a"), Var("b")]), parse(r"\f. f a b"))
        assert alpha_eq(church_proj(3, 2), parse(r"\p. p (\x1 x2 x3. x2)"))

    def test_tuple_binder_avoids_components(self):
        t = church_tuple([Var("f"), Var("g")])
        assert t.binder not in {"f", "g"}
        assert t.fv == {"f", "g"}

    def test_pair_second_projection(self):
        assert joins(App(church_proj(2, 2), church_tuple([Var("a"), Var("b")])), Var("b"))

    def test_unary_tuple(self):
        assert joins(App(church_proj(1, 1), church_tuple([Var("t")])), Var("t"))

    def test_triple_within_five_app_lam_steps(self):
        t = App(church_proj(3, 2), church_tuple([Var("a"), Var("b"), Var("c")]))
        out, trace, exhausted = reduce(t, ALL, 5)
        assert out == Var("b") and not exhausted
        assert all(s.rule is Rule.APP_LAM for s in trace)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            church_proj(2, 3)
        with pytest.raises(IndexError):
            church_proj(2, 0)

    @given(st.integers(1, 4).flatmap(
        lambda k: st.tuples(st.just(k), st.integers(1, k),
                            st.lists(term_strategy(max_leaves=4), min_size=k, max_size=k))))
    def test_projection_law(self, data):
        k, i, ts = data
        assert joins(App(church_proj(k, i), church_tuple(ts)), ts[i - 1], fuel=400)


class TestMorphisms:
    def test_identity_law(self):
        f = closed_morphism(r"\x. C0 x")
        lhs = App(morphism_compose(morphism_id(D), f).rep, Var("u"))
        assert joins(lhs, App(f.rep, Var("u")))

    def test_pair_then_projection(self):
        f = closed_morphism(r"\x. S x")
        g = closed_morphism(r"\x. C1")
        paired = morphism_pair(f, g)
        composite = morphism_compose(paired, morphism_proj(paired.target, 1))
        assert joins(App(composite.rep, Var("u")), App(f.rep, Var("u")))

    def test_currying_diagram(self):
        f = closed_morphism(r"\p. p (\a b. b a)", source=prod(D, D))
        curried = morphism_curry(f)
        lhs = morphism_compose(morphism_product(curried, morphism_id(D)), morphism_ev(D, D))
        point = church_tuple([Cons("C0"), Cons("S")])
        assert joins(App(lhs.rep, point), App(f.rep, point))

    def test_representatives_as_displayed(self):
        f, g = closed_morphism(r"\x. C0"), closed_morphism(r"\x. S")
        assert alpha_eq(morphism_compose(f, g).rep, parse(r"\z. (\x. S) ((\x. C0) z)"))
        assert alpha_eq(morphism_terminal(D).rep, parse(r"\x. x"))
        ev = morphism_ev(D, D).rep
        assert alpha_eq(ev, Lam("x", App(App(PROJ1, Var("x")), App(church_proj(2, 2), Var("x")))))

    def test_tag_mismatch(self):
        with pytest.raises(TagMismatch):
            morphism_compose(morphism_id(D), morphism_id(ONE))
        with pytest.raises(TagMismatch):
            morphism_pair(morphism_id(D), morphism_id(ONE))
        with pytest.raises(TagMismatch):
            morphism_curry(morphism_id(D))

    def test_representatives_are_closed(self):
        with pytest.raises(ValueError):
            MorphismRep(Var("x"), D, D)

    def test_objects(self):
        assert power(0) == ONE
        assert pdt(3) == power(3)
        assert str(power(3)) == "D^3"


class TestModelConstants:
    def test_case_constant(self):
        m = ModelConstants(SIG2)
        expected = parse(r"\x. {C1 -> (\p. p (\x1 x2. x1)) ((\p. p (\x1 x2. x1)) x);"
                         r" C2 -> (\p. p (\x1 x2. x2)) ((\p. p (\x1 x2. x1)) x)}"
                         r" . ((\p. p (\x1 x2. x2)) x)", SIG2)
        assert alpha_eq(m.t_case, expected)

    def test_fail_and_fc(self):
        m = ModelConstants(SIG2)
        assert alpha_eq(m.fail.rep, parse(r"\x. {} . C1", SIG2))
        assert alpha_eq(m.fc("C2").rep, parse(r"\x. C2", SIG2))
        assert m.lam.rep == m.app.rep == Lam("x", Var("x"))


class TestInterpret:
    def test_variable(self):
        rep = interpret(["x"], parse("x"), SIG3).rep
        assert alpha_eq(rep, Lam("p", App(church_proj(1, 1), Var("p"))))

    def test_closed_constructor(self):
        assert alpha_eq(interpret([], Cons("C0"), SIG3).rep, parse(r"\p. C0"))

    def test_completion_then_substitution(self):
        rep = interpret(["x"], parse(r"{C1 -> x} . C2", SIG2), SIG2).rep
        proj_p = App(church_proj(1, 1), Var("p"))
        branches = (("C1", proj_p), ("C2", Case(Binding(()), Cons("C1"))))
        assert alpha_eq(rep, Lam("p", Case(Binding(branches), Cons("C2"))))

    def test_representative_avoids_context_names(self):
        rep = interpret(["x", "x1"], parse("x x1"), SIG3).rep
        assert rep.fv == frozenset()
        assert joins(App(rep, church_tuple([Cons("C0"), Cons("S")])), parse("C0 S"))

    def test_compositional_variable_is_projection(self):
        assert alpha_eq(interpret_figure3(["x"], Var("x"), SIG3).rep, church_proj(1, 1))

    def test_compositional_constructor(self):
        rep = interpret_figure3([], Cons("C0"), SIG3).rep
        assert alpha_eq(rep, parse(r"\p. (\x. C0) ((\x. x) p)"))
        out, trace, _ = reduce(rep, ALL, 10, strategy=leftmost_innermost)
        assert alpha_eq(out, parse(r"\p. C0")) and len(trace) == 2
        # outermost first discards the argument
        out, trace, _ = reduce(rep, ALL, 10)
        assert alpha_eq(out, parse(r"\p. C0")) and len(trace) == 1

    def test_compositional_shadowing_uses_innermost_binder(self):
        t = parse(r"\x. x")
        assert joins(interpret_figure3(["x"], t, SIG3).rep, interpret(["x"], t, SIG3).rep, 500)

    def test_context_errors(self):
        with pytest.raises(ContextError):
            interpret([], Var("x"), SIG3)
        with pytest.raises(ContextError):
            interpret_figure3(["x", "x"], Var("x"), SIG3)

    @given(term_strategy(max_leaves=4, names=("x", "y")))
    def test_compositional_agrees_with_closed_form(self, t):
        ctx = ["x", "y"]
        v = convertible(interpret(ctx, t, SIG3).rep, interpret_figure3(ctx, t, SIG3).rep, fuel=1500)
        assert v.proved


class TestDiagrams:
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("d", list(Diagram))
    def test_commutes(self, d, n):
        sig = Signature(tuple(f"C{i}" for i in range(1, n + 1)))
        assert check_diagram(d, sig, fuel=2000).proved

    def test_d2_single_slot(self):
        assert check_diagram("D2", SIG2, i=1).proved

    def test_d6_both_sides_join_the_failure(self):
        ((lhs, rhs),) = diagram_sides(Diagram.D6, SIG2)
        target = parse(r"\z. {} . C1", SIG2)
        assert joins(lhs.rep, target) and joins(rhs.rep, target)

    def test_wrong_slot_is_refuted(self):
        # negative control: the case composite for C1 is proj 1, not proj 2
        ((lhs, _),) = diagram_sides(Diagram.D2, SIG2, 1)
        wrong = morphism_proj(pdt(2), 2)
        assert convertible(lhs.rep, wrong.rep, fuel=500).refuted

    def test_sides_have_matching_tags(self):
        for d in Diagram:
            for lhs, rhs in diagram_sides(d, SIG3):
                assert (lhs.source, lhs.target) == (rhs.source, rhs.target)

    def test_d4_needs_eta(self):
        ((lhs, rhs),) = diagram_sides(Diagram.D4, SIG2)
        without_eta = ALL - {Rule.LAM_APP}
        assert convertible(lhs.rep, rhs.rep, fuel=2000).proved
        assert not convertible(lhs.rep, rhs.rep, fuel=2000, rules=without_eta).proved
