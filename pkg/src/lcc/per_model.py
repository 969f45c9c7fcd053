"""The syntactic PER model.

Morphisms are represented by single term representatives of their
equivalence classes; equality of morphisms is checked as bounded
convertibility of representatives.  Objects are symbolic tags only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .completion import complete
from .terms import (
    FAIL_BINDING,
    App,
    Binding,
    Case,
    Cons,
    Lam,
    Signature,
    SignatureError,
    Term,
    Var,
    apps,
    fresh,
    lams,
    names_of,
    substitute_many,
)

# -- Church tuples ---------------------------------------------------------------


def church_tuple(ts: Sequence[Term]) -> Term:
    """``<t1, ..., tk> = λf. f t1 ... tk`` with `f` fresh for the components."""
    if not ts:
        raise ValueError("tuples have at least one component")
    avoid = frozenset().union(*(t.fv for t in ts))
    f = fresh("f", avoid)
    return Lam(f, apps(Var(f), *ts))


def church_proj(k: int, i: int) -> Term:
    """``proj^k_i = λp. p (λx1 ... xk. xi)``."""
    if not 1 <= i <= k:
        raise IndexError(f"projection {i} out of range for a {k}-tuple")
    xs = [f"x{j}" for j in range(1, k + 1)]
    return Lam("p", App(Var("p"), lams(xs, Var(xs[i - 1]))))


def pair(a: Term, b: Term) -> Term:
    return church_tuple([a, b])


PROJ1 = church_proj(2, 1)
PROJ2 = church_proj(2, 2)


# -- objects -----------------------------------------------------------------------


class Base(enum.Enum):
    D = "D"
    ONE = "1"

    def __str__(self) -> str:
        return self.value


D = Base.D
ONE = Base.ONE


@dataclass(frozen=True)
class Prod:
    factors: tuple

    def __str__(self) -> str:
        if len(set(self.factors)) == 1 and self.factors[0] is D and len(self.factors) > 2:
            return f"D^{len(self.factors)}"
        return "(" + " x ".join(map(str, self.factors)) + ")"


@dataclass(frozen=True)
class Exp:
    codomain: object
    domain: object

    def __str__(self) -> str:
        return f"{self.codomain}^{self.domain}"


Obj = object  # Base | Prod | Exp


def power(k: int) -> Obj:
    """D^k; D^0 is the terminal object, D^1 the object of Church 1-tuples."""
    return ONE if k == 0 else Prod((D,) * k)


def pdt(n: int) -> Obj:
    """The object of case-binding denotations, n-tuples of points of D."""
    return Prod((D,) * n)


def prod(*factors: Obj) -> Prod:
    return Prod(tuple(factors))


class TagMismatch(TypeError):
    """Composition or pairing of morphisms whose objects do not line up."""


@dataclass(frozen=True)
class MorphismRep:
    """A representative term of a morphism ``source -> target``."""

    rep: Term
    source: Obj
    target: Obj

    def __post_init__(self) -> None:
        if self.rep.fv:
            raise ValueError(f"morphism representatives are closed, got free {sorted(self.rep.fv)}")

    def __str__(self) -> str:
        return f"{self.source} -> {self.target}"


# -- morphism algebra --------------------------------------------------------------


def morphism_id(a: Obj) -> MorphismRep:
    return MorphismRep(Lam("x", Var("x")), a, a)


def morphism_terminal(a: Obj) -> MorphismRep:
    """The unique morphism into 1; any term represents it, we use λx.x."""
    return MorphismRep(Lam("x", Var("x")), a, ONE)


def morphism_compose(f: MorphismRep, g: MorphismRep) -> MorphismRep:
    """Diagrammatic composition ``f ; g`` represented by ``λz. g (f z)``."""
    if f.target != g.source:
        raise TagMismatch(f"cannot compose {f} with {g}")
    return MorphismRep(Lam("z", App(g.rep, App(f.rep, Var("z")))), f.source, g.target)


def compose_all(*fs: MorphismRep) -> MorphismRep:
    out = fs[0]
    for g in fs[1:]:
        out = morphism_compose(out, g)
    return out


def morphism_pair(*fs: MorphismRep) -> MorphismRep:
    """``<f1, ..., fk>`` represented by ``λx. <f1 x, ..., fk x>``."""
    if not fs:
        raise ValueError("pairing needs at least one morphism")
    src = fs[0].source
    for f in fs[1:]:
        if f.source != src:
            raise TagMismatch(f"cannot pair {fs[0]} with {f}")
    body = church_tuple([App(f.rep, Var("x")) for f in fs])
    return MorphismRep(Lam("x", body), src, Prod(tuple(f.target for f in fs)))


def morphism_proj(obj: Obj, i: int) -> MorphismRep:
    """Projection out of an n-ary product object."""
    if not isinstance(obj, Prod):
        raise TagMismatch(f"{obj} is not a product")
    k = len(obj.factors)
    return MorphismRep(church_proj(k, i), obj, obj.factors[i - 1])


def morphism_product(f: MorphismRep, g: MorphismRep) -> MorphismRep:
    """``f x g`` represented by ``λx. <f (proj1 x), g (proj2 x)>``."""
    body = pair(App(f.rep, App(PROJ1, Var("x"))), App(g.rep, App(PROJ2, Var("x"))))
    return MorphismRep(Lam("x", body), prod(f.source, g.source), prod(f.target, g.target))


def morphism_ev(b: Obj, a: Obj) -> MorphismRep:
    """``ev : B^A x A -> B`` represented by ``λx. (proj1 x) (proj2 x)``."""
    rep = Lam("x", App(App(PROJ1, Var("x")), App(PROJ2, Var("x"))))
    return MorphismRep(rep, prod(Exp(b, a), a), b)


def morphism_curry(f: MorphismRep) -> MorphismRep:
    """``Λ(f) : C -> B^A`` for ``f : C x A -> B``, represented by ``λx.λy. f <x, y>``."""
    if not (isinstance(f.source, Prod) and len(f.source.factors) == 2):
        raise TagMismatch(f"cannot curry {f}: source is not a binary product")
    c, a = f.source.factors
    rep = Lam("x", Lam("y", App(f.rep, pair(Var("x"), Var("y")))))
    return MorphismRep(rep, c, Exp(f.target, a))


def iso(rep: Term, source: Obj, target: Obj) -> MorphismRep:
    """A canonical isomorphism given by an explicit repacking term."""
    return MorphismRep(rep, source, target)


def repack_extend(k: int) -> MorphismRep:
    """``D^k x D ≅ D^(k+1)``: ``λq. <proj^k_1 (proj1 q), ..., proj^k_k (proj1 q), proj2 q>``."""
    q = Var("q")
    comps = [App(church_proj(k, i), App(PROJ1, q)) for i in range(1, k + 1)]
    comps.append(App(PROJ2, q))
    return iso(Lam("q", church_tuple(comps)), prod(power(k), D), power(k + 1))


def reassociate(a: Obj, b: Obj, c: Obj) -> MorphismRep:
    """``(A x B) x C ≅ A x (B x C)``: ``λx. <proj1 (proj1 x), <proj2 (proj1 x), proj2 x>>``."""
    x = Var("x")
    rep = Lam("x", pair(App(PROJ1, App(PROJ1, x)), pair(App(PROJ2, App(PROJ1, x)), App(PROJ2, x))))
    return iso(rep, prod(prod(a, b), c), prod(a, prod(b, c)))


def diagonal_unit(a: Obj) -> MorphismRep:
    """``A ≅ A x 1``: ``λx. <x, x>`` (any term inhabits 1)."""
    return iso(Lam("x", pair(Var("x"), Var("x"))), a, prod(a, ONE))


# -- the model constants -----------------------------------------------------------


@dataclass(frozen=True)
class ModelConstants:
    signature: Signature

    @property
    def n(self) -> int:
        return len(self.signature)

    def fc(self, c: str) -> MorphismRep:
        if c not in self.signature:
            raise SignatureError(f"undeclared constructor {c!r}")
        return MorphismRep(Lam("x", Cons(c)), ONE, D)

    @property
    def t_case(self) -> Term:
        """``λx. {ci -> proj^n_i (proj1 x)} . (proj2 x)``."""
        x = Var("x")
        branches = tuple(
            (c, App(church_proj(self.n, i), App(PROJ1, x)))
            for i, c in enumerate(self.signature, start=1)
        )
        return Lam("x", Case(Binding(branches), App(PROJ2, x)))

    @property
    def case(self) -> MorphismRep:
        return MorphismRep(self.t_case, prod(pdt(self.n), D), D)

    @property
    def fail(self) -> MorphismRep:
        return MorphismRep(Lam("x", Case(FAIL_BINDING, Cons(self.signature.first))), ONE, D)

    @property
    def lam(self) -> MorphismRep:
        return MorphismRep(Lam("x", Var("x")), Exp(D, D), D)

    @property
    def app(self) -> MorphismRep:
        return MorphismRep(Lam("x", Var("x")), D, Exp(D, D))

    def comp(self) -> MorphismRep:
        """Case-binding composition: pairing of ``(id x proj^n_i) ; case``."""
        p = pdt(self.n)
        parts = [
            morphism_compose(morphism_product(morphism_id(p), morphism_proj(p, i)), self.case)
            for i in range(1, self.n + 1)
        ]
        return morphism_pair(*parts)

    def abstr_case(self) -> MorphismRep:
        """``Λ(f_case)`` with ``f_case = ≅ ; (id x ev) ; case``."""
        p = pdt(self.n)
        dd = Exp(D, D)
        f_case = compose_all(
            reassociate(p, dd, D),
            morphism_product(morphism_id(p), morphism_ev(D, D)),
            self.case,
        )
        return morphism_curry(f_case)


# -- interpretation ----------------------------------------------------------------


class ContextError(ValueError):
    """A free variable of the term is missing from the context."""


def _check_context(ctx: Sequence[str], t: Term) -> None:
    if len(set(ctx)) != len(ctx):
        raise ContextError(f"context variables must be distinct: {list(ctx)}")
    missing = t.fv - set(ctx)
    if missing:
        raise ContextError(f"free variables {sorted(missing)} not in context {list(ctx)}")


def interpret(ctx: Sequence[str], t: Term, signature: Signature) -> MorphismRep:
    """Closed form ``λx. cpl(t){xi := proj^k_i x}`` of the interpretation in the PER model."""
    ctx = list(ctx)
    _check_context(ctx, t)
    k = len(ctx)
    body = complete(t, signature)
    x = fresh("x", names_of(body) | set(ctx))
    if k:
        body = substitute_many(body, {xi: App(church_proj(k, i), Var(x))
                                      for i, xi in enumerate(ctx, start=1)})
    return MorphismRep(Lam(x, body), power(k), D)


def interpret_figure3(ctx: Sequence[str], t: Term, signature: Signature) -> MorphismRep:
    """Compositional interpretation built by morphism algebra only."""
    ctx = list(ctx)
    _check_context(ctx, t)
    return _itp(ctx, t, ModelConstants(signature))


def _itp(ctx: list[str], t: Term, m: ModelConstants) -> MorphismRep:
    k = len(ctx)
    src = power(k)
    match t:
        case Var(name):
            # the innermost binder wins when a name is shadowed
            i = len(ctx) - ctx[::-1].index(name)
            return morphism_proj(src, i)
        case App(f, a):
            return compose_all(
                morphism_pair(_itp(ctx, f, m), _itp(ctx, a, m)),
                morphism_product(m.app, morphism_id(D)),
                morphism_ev(D, D),
            )
        case Lam(x, body):
            f_t = morphism_compose(repack_extend(k), _itp(ctx + [x], body, m))
            return morphism_compose(morphism_curry(f_t), m.lam)
        case Cons(c):
            return morphism_compose(morphism_terminal(src), m.fc(c))
        case Case(theta, u):
            return morphism_compose(
                morphism_pair(_itp_binding(ctx, theta, m), _itp(ctx, u, m)), m.case
            )
    raise TypeError(t)


def _itp_binding(ctx: list[str], theta: Binding, m: ModelConstants) -> MorphismRep:
    src = power(len(ctx))
    parts = []
    for c in m.signature:
        u = theta.get(c)
        if u is None:
            parts.append(morphism_compose(morphism_terminal(src), m.fail))
        else:
            parts.append(_itp(ctx, u, m))
    return morphism_pair(*parts)


# -- the commuting diagrams ---------------------------------------------------------


class Diagram(enum.Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    D5 = "D5"
    D6 = "D6"


def diagram_sides(d: Diagram, signature: Signature, i: int = 1) -> list[tuple[MorphismRep, MorphismRep]]:
    """The pairs of composites that must be equal for diagram `d`.

    D1 yields two equations (lam;app = id and app;lam = id); D2 is the
    equation for constructor slot `i`.
    """
    m = ModelConstants(signature)
    n = m.n
    p = pdt(n)
    dd = Exp(D, D)
    match d:
        case Diagram.D1:
            return [
                (morphism_compose(m.lam, m.app), morphism_id(dd)),
                (morphism_compose(m.app, m.lam), morphism_id(D)),
            ]
        case Diagram.D2:
            c = signature.constructors[i - 1]
            rhs = compose_all(
                diagonal_unit(p),
                morphism_product(morphism_id(p), m.fc(c)),
                m.case,
            )
            return [(rhs, morphism_proj(p, i))]
        case Diagram.D3:
            lhs = compose_all(
                morphism_product(m.case, morphism_id(D)),
                morphism_product(m.app, morphism_id(D)),
                morphism_ev(D, D),
            )
            rhs = compose_all(
                reassociate(p, D, D),
                morphism_product(morphism_id(p), morphism_product(m.app, morphism_id(D))),
                morphism_product(morphism_id(p), morphism_ev(D, D)),
                m.case,
            )
            return [(lhs, rhs)]
        case Diagram.D4:
            lhs = morphism_compose(m.abstr_case(), m.lam)
            rhs = morphism_compose(morphism_product(morphism_id(p), m.lam), m.case)
            return [(lhs, rhs)]
        case Diagram.D5:
            lhs = morphism_compose(morphism_product(m.comp(), morphism_id(D)), m.case)
            rhs = compose_all(
                reassociate(p, p, D),
                morphism_product(morphism_id(p), m.case),
                m.case,
            )
            return [(lhs, rhs)]
        case Diagram.D6:
            lhs = morphism_compose(morphism_proj(prod(p, ONE), 2), m.fail)
            rhs = morphism_compose(morphism_product(morphism_id(p), m.fail), m.case)
            return [(lhs, rhs)]
    raise ValueError(d)


def check_diagram(d: Diagram | str, signature: Signature, fuel: int = 2000, i: int | None = None):
    """Decide commutation of a diagram by bounded convertibility of its composites.

    For D2 every constructor slot is checked unless `i` is given.
    """
    from .equivalence import convertible
    from .verdict import combine

    d = Diagram(d) if isinstance(d, str) else d
    slots = [i] if i is not None else (range(1, len(signature) + 1) if d is Diagram.D2 else [1])
    verdicts = []
    for slot in slots:
        for lhs, rhs in diagram_sides(d, signature, slot):
            if (lhs.source, lhs.target) != (rhs.source, rhs.target):
                raise TagMismatch(f"{d.value}: sides {lhs} and {rhs} differ")
            verdicts.append(convertible(lhs.rep, rhs.rep, fuel=fuel))
    return combine(verdicts, note=d.value)
