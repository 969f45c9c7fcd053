"""Terms of the lambda calculus with constructors.

Terms are immutable.  Every node caches its hash, its size and its set of
free variables at construction time, so structural queries are O(1) and
substitution can prune untouched subterms without re-traversing them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


class SignatureError(ValueError):
    """A constructor name that is not declared in the signature."""


@dataclass(frozen=True)
class Signature:
    """Ordered, finite set of constructor names c1 ... cn."""

    constructors: tuple[str, ...]

    def __post_init__(self) -> None:
        cs = tuple(self.constructors)
        object.__setattr__(self, "constructors", cs)
        if not cs:
            raise SignatureError("a signature needs at least one constructor")
        if len(set(cs)) != len(cs):
            raise SignatureError(f"duplicate constructor in signature {cs}")

    @property
    def first(self) -> str:
        return self.constructors[0]

    def index(self, c: str) -> int:
        """1-based slot of `c`."""
        try:
            return self.constructors.index(c) + 1
        except ValueError:
            raise SignatureError(f"undeclared constructor {c!r}") from None

    def __contains__(self, c: object) -> bool:
        return c in self.constructors

    def __iter__(self) -> Iterator[str]:
        return iter(self.constructors)

    def __len__(self) -> int:
        return len(self.constructors)

    def extend(self, names: Iterable[str]) -> "Signature":
        extra = [c for c in dict.fromkeys(names) if c not in self.constructors]
        return Signature(self.constructors + tuple(extra)) if extra else self


# -- term nodes ---------------------------------------------------------------


@dataclass(frozen=True, slots=True, eq=True)
class Var:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("V", self.name)))
        object.__setattr__(self, "fv", frozenset((self.name,)))
        object.__setattr__(self, "size", 1)

    def __hash__(self) -> int:
        return self._hash


_NO_FV: frozenset = frozenset()


@dataclass(frozen=True, slots=True, eq=True)
class Cons:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("C", self.name)))
        object.__setattr__(self, "fv", _NO_FV)
        object.__setattr__(self, "size", 1)

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True, slots=True, eq=True)
class App:
    fun: "Term"
    arg: "Term"
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("A", self.fun._hash, self.arg._hash)))
        object.__setattr__(self, "fv", self.fun.fv | self.arg.fv)
        object.__setattr__(self, "size", 1 + self.fun.size + self.arg.size)

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True, slots=True, eq=True)
class Lam:
    binder: str
    body: "Term"
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("L", self.binder, self.body._hash)))
        object.__setattr__(self, "fv", self.body.fv - {self.binder})
        object.__setattr__(self, "size", 1 + self.body.size)

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True, slots=True, eq=True)
class Binding:
    """A case-binding: an ordered partial map from constructors to terms.

    Branch order is kept for printing; comparisons up to alpha treat the
    binding as a map.
    """

    branches: tuple[tuple[str, "Term"], ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        branches = tuple((c, u) for c, u in self.branches)
        object.__setattr__(self, "branches", branches)
        names = [c for c, _ in branches]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate constructor in case-binding: {names}")
        object.__setattr__(self, "_hash", hash(tuple((c, u._hash) for c, u in branches)))
        object.__setattr__(self, "fv", _NO_FV.union(*(u.fv for _, u in branches)))
        object.__setattr__(self, "size", sum(u.size for _, u in branches))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def of(cls, mapping: Mapping[str, "Term"] | Iterable[tuple[str, "Term"]]) -> "Binding":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(items))

    @property
    def dom(self) -> frozenset[str]:
        return frozenset(c for c, _ in self.branches)

    def get(self, c: str) -> "Term | None":
        for name, u in self.branches:
            if name == c:
                return u
        return None

    def replace(self, c: str, u: "Term") -> "Binding":
        return Binding(tuple((name, u if name == c else v) for name, v in self.branches))

    def map(self, f) -> "Binding":
        return Binding(tuple((c, f(u)) for c, u in self.branches))

    def __iter__(self) -> Iterator[tuple[str, "Term"]]:
        return iter(self.branches)

    def __len__(self) -> int:
        return len(self.branches)


@dataclass(frozen=True, slots=True, eq=True)
class Case:
    binding: Binding
    scrutinee: "Term"
    _hash: int = field(init=False, repr=False, compare=False)
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        if not isinstance(self.binding, Binding):
            object.__setattr__(self, "binding", Binding.of(self.binding))
        object.__setattr__(self, "_hash", hash(("K", self.binding._hash, self.scrutinee._hash)))
        object.__setattr__(self, "fv", self.binding.fv | self.scrutinee.fv)
        object.__setattr__(
            self, "size", 1 + self.scrutinee.size + self.binding.size + len(self.binding)
        )

    def __hash__(self) -> int:
        return self._hash


Term = Union[Var, Cons, App, Lam, Case]

FAIL_BINDING = Binding(())


# -- small constructors -------------------------------------------------------


def apps(head: Term, *args: Term) -> Term:
    """Left-nested application ``head a1 ... ak``."""
    for a in args:
        head = App(head, a)
    return head


def lams(binders: Iterable[str], body: Term) -> Term:
    """``λx1 ... xk. body``."""
    for x in reversed(list(binders)):
        body = Lam(x, body)
    return body


def case(branches: Mapping[str, Term] | Iterable[tuple[str, Term]], scrutinee: Term) -> Case:
    return Case(Binding.of(branches), scrutinee)


def failure(signature: Signature) -> Case:
    """The canonical match failure ``{} . c1``."""
    return Case(FAIL_BINDING, Cons(signature.first))


# -- free variables, constructors, sizes -------------------------------------


def free_vars(t: Term) -> frozenset[str]:
    return t.fv


def constructors_of(t: Term) -> list[str]:
    """Constructor names in first-occurrence (textual) order."""
    seen: dict[str, None] = {}

    def walk(s: Term) -> None:
        match s:
            case Cons(name):
                seen.setdefault(name)
            case App(f, a):
                walk(f)
                walk(a)
            case Lam(_, b):
                walk(b)
            case Case(binding, u):
                for c, v in binding:
                    seen.setdefault(c)
                    walk(v)
                walk(u)

    walk(t)
    return list(seen)


def check_signature(t: Term, signature: Signature) -> None:
    for c in constructors_of(t):
        if c not in signature:
            raise SignatureError(f"undeclared constructor {c!r}")


def names_of(t: Term) -> set[str]:
    """Every variable name occurring in `t`, bound or free."""
    out: set[str] = set()

    def walk(s: Term) -> None:
        match s:
            case Var(name):
                out.add(name)
            case App(f, a):
                walk(f)
                walk(a)
            case Lam(x, b):
                out.add(x)
                walk(b)
            case Case(binding, u):
                for _, v in binding:
                    walk(v)
                walk(u)

    walk(t)
    return out


def binding_lookup(theta: Binding, c: str, signature: Signature | None = None) -> Term | None:
    """theta_c, or None when `c` is outside dom(theta)."""
    if signature is not None and c not in signature:
        raise SignatureError(f"undeclared constructor {c!r}")
    return theta.get(c)


# -- fresh names ---------------------------------------------------------------

_STEM = re.compile(r"^(.*?)[0-9']*$")


def fresh(base: str, avoid: Iterable[str] | frozenset[str]) -> str:
    """Deterministic fresh variant of `base` not in `avoid`."""
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    if base not in avoid:
        return base
    stem = _STEM.match(base).group(1) or "v"
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


# -- substitution ---------------------------------------------------------------


def substitute(t: Term, x: str, u: Term) -> Term:
    """Capture-avoiding ``t{x := u}``."""
    return substitute_many(t, {x: u})


def substitute_many(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution."""
    m = {k: v for k, v in mapping.items() if k in t.fv}
    if not m:
        return t
    return _subst(t, m)


def _subst(t: Term, m: dict[str, Term]) -> Term:
    # invariant: every key of m is free in t
    match t:
        case Var(name):
            return m[name]
        case App(f, a):
            return App(_restrict_subst(f, m), _restrict_subst(a, m))
        case Lam(y, b):
            incoming = _NO_FV.union(*(v.fv for v in m.values()))
            if y in incoming:
                y2 = fresh(y, incoming | b.fv | m.keys())
                m = dict(m)
                m[y] = Var(y2)
                return Lam(y2, _subst(b, m))
            return Lam(y, _subst(b, m))
        case Case(binding, s):
            return Case(binding.map(lambda v: _restrict_subst(v, m)), _restrict_subst(s, m))
    return t


def _restrict_subst(t: Term, m: dict[str, Term]) -> Term:
    if not (t.fv & m.keys()):
        return t
    if len(m) == 1:
        return _subst(t, m)
    return _subst(t, {k: v for k, v in m.items() if k in t.fv})


def rename_binder(t: Lam, new: str) -> Lam:
    if new == t.binder:
        return t
    return Lam(new, substitute(t.body, t.binder, Var(new)))


# -- alpha-equivalence ---------------------------------------------------------


def alpha_key(t: Term) -> str:
    """Canonical string of `t` up to alpha; branches are sorted by constructor.

    Bound variables become de Bruijn indices, free variables keep their
    names.  Two terms are alpha-equivalent iff their keys are equal.
    """
    return _key_of(t, {}, 0)


def _key_of(t: Term, env: dict[str, int], depth: int) -> str:
    # The key of a subterm depends only on how its own free variables are
    # bound, so it is memoised on the node under that context.  Reduction
    # shares most subterms between successive terms, which makes the
    # memo pay off.
    memo = t._key
    if memo is None:
        memo = (tuple(sorted(t.fv)), {})
        object.__setattr__(t, "_key", memo)
    names, table = memo
    ctx = tuple(depth - env[v] if v in env else v for v in names)
    hit = table.get(ctx)
    if hit is not None:
        return hit
    match t:
        case Var(name):
            key = f"#{depth - env[name]};" if name in env else f"${name};"
        case Cons(name):
            key = f"!{name};"
        case App(f, a):
            key = f"@({_key_of(f, env, depth)},{_key_of(a, env, depth)})"
        case Lam(x, b):
            inner = dict(env)
            inner[x] = depth + 1
            key = f"\\({_key_of(b, inner, depth + 1)})"
        case Case(binding, sc):
            parts = [f"{c}={_key_of(v, env, depth)};"
                     for c, v in sorted(binding.branches, key=lambda cv: cv[0])]
            key = "{" + "".join(parts) + "}(" + _key_of(sc, env, depth) + ")"
        case _:
            raise TypeError(t)
    table[ctx] = key
    return key


def alpha_eq(t: Term, u: Term) -> bool:
    if t is u:
        return True
    if t.size != u.size or t.fv != u.fv:
        return False
    return alpha_key(t) == alpha_key(u)


def binding_alpha_eq(a: Binding, b: Binding) -> bool:
    return alpha_eq(Case(a, Cons("_")), Case(b, Cons("_")))


def size(t: Term) -> int:
    """Number of syntax nodes; each case branch counts one node plus its body."""
    return t.size


def subterms(t: Term) -> Iterator[tuple[tuple[str, ...], Term]]:
    """All (position, subterm) pairs in pre-order."""
    stack: list[tuple[tuple[str, ...], Term]] = [((), t)]
    while stack:
        pos, s = stack.pop()
        yield pos, s
        children: list[tuple[tuple[str, ...], Term]] = []
        match s:
            case App(f, a):
                children = [(pos + ("function",), f), (pos + ("argument",), a)]
            case Lam(_, b):
                children = [(pos + ("body",), b)]
            case Case(binding, u):
                children = [(pos + (f"branch:{c}",), v) for c, v in binding]
                children.append((pos + ("scrutinee",), u))
        stack.extend(reversed(children))
