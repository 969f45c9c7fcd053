"""Seeded random generators for terms, defined terms and convertible pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .completion import defined, is_hereditarily_defined
from .rewrite import ALL, one_step_reducts
from .terms import App, Binding, Case, Cons, Lam, Signature, Term, Var


@dataclass(frozen=True)
class GenConfig:
    """Shape of generated terms.

    `max_size` bounds the node count; `binders` is the pool of bound names
    (small on purpose, so that shadowing and capture get exercised);
    `redex_bias` is the chance that a composite node is built as a redex.
    """

    max_size: int = 20
    signature: Signature = Signature(("C0", "C1", "S"))
    free: tuple[str, ...] = ("x", "y")
    binders: tuple[str, ...] = ("x", "y", "z")
    redex_bias: float = 0.3
    case_weight: float = 1.0
    min_size: int = 1


class TermGenerator:
    def __init__(self, config: GenConfig, rng: random.Random | int = 0):
        self.config = config
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)

    # leaves and splits

    def leaf(self, scope: list[str]) -> Term:
        rng = self.rng
        if scope and rng.random() < 0.6:
            return Var(rng.choice(scope))
        return Cons(rng.choice(self.config.signature.constructors))

    def _split(self, n: int, parts: int) -> list[int]:
        """Random composition of `n` into `parts` positive sizes."""
        if parts == 1:
            return [n]
        cuts = sorted(self.rng.sample(range(1, n), parts - 1))
        return [b - a for a, b in zip([0] + cuts, cuts + [n])]

    # composite nodes

    def term(self, n: int, scope: list[str]) -> Term:
        rng = self.rng
        if n <= 1:
            return self.leaf(scope)
        if rng.random() < self.config.redex_bias:
            t = self.redex(n, scope)
            if t is not None:
                return t
        kinds = ["lam"]
        weights = [1.0]
        if n >= 3:
            kinds.append("app")
            weights.append(1.5)
        if n >= 2:
            kinds.append("case")
            weights.append(self.config.case_weight)
        kind = rng.choices(kinds, weights)[0]
        if kind == "lam":
            x = rng.choice(self.config.binders)
            return Lam(x, self.term(n - 1, scope + [x]))
        if kind == "app":
            a, b = self._split(n - 1, 2)
            return App(self.term(a, scope), self.term(b, scope))
        return self.case(n, scope)

    def binding(self, budget: int, scope: list[str], k: int | None = None) -> tuple[Binding, int]:
        """A binding using at most `budget` nodes; returns it with the nodes used."""
        sig = self.config.signature.constructors
        if k is None:
            k = self.rng.randint(0, min(len(sig), budget // 2))
        k = min(k, budget // 2)
        if k == 0:
            return Binding(()), 0
        names = self.rng.sample(sig, k)
        sizes = self._split(budget - k, k) if budget - k >= k else [1] * k
        branches = tuple((c, self.term(s, scope)) for c, s in zip(names, sizes))
        return Binding(branches), k + sum(sizes)

    def case(self, n: int, scope: list[str]) -> Term:
        # 1 for the node, at least 1 for the scrutinee
        room = n - 2
        share = self.rng.randint(0, room) if room > 0 else 0
        theta, used = self.binding(share, scope)
        return Case(theta, self.term(max(1, n - 1 - used), scope))

    def redex(self, n: int, scope: list[str]) -> Term | None:
        rng = self.rng
        shape = rng.choice(["al", "co", "ca", "cl", "cc", "la"])
        if shape == "al" and n >= 4:
            x = rng.choice(self.config.binders)
            a, b = self._split(n - 2, 2)
            return App(Lam(x, self.term(a, scope + [x])), self.term(b, scope))
        if shape == "la" and n >= 4:
            x = rng.choice(self.config.binders)
            f = self.term(n - 3, [v for v in scope if v != x])
            if x in f.fv:
                return None
            return Lam(x, App(f, Var(x)))
        if shape == "co" and n >= 4:
            c = rng.choice(self.config.signature.constructors)
            rest, used = self.binding(n - 4, scope)
            branches = tuple((d, u) for d, u in rest if d != c)
            body = self.term(max(1, n - 3 - used), scope)
            return Case(Binding(((c, body),) + branches), Cons(c))
        if shape in ("ca", "cl", "cc") and n >= 4:
            theta, used = self.binding(rng.randint(0, n - 4), scope)
            m = max(2, n - 1 - used)
            if shape == "ca":
                m = max(3, m)
                a, b = self._split(m - 1, 2)
                scrut = App(self.term(a, scope), self.term(b, scope))
            elif shape == "cl":
                x = rng.choice(self.config.binders)
                scrut = Lam(x, self.term(m - 1, scope + [x]))
            else:
                scrut = self.case(m, scope)
            return Case(theta, scrut)
        return None

    # entry points

    def sample(self, scope: list[str] | None = None) -> Term:
        cfg = self.config
        scope = list(cfg.free) if scope is None else scope
        n = self.rng.randint(cfg.min_size, cfg.max_size)
        return self.term(n, scope)

    def many(self, count: int, scope: list[str] | None = None) -> list[Term]:
        return [self.sample(scope) for _ in range(count)]

    def defined_term(self, scope: list[str] | None = None, attempts: int = 1000) -> Term:
        """Rejection-sample a term without match failures."""
        for _ in range(attempts):
            t = self.sample(scope)
            if defined(t):
                return t
        raise RuntimeError("could not sample a defined term")

    def hereditarily_defined(
        self, scope: list[str] | None = None, fuel: int = 300, attempts: int = 10_000
    ) -> Term:
        """A term whose whole reduct closure is finite, enumerated within `fuel`, and defined."""
        for _ in range(attempts):
            t = self.sample(scope)
            if defined(t) and any(True for _ in one_step_reducts(t)):
                if is_hereditarily_defined(t, fuel).proved:
                    return t
        raise RuntimeError("could not sample a hereditarily defined term")


def random_walk(t: Term, rng: random.Random, steps: int, rules: frozenset = ALL) -> Term:
    """Follow up to `steps` uniformly chosen one-step reductions."""
    for _ in range(steps):
        reducts = list(one_step_reducts(t, rules))
        if not reducts:
            break
        t = rng.choice(reducts)[2]
    return t


def forward_pair(t: Term, rng: random.Random, max_steps: int = 4) -> tuple[Term, Term]:
    """Two reducts of a common ancestor, hence convertible."""
    return (
        random_walk(t, rng, rng.randint(0, max_steps)),
        random_walk(t, rng, rng.randint(1, max_steps)),
    )


def random_context(rng: random.Random, names: tuple[str, ...] = ("x", "y"), max_len: int = 2) -> list[str]:
    k = rng.randint(0, min(max_len, len(names)))
    return sorted(rng.sample(names, k))
