import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcc.terms import App, Binding, Case, Cons, Lam, Signature, Var

sys.setrecursionlimit(10_000)

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SIG = Signature(("C0", "C1", "S"))
VARS = ("x", "y", "z")


def bindings(children, sig=SIG):
    return st.lists(
        st.tuples(st.sampled_from(sig.constructors), children),
        max_size=len(sig),
        unique_by=lambda p: p[0],
    ).map(lambda bs: Binding(tuple(bs)))


def term_strategy(max_leaves=10, sig=SIG, names=VARS):
    leaves = st.one_of(
        st.sampled_from(names).map(Var),
        st.sampled_from(sig.constructors).map(Cons),
    )

    def extend(children):
        return st.one_of(
            st.builds(App, children, children),
            st.builds(Lam, st.sampled_from(names), children),
            st.builds(Case, bindings(children, sig), children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


terms = term_strategy()
small_terms = term_strategy(max_leaves=6)


@pytest.fixture
def sig():
    return SIG


# acceptance criteria report one line each, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
