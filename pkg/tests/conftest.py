from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from opident import Alphabet, LabelledQuiver, Polynomial

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


# --- shared objects ----------------------------------------------------------

@pytest.fixture
def X():
    return Alphabet(("a", "ai", "y"))


@pytest.fixture
def two_vertex(X):
    return LabelledQuiver.build(X, ["v", "w"], [("v", "w", "a"), ("w", "v", "ai"), ("w", "v", "y")])


@pytest.fixture
def three_vertex(X):
    return LabelledQuiver.build(
        X, ["v", "w", "u"],
        [("v", "w", "a"), ("w", "v", "ai"), ("w", "v", "y"), ("u", "w", "a")],
    )


def P(alphabet, terms: dict) -> Polynomial:
    """Polynomial from {"a ai a": 1, "a": -1}; the empty string is the word 1."""
    return Polynomial(alphabet, {alphabet.word(k.split()): Fraction(v) for k, v in terms.items()})


@pytest.fixture
def g(X):
    return P(X, {"a ai a": 1, "a": -1})


@pytest.fixture
def f_inner(X):
    return P(X, {"a ai a": 1, "a y a": 1, "a y a ai a": -1, "a": -1})


# --- hypothesis strategies -----------------------------------------------------

small_fractions = st.builds(
    Fraction,
    st.integers(-6, 6),
    st.integers(1, 4),
)
nonzero_fractions = small_fractions.filter(bool)


def words(n_letters: int, max_len: int = 3, min_len: int = 0):
    return st.lists(st.integers(0, n_letters - 1), min_size=min_len, max_size=max_len).map(tuple)


def polynomials(alphabet: Alphabet, max_terms: int = 4, max_len: int = 3, min_terms: int = 0):
    return st.dictionaries(
        words(len(alphabet), max_len), nonzero_fractions, min_size=min_terms, max_size=max_terms,
    ).map(lambda d: Polynomial(alphabet, d))


@st.composite
def quivers(draw, alphabet: Alphabet, max_vertices: int = 4, max_edges: int = 8):
    n = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, len(alphabet) - 1)),
        max_size=max_edges,
    ))
    return LabelledQuiver(alphabet, tuple(f"q{i}" for i in range(n)), tuple(edges))


# --- one pass/fail line per acceptance criterion ----------------------------

_criteria: dict[str, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        crit = getattr(report, "criterion", None)
        if crit:
            _criteria[crit].append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda c: int(c[2:])):
        results = _criteria[name]
        status = "PASS" if all(results) else "FAIL"
        tr.write_line(f"{name}: {status} ({sum(results)}/{len(results)} checks)")
