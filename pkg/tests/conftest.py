import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from roundbip.graph import Graph, contract, is_bipartite

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_weights(rng: random.Random, n: int, zero_ok: bool = True) -> list[Fraction]:
    lo = 0 if zero_ok else 1
    return [Fraction(rng.randint(lo, 12), rng.randint(1, 6)) for _ in range(n)]


def random_graph(rng: random.Random, n: int, p: float = 0.35, weights=None) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if weights is None:
        weights = random_weights(rng, n)
    return Graph.from_edges(n, edges, weights)


def random_near_bipartite(rng: random.Random, max_n: int = 11, singleton: bool = False):
    """``(g, s)`` with ``s`` independent, ``g - s`` bipartite and ``g / s`` not bipartite."""
    while True:
        k = 1 if singleton else rng.randint(1, 3)
        rest = rng.randint(3, max_n - k)
        side = [rng.randint(0, 1) for _ in range(rest)]
        edges = [
            (u, v)
            for u in range(rest)
            for v in range(u + 1, rest)
            if side[u] != side[v] and rng.random() < 0.45
        ]
        hubs = range(rest, rest + k)
        for h in hubs:
            for v in range(rest):
                if rng.random() < 0.35:
                    edges.append((v, h))
        g = Graph.from_edges(rest + k, edges)
        s = frozenset(hubs)
        if g.m and is_bipartite(contract(g, s).graph) is None:
            return g, s


def _edge_list(draw, n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return draw(st.lists(st.sampled_from(pairs), max_size=2 * n, unique=True)) if pairs else []


@st.composite
def graphs(draw, min_n=1, max_n=9, multi=False):
    n = draw(st.integers(min_n, max_n))
    edges = _edge_list(draw, n)
    if multi and edges:
        edges += draw(st.lists(st.sampled_from(edges), max_size=3))
    weights = draw(
        st.lists(
            st.fractions(min_value=0, max_value=10, max_denominator=7), min_size=n, max_size=n
        )
    )
    return Graph.from_edges(n, edges, weights)


# acceptance reporting: one PASS/FAIL line per numbered criterion

_acceptance: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = next((m for m in getattr(report, "acceptance_marks", [])), None)
    if marker is None:
        return
    number, title = marker
    prev = _acceptance.get(number, (title, True))[1]
    _acceptance[number] = (title, prev and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.acceptance_marks = [tuple(m.args) for m in item.iter_markers("acceptance")]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok = _acceptance[number]
        terminalreporter.write_line(f"AC{number} {title}: {'PASS' if ok else 'FAIL'}")
