import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_near_bipartite
from roundbip.bounds import CaseTag, analyze, compute_alpha, theoretical_bound
from roundbip.errors import InvalidRho, InvalidSolution, NotBipartizing, UnnormalizedDual
from roundbip.graph import Graph, complete_graph, cycle_graph, path_graph
from roundbip.relax import DualSolution, normalize, recover_dual, sample_qw
from roundbip.tightgen import lifted_dual_weight

fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=24)


def test_bound_examples():
    assert theoretical_bound(2, 0) == Fraction(3, 2)
    assert theoretical_bound(3, 0) == Fraction(4, 3)
    assert theoretical_bound(2, Fraction(1, 2)) == Fraction(7, 4)
    assert theoretical_bound(None, Fraction(1, 2)) == Fraction(3, 2)
    with pytest.raises(InvalidRho):
        theoretical_bound(1, 0)
    with pytest.raises(InvalidRho):
        theoretical_bound(0, 0)


@given(st.integers(2, 30))
def test_interpolation_endpoints(rho):
    assert theoretical_bound(rho, 0) == 1 + Fraction(1, rho)
    assert theoretical_bound(rho, 1) == 2
    assert theoretical_bound(None, 0) == 1 and theoretical_bound(None, 1) == 2


@given(st.integers(2, 20), fractions01, fractions01)
def test_monotone(rho, a, b):
    lo, hi = min(a, b), max(a, b)
    assert theoretical_bound(rho, lo) <= theoretical_bound(rho, hi)
    assert theoretical_bound(rho + 1, lo) <= theoretical_bound(rho, lo)


def test_alpha():
    g = normalize(complete_graph(4))
    y = DualSolution((Fraction(1, 6),) * 6)
    assert compute_alpha(y, {0, 2}, g) == Fraction(1, 6)
    assert compute_alpha(y, {0}, g) == 0
    assert compute_alpha(y, set(g.vertices), g) == 1
    with pytest.raises(UnnormalizedDual):
        compute_alpha(DualSolution((Fraction(1),) * 6), {0}, g)


def test_analyze_c5_basic():
    g = cycle_graph(5, [Fraction(2, 3)] + [Fraction(1, 3)] * 4)
    r = analyze(g, {0})
    assert (r.rho, r.alpha, r.bound, r.achieved) == (3, 0, Fraction(4, 3), Fraction(4, 3))
    assert r.case_tag is CaseTag.SINGLE_VERTEX
    assert len(r.family.covers) == 3


def test_analyze_is_scale_free():
    g = cycle_graph(5, [6, 3, 3, 3, 3])
    y = DualSolution((3, 0, 3, 0, 3))
    r = analyze(g, {0}, y)
    assert r.bound == r.achieved == Fraction(4, 3)
    assert r.dual.total == 1


def test_analyze_rejects_loose_dual():
    with pytest.raises(InvalidSolution):
        analyze(cycle_graph(5), {0}, DualSolution((Fraction(1, 5),) * 5))


def test_analyze_c9_lifted():
    t = lifted_dual_weight(cycle_graph(9), {0, 3})
    r = analyze(t.graph, t.s, t.dual)
    assert r.rho == 2 and r.bound == Fraction(3, 2)
    assert r.case_tag is CaseTag.INDEPENDENT_SET


def test_analyze_k2():
    r = analyze(path_graph(2), set())
    assert r.case_tag is CaseTag.GENERAL_BIPARTITE
    assert r.bound == 1 and r.achieved == 1


def test_analyze_outside_polytope_marks_bound_inapplicable():
    g = path_graph(3, [1, 5, 1])
    r = analyze(g, set())
    assert r.dual is None and r.alpha is None and r.bound is None
    assert r.achieved == 1


def test_analyze_propagates_not_bipartizing():
    with pytest.raises(NotBipartizing):
        analyze(cycle_graph(7), set())


def test_general_odd_tag():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 1)])
    r = analyze(g, {0, 1, 2})
    assert r.case_tag is CaseTag.GENERAL_ODD


def test_random_polytope_points_stay_within_bound():
    rng = random.Random(3)
    for i in range(60):
        g, s = random_near_bipartite(rng, max_n=10)
        w = sample_qw(g, i)
        r = analyze(w, s)
        assert r.alpha == 0
        assert r.bound == 1 + Fraction(1, r.rho)
        assert r.achieved <= r.bound
        assert r.within_bound


def test_random_dependent_sets_within_bound():
    rng = random.Random(8)
    checked = 0
    for i in range(200):
        g = Graph.from_edges(
            8, [(u, v) for u in range(8) for v in range(u + 1, 8) if rng.random() < 0.4]
        )
        if g.m == 0:
            continue
        s = frozenset(rng.sample(range(8), 3))
        if g.is_independent(s):
            continue
        w = sample_qw(g, i)
        try:
            r = analyze(w, s, recover_dual(w))
        except NotBipartizing:
            continue
        assert r.achieved <= r.bound
        checked += 1
    assert checked > 20
