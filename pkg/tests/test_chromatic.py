import random
from fractions import Fraction

import pytest

from roundbip.chromatic import (
    dual_z_feasible,
    fcn_single_vertex,
    fcn_upper_3colorable,
    integrality_gap,
    skip_pattern,
    verify_certificate,
)
from roundbip.coloring import Coloring
from roundbip.errors import InvalidColoring, InvalidFcn, NotNearBipartite
from roundbip.graph import Graph, complete_graph, cycle_graph
from roundbip.oracle import brute_fcn

from conftest import random_near_bipartite

# C5 plus a vertex adjacent to two cycle vertices at distance two
WHEEL_LIKE = Graph.from_edges(6, list(cycle_graph(5).edges) + [(5, 0), (5, 2)])


@pytest.mark.parametrize(
    "g, apex, value",
    [
        (cycle_graph(5), 0, Fraction(5, 2)),
        (cycle_graph(7), 3, Fraction(7, 3)),
        (cycle_graph(9), 0, Fraction(9, 4)),
        (complete_graph(3), 1, Fraction(3)),
        (WHEEL_LIKE, 0, Fraction(5, 2)),
    ],
)
def test_single_vertex_values(g, apex, value):
    cert = fcn_single_vertex(g, apex)
    assert cert.value == value == brute_fcn(g)
    assert all(verify_certificate(g, cert).values())


def test_coverage_counts():
    cert = fcn_single_vertex(cycle_graph(7), 0)
    fc = cert.primal
    assert cert.rho == 4 and len(fc.sets) == 7
    # on a bare cycle every vertex lies in exactly rho - 1 sets
    for v in range(7):
        assert sum(1 for s in fc.sets if v in s) == 3
        assert fc.coverage(v) == 1


def test_skip_pattern():
    assert skip_pattern(1, 5) == [1, 4]
    assert skip_pattern(1, 7) == [1, 4, 6]
    assert skip_pattern(5, 5) == [3, 5]


def test_not_near_bipartite():
    with pytest.raises(NotNearBipartite):
        fcn_single_vertex(cycle_graph(6), 0)
    with pytest.raises(NotNearBipartite):
        fcn_single_vertex(complete_graph(4), 0)


def test_dual_z_checks():
    c5 = cycle_graph(5)
    assert dual_z_feasible(c5, [Fraction(1, 2)] * 5)
    assert not dual_z_feasible(c5, [Fraction(2, 3)] * 5)
    assert not dual_z_feasible(c5, [Fraction(-1)] + [Fraction(0)] * 4)


def test_random_near_bipartite_matches_oracle():
    rng = random.Random(23)
    for _ in range(30):
        g, s = random_near_bipartite(rng, max_n=9, singleton=True)
        (apex,) = s
        cert = fcn_single_vertex(g, apex)
        assert cert.value == brute_fcn(g)
        assert all(verify_certificate(g, cert).values())


def test_three_coloring_c9():
    coloring = Coloring.of([{0, 3, 6}, {1, 4, 7}, {2, 5, 8}])
    up = fcn_upper_3colorable(cycle_graph(9), coloring)
    assert up.bound == 3
    assert up.bound >= brute_fcn(cycle_graph(9)) == Fraction(9, 4)
    for c in up.per_class:
        assert c.primal.is_feasible(cycle_graph(9))
        assert c.primal.objective == c.bound


def test_three_coloring_singleton_class_is_exact():
    g = cycle_graph(7)
    coloring = Coloring.of([{0}, {1, 3, 5}, {2, 4, 6}])
    up = fcn_upper_3colorable(g, coloring)
    assert up.bound == Fraction(7, 3) == brute_fcn(g)


def test_three_coloring_bipartite_contraction():
    # contracting an independent class of a non-bipartite graph never
    # removes every odd cycle, so only a bipartite input exercises this
    g = cycle_graph(6)
    coloring = Coloring.of([{0, 2}, {1, 3, 5}, {4}])
    up = fcn_upper_3colorable(g, coloring)
    flagged = [c for c in up.per_class if c.bipartite_contraction]
    assert flagged and all(c.bound == 2 for c in flagged)
    assert up.bound == 2
    for c in flagged:
        assert c.primal.is_feasible(g)


def test_three_coloring_rejects_bad_input():
    with pytest.raises(InvalidColoring):
        fcn_upper_3colorable(cycle_graph(5), Coloring.of([{0, 1}, {2, 3}, {4}]))
    with pytest.raises(InvalidColoring):
        fcn_upper_3colorable(cycle_graph(4), Coloring.of([{0, 2}, {1, 3}]))


def test_integrality_gap():
    assert integrality_gap(Fraction(5, 2)) == Fraction(6, 5)
    assert integrality_gap(2) == 1
    assert integrality_gap(3) == Fraction(4, 3)
    with pytest.raises(InvalidFcn):
        integrality_gap(1)
