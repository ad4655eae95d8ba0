from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from roundbip.errors import DegenerateWeights, InvalidSolution, NoEdges
from roundbip.flow import FlowNetwork, common_scale
from roundbip.graph import Graph, complete_graph, cycle_graph, path_graph
from roundbip.oracle import brute_lp
from roundbip.relax import (
    HALF,
    HalfIntegralSolution,
    normalize,
    nt_decompose,
    qw_point,
    recover_dual,
    sample_qw,
    solve_lp,
)


def test_flow_small_network():
    net = FlowNetwork(4)
    net.add_arc(0, 1, 3)
    net.add_arc(0, 2, 2)
    a = net.add_arc(1, 3, 2)
    net.add_arc(2, 3, 3)
    net.add_arc(1, 2, 1)
    assert net.max_flow(0, 3) == 5
    assert net.flow(a) == 2
    assert common_scale([Fraction(1, 4), Fraction(1, 6)]) == 12


def test_c5_all_half():
    x = solve_lp(cycle_graph(5))
    assert x.values == (HALF,) * 5 and x.objective == Fraction(5, 2)


def test_path_with_light_middle():
    x = solve_lp(path_graph(3, [1, 0, 1]))
    assert x.values == (0, 1, 0) and x.objective == 0


def test_nt_decomposition():
    g = path_graph(3, [1, 0, 1])
    nt = nt_decompose(g, solve_lp(g))
    assert nt.zero == {0, 2} and nt.one == {1} and not nt.half
    with pytest.raises(InvalidSolution):
        nt_decompose(g, HalfIntegralSolution((Fraction(0),) * 3, Fraction(0)))
    with pytest.raises(InvalidSolution):
        nt_decompose(g, HalfIntegralSolution((Fraction(1, 3),) * 3, Fraction(0)))


def test_normalize():
    g = normalize(cycle_graph(5, [2, 1, 1, 1, 1]))
    assert g.weights == (Fraction(2, 3),) + (Fraction(1, 3),) * 4
    with pytest.raises(DegenerateWeights):
        normalize(cycle_graph(3, [0, 0, 0]))


def test_recover_dual_c5_uniform():
    y = recover_dual(normalize(cycle_graph(5)))
    assert y.values == (Fraction(1, 5),) * 5


def test_recover_dual_fails_off_polytope():
    assert recover_dual(path_graph(3, [1, 5, 1])) is None


def test_sample_qw_reproducible():
    assert sample_qw(cycle_graph(7), 3) == sample_qw(cycle_graph(7), 3)
    assert sample_qw(cycle_graph(7), 3).total_weight == 2
    with pytest.raises(NoEdges):
        sample_qw(Graph.from_edges(3, []), 0)


def test_qw_point_mapping():
    g = qw_point(complete_graph(3), {0: Fraction(1)})
    assert g.weights == (1, 1, 0)


@given(graphs(max_n=8, multi=True))
def test_lp_exact_against_enumeration(g):
    x = solve_lp(g)
    assert x.is_feasible(g)
    assert all(v in (0, HALF, 1) for v in x.values)
    assert x.objective == brute_lp(g)


@given(graphs(min_n=2, max_n=8, multi=True), st.integers(0, 10_000))
def test_polytope_points_have_tight_duals(g, seed):
    if g.m == 0:
        return
    w = sample_qw(g, seed)
    y = recover_dual(w)
    assert y is not None and y.is_tight(w) and y.total == 1
    assert solve_lp(w).values == (HALF,) * g.n
