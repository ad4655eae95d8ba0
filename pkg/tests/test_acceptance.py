"""The ten acceptance criteria, each checked with exact rational arithmetic."""

import json
import random
from fractions import Fraction

import pytest

from conftest import random_graph, random_near_bipartite
from roundbip.bipartize import edge_separate_covers, layer_decomposition
from roundbip.bounds import analyze, theoretical_bound
from roundbip.chromatic import fcn_single_vertex, integrality_gap, verify_certificate
from roundbip.cli import main
from roundbip.coloring import Coloring, build_aux, coloring_pipeline, iter_rotations
from roundbip.graph import Graph, boundary_and_inside, complete_graph, contract, cycle_graph
from roundbip.oracle import brute_fcn, brute_lp, brute_opt_vc
from roundbip.relax import DualSolution, normalize, nt_decompose, recover_dual, sample_qw, solve_lp
from roundbip.tightgen import basic_weight, gen_alpha_bipartite, gen_alpha_rho, lifted_dual_weight

HALF = Fraction(1, 2)


def corpus():
    rng = random.Random(20240601)
    return [random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.35, 0.5])) for _ in range(200)]


CORPUS = corpus()


@pytest.mark.acceptance(1, "half-integrality and LP exactness")
def test_ac1_lp_matches_enumeration():
    for g in CORPUS:
        x = solve_lp(g)
        assert all(v in (0, HALF, 1) for v in x.values)
        assert x.is_feasible(g)
        assert x.objective == brute_lp(g)


@pytest.mark.acceptance(2, "NT identity")
def test_ac2_nt_identity():
    for g in CORPUS:
        nt = nt_decompose(g, solve_lp(g))
        half_opt = brute_opt_vc(nt.half_subgraph.graph)[1]
        assert half_opt == brute_opt_vc(g)[1] - g.weight(nt.one)


QW_GRAPHS = {
    "C5": cycle_graph(5),
    "C7": cycle_graph(7),
    "K4": complete_graph(4),
    "C6": cycle_graph(6),
    "petersen": Graph.from_edges(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)],
    ),
    "bowtie": Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]),
}


@pytest.mark.acceptance(3, "Q^W characterization")
@pytest.mark.parametrize("name", sorted(QW_GRAPHS))
def test_ac3_qw_characterization(name):
    g = QW_GRAPHS[name]
    for seed in range(200):
        w = sample_qw(g, seed)
        y = recover_dual(w)
        assert y is not None and y.is_tight(w) and y.total == 1
        assert brute_lp(w) == 1
    rng = random.Random(name)
    outside = 0
    for seed in range(50):
        w = list(sample_qw(g, 1000 + seed).weights)
        v = rng.choice([u for u in g.vertices if g.neighbors(u)])
        w[v] = sum((w[u] for u in g.neighbors(v)), Fraction(0)) + Fraction(rng.randint(1, 9), rng.randint(1, 9))
        h = g.with_weights(w)
        assert brute_lp(h) < h.total_weight / 2
        assert recover_dual(h) is None
        outside += 1
    assert outside == 50


@pytest.mark.acceptance(4, "single-vertex bound and tightness")
@pytest.mark.parametrize("rho", [2, 3, 4, 5])
def test_ac4_single_vertex(rho):
    g = cycle_graph(2 * rho - 1)
    t = basic_weight(g, 0, list(g.vertices))
    r = analyze(t.graph, {0}, t.dual)
    assert r.rho == rho
    assert r.achieved == r.bound == 1 + Fraction(1, rho)
    for seed in range(100):
        w = sample_qw(g, seed)
        r = analyze(w, {0})
        assert r.bound == 1 + Fraction(1, rho)
        assert r.achieved <= r.bound


@pytest.mark.acceptance(5, "independent-set bound")
def test_ac5_independent_set():
    t = lifted_dual_weight(cycle_graph(9), {0, 3})
    r = analyze(t.graph, t.s, t.dual)
    assert r.rho == 2
    assert r.achieved == r.bound == Fraction(3, 2)


ALPHAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


@pytest.mark.acceptance(6, "interpolation tightness grid")
def test_ac6_interpolation_grid():
    for alpha in ALPHAS:
        for rho in (2, 3, 4):
            t = gen_alpha_rho(alpha, rho)
            r = analyze(t.graph, t.s, t.dual)
            expected = (1 + Fraction(1, rho)) * (1 - alpha) + 2 * alpha
            assert r.alpha == alpha
            assert r.achieved == r.bound == expected
        t = gen_alpha_bipartite(alpha, 5)
        r = analyze(t.graph, t.s, t.dual)
        assert r.rho is None
        assert r.achieved == r.bound == 1 + alpha
    assert analyze(*_triple(gen_alpha_rho(HALF, 2))).achieved == Fraction(7, 4)


def _triple(t):
    return t.graph, t.s, t.dual


def _aux_tight(aux):
    g, y = aux.graph, aux.dual
    return y.is_tight(g) and y.total == 1


@pytest.mark.acceptance(7, "coloring application")
@pytest.mark.parametrize("k", [4, 5, 6])
def test_ac7_coloring(k):
    g = complete_graph(k)
    coloring = Coloring.of([{v} for v in g.vertices])
    gn = normalize(g)
    uniform = DualSolution(tuple([Fraction(1, g.m)] * g.m))
    for dual in (uniform, recover_dual(gn)):
        aux = build_aux(gn, dual, coloring)
        assert _aux_tight(aux)
        steps = list(iter_rotations(aux))
        assert len(steps) <= len(aux.inner_edges()) + 1
        assert all(_aux_tight(step) for step in steps)
        final = steps[-1] if steps else aux
        assert final.alpha * final.dual.values[final.heavy_edge] == 0
        assert final.alpha <= 1 - Fraction(4, k)
        assert theoretical_bound(2, final.alpha) <= 2 - Fraction(2, k)
    result = coloring_pipeline(g)
    assert result.alpha <= 1 - Fraction(4, k)
    assert result.bound <= 2 - Fraction(2, k)


@pytest.mark.acceptance(8, "fractional chromatic certificates")
@pytest.mark.parametrize("rho", [2, 3, 4, 5])
def test_ac8_fcn(rho):
    g = cycle_graph(2 * rho - 1)
    cert = fcn_single_vertex(g, 0)
    value = 2 + Fraction(1, rho - 1)
    assert cert.value == value
    assert cert.primal.objective == sum(cert.dual_z) == value
    assert all(verify_certificate(g, cert).values())
    assert brute_fcn(g) == value
    assert integrality_gap(cert.value) == 1 + Fraction(1, 2 * rho - 1)


@pytest.mark.acceptance(9, "edge-separate machinery")
def test_ac9_edge_separate():
    rng = random.Random(99)
    for i in range(100):
        g, s = random_near_bipartite(rng, singleton=(i % 4 == 0))
        w = sample_qw(g, i)
        y = recover_dual(w)
        con = contract(w, s)
        family = edge_separate_covers(con, layer_decomposition(con))
        assert family.pairwise_disjoint()
        boundary, inside = boundary_and_inside(w, s)
        assert not inside
        away = [e for e in range(w.m) if e not in boundary]
        rest = w.remove(s)
        for cover, marked in zip(family.covers, family.marked_edges):
            assert not cover & s
            assert rest.graph.is_cover(rest.lower(cover))
            assert w.weight(cover) == y.mass(away) + y.mass(marked)


FAMILIES = [
    ["basic", "--cycle", "7"],
    ["convex", "--petals", "3", "--seed", "5"],
    ["lifted", "--len", "9", "--indep", "1,4"],
    ["alpha-rho", "--alpha", "1/2", "--rho", "2"],
    ["alpha-bip", "--alpha", "1/4", "--len", "7"],
]


@pytest.mark.acceptance(10, "CLI round-trip and verification")
@pytest.mark.parametrize("family", FAMILIES, ids=[f[0] for f in FAMILIES])
def test_ac10_cli_roundtrip(family, tmp_path, capsys):
    inst = tmp_path / "inst.txt"
    rep = tmp_path / "report.json"
    assert main(["generate", *family, "-o", str(inst)]) == 0
    assert main(["analyze", str(inst), "-o", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert data["achieved"] == data["bound"]
    assert main(["analyze", str(inst), "--verify", str(rep)]) == 0

    for corrupt in (_bump_alpha, _break_dual, _swap_cover, _fake_marked):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(corrupt(json.loads(rep.read_text()))))
        assert main(["analyze", str(inst), "--verify", str(bad)]) == 1, corrupt.__name__


def _bump_alpha(rep):
    rep["achieved"] = "1/1" if rep["achieved"] != "1/1" else "2/1"
    return rep


def _break_dual(rep):
    dual = rep["certificates"]["dual"]
    dual[0] = "5/7" if dual[0] != "5/7" else "1/7"
    return rep


def _swap_cover(rep):
    rep["cover"] = rep["cover"][1:]
    return rep


def _fake_marked(rep):
    covers = rep["certificates"]["covers"]
    if covers:
        covers[0]["markedEdges"] = covers[0]["markedEdges"] + [len(rep["instance"]["edges"])]
    else:
        rep["s"] = []
    return rep
