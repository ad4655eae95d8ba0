"""JSON reports for the command line and their re-verification.

Reports use 1-based vertex and edge ids, like instance files, and write
every rational as ``"num/den"``.  Each report embeds its instance so it can
be checked on its own.  :func:`analysis_checks` and :func:`fcn_checks`
recompute every certificate from the report's own data; the verifiers add a
full recomputation and compare field by field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .bipartize import surplus_edges
from .bounds import analyze, theoretical_bound
from .chromatic import (
    FcnCertificate,
    FractionalColoring,
    dual_z_feasible,
    fcn_single_vertex,
    fcn_upper_3colorable,
    integrality_gap,
)
from .coloring import Coloring, PipelineResult, coloring_pipeline, heuristic_coloring
from .errors import ParseError, RoundBipError
from .formats import format_rational, parse_rational
from .graph import Graph, boundary_and_inside, is_bipartite
from .oracle import OracleBudget, brute_opt_vc
from .relax import HALF, DualSolution, normalize, solve_lp

ANALYZE_FORMAT = "roundbip-analysis/1"
FCN_FORMAT = "roundbip-fcn/1"


def q(x: Fraction | None) -> str | None:
    return None if x is None else format_rational(x)


def unq(text: str | None) -> Fraction | None:
    return None if text is None else parse_rational(str(text))


def ids(vertices) -> list[int]:
    return [v + 1 for v in sorted(vertices)]


def unids(values) -> frozenset[int]:
    return frozenset(int(v) - 1 for v in values)


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {
        "weights": [q(w) for w in g.weights],
        "edges": [[u + 1, v + 1] for u, v in g.edges],
    }


def graph_from_json(data: dict[str, Any]) -> Graph:
    return Graph(
        tuple(unq(w) for w in data["weights"]),
        tuple((int(u) - 1, int(v) - 1) for u, v in data["edges"]),
    )


# analysis reports

def analysis_report(
    g: Graph,
    s,
    dual: DualSolution | None = None,
    brute_max: int = 20,
    pipeline: PipelineResult | None = None,
) -> dict[str, Any]:
    r = analyze(g, s, dual, brute_max)
    rnd = r.rounding
    lp = rnd.lp
    rep: dict[str, Any] = {
        "format": ANALYZE_FORMAT,
        "instance": graph_to_json(g),
        "bruteMax": brute_max,
        "normalizedWeights": [q(w) for w in r.graph.weights],
        "lpValue": q(lp.objective),
        "lp": [q(x) for x in lp.values],
        "ntClasses": {
            "zero": ids(v for v in r.graph.vertices if lp.values[v] == 0),
            "half": ids(v for v in r.graph.vertices if lp.values[v] == HALF),
            "one": ids(rnd.one),
        },
        "s": ids(r.s),
        "inQW": r.in_qw,
        "rho": r.rho,
        "alpha": q(r.alpha),
        "alphaSource": "dual",
        "caseTag": r.case_tag.value,
        "bound": q(r.bound),
        "achieved": q(r.achieved),
        "optMode": r.opt_mode.value,
        "optValue": q(rnd.opt_value),
        "cover": ids(rnd.cover),
        "coverWeight": q(rnd.cover_weight),
        "certificates": {
            "dual": None if r.dual is None else [q(y) for y in r.dual.values],
            "layerSizes": None if r.layers is None else [len(layer) for layer in r.layers.layers],
            "covers": None
            if r.family is None
            else [
                {"label": label, "vertices": ids(cover), "markedEdges": ids(marked)}
                for label, cover, marked in zip(r.family.labels, r.family.covers, r.family.marked_edges)
            ],
        },
    }
    if pipeline is not None:
        rep["alpha"] = q(pipeline.alpha)
        rep["alphaSource"] = "rotation"
        rep["bound"] = q(pipeline.bound)
        rep["certificates"]["rotation"] = {
            "classes": [ids(c) for c in pipeline.aux.classes],
            "classWeights": [q(w) for w in pipeline.aux.graph.weights],
            "initialDual": [q(y) for y in pipeline.aux.dual.values],
            "finalDual": [q(y) for y in pipeline.rotated.dual.values],
            "steps": len(pipeline.steps),
        }
    rep["checks"] = analysis_checks(g, rep)
    return rep


def _aux_edge(k: int, i: int, j: int) -> int:
    i, j = min(i, j), max(i, j)
    return i * (2 * k - i - 1) // 2 + (j - i - 1)


def _rotation_checks(gn: Graph, rep: dict[str, Any], s: frozenset[int]) -> dict[str, bool]:
    rot = rep["certificates"]["rotation"]
    classes = [unids(c) for c in rot["classes"]]
    k = len(classes)
    weights = [unq(w) for w in rot["classWeights"]]
    final = [unq(y) for y in rot["finalDual"]]
    initial = [unq(y) for y in rot["initialDual"]]
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    inner = [_aux_edge(k, i, j) for i in range(k - 2) for j in range(i + 1, k - 2)]
    heavy = _aux_edge(k, k - 2, k - 1)

    def tight(y):
        return all(x >= 0 for x in y) and all(
            sum((y[e] for e, (a, b) in enumerate(pairs) if v in (a, b)), Fraction(0)) == weights[v]
            for v in range(k)
        )

    alpha = sum((final[e] for e in inner), Fraction(0))
    return {
        "rotation_coloring_proper": k >= 4
        and sum(len(c) for c in classes) == gn.n
        and set().union(*classes) == set(gn.vertices)
        and all(gn.is_independent(c) for c in classes),
        "rotation_class_weights": weights == [gn.weight(c) for c in classes]
        and weights == sorted(weights),
        "rotation_s_is_lightest": s == frozenset().union(*classes[: k - 2]),
        "rotation_duals_tight": tight(initial) and tight(final) and sum(final) == 1,
        "rotation_terminal": alpha * final[heavy] == 0,
        "rotation_alpha": unq(rep["alpha"]) == alpha and alpha <= 1 - Fraction(4, k),
        "rotation_steps": 0 <= rot["steps"] <= len(inner) + 1,
    }


def analysis_checks(g: Graph, rep: dict[str, Any]) -> dict[str, bool]:
    """Re-derive every certificate in ``rep`` against ``g``."""
    gn = normalize(g)
    checks: dict[str, bool] = {}
    s = unids(rep["s"])
    checks["normalized_weights"] = [unq(w) for w in rep["normalizedWeights"]] == list(gn.weights)

    x = [unq(v) for v in rep["lp"]]
    checks["lp_half_integral"] = len(x) == gn.n and all(v in (0, HALF, 1) for v in x)
    checks["lp_feasible"] = checks["lp_half_integral"] and all(x[u] + x[v] >= 1 for u, v in gn.edges)
    checks["lp_objective"] = checks["lp_half_integral"] and sum(
        (w * v for w, v in zip(gn.weights, x)), Fraction(0)
    ) == unq(rep["lpValue"])
    checks["lp_optimal"] = unq(rep["lpValue"]) == solve_lp(gn).objective
    nt = rep["ntClasses"]
    checks["nt_classes"] = checks["lp_half_integral"] and all(
        unids(nt[name]) == frozenset(v for v in gn.vertices if x[v] == val)
        for name, val in (("zero", 0), ("half", HALF), ("one", 1))
    )

    cover = unids(rep["cover"])
    checks["cover_feasible"] = gn.is_cover(cover)
    checks["cover_weight"] = gn.weight(cover) == unq(rep["coverWeight"])
    checks["cover_contains_one_and_s"] = unids(nt["one"]) | s <= cover
    opt = unq(rep["optValue"])
    if rep["optMode"] == "LPLowerBound":
        checks["opt_value"] = opt == unq(rep["lpValue"])
    else:
        checks["opt_value"] = opt == brute_opt_vc(gn, OracleBudget(max_vertices_exact=max(gn.n, 1)))[1]
    achieved = unq(rep["achieved"])
    if opt:
        checks["achieved_ratio"] = achieved == unq(rep["coverWeight"]) / opt
    else:
        checks["achieved_ratio"] = achieved == (1 if unq(rep["coverWeight"]) == 0 else None)

    cert = rep["certificates"]
    y = None if cert["dual"] is None else DualSolution(tuple(unq(v) for v in cert["dual"]))
    checks["in_qw_flag"] = rep["inQW"] == (y is not None)
    if y is not None:
        checks["dual_tight"] = y.is_tight(gn)
        checks["dual_total_one"] = y.total == 1
        if rep["alphaSource"] == "dual":
            checks["alpha"] = unq(rep["alpha"]) == y.mass(boundary_and_inside(gn, s)[1])

    bound = unq(rep["bound"])
    if bound is not None:
        rho = 2 if rep["alphaSource"] == "rotation" else rep["rho"]
        checks["bound_formula"] = bound == theoretical_bound(rho, unq(rep["alpha"]))
        if achieved is not None and rep["optMode"] == "BruteExact":
            checks["achieved_within_bound"] = achieved <= bound

    if cert["covers"] is not None:
        rest = gn.remove(s)
        inner = [e for e, (a, b) in enumerate(gn.edges) if a not in s and b not in s]
        marked_all: list[frozenset[int]] = []
        ok_cover = ok_marked = ok_identity = True
        for entry in cert["covers"]:
            u = unids(entry["vertices"])
            marked = unids(entry["markedEdges"])
            marked_all.append(marked)
            ok_cover &= not (u & s) and rest.graph.is_cover(rest.lower(u))
            ok_marked &= marked == surplus_edges(gn, s, u)
            if y is not None:
                ok_identity &= gn.weight(u) == y.mass(inner) + y.mass(marked)
        checks["family_covers_feasible"] = ok_cover
        checks["family_marked_edges"] = ok_marked
        checks["family_disjoint"] = all(
            not (a & b) for i, a in enumerate(marked_all) for b in marked_all[i + 1 :]
        )
        checks["family_size"] = rep["rho"] is not None and len(marked_all) == rep["rho"]
        if y is not None:
            checks["family_weight_identity"] = ok_identity
    if cert.get("rotation") is not None:
        checks.update(_rotation_checks(gn, rep, s))
    return checks


def verify_analysis(rep: dict[str, Any], g: Graph | None = None) -> list[str]:
    """Problems found in ``rep``; empty when everything checks out."""
    try:
        embedded = graph_from_json(rep["instance"])
        if g is not None and embedded != g:
            return ["the report was produced for a different instance"]
        g = embedded
        problems = [f"check failed: {name}" for name, ok in analysis_checks(g, rep).items() if not ok]
        if rep.get("checks") != analysis_checks(g, rep):
            problems.append("recorded check results differ from the recomputed ones")
        dual = rep["certificates"]["dual"]
        dual = None if dual is None else DualSolution(tuple(unq(v) for v in dual))
        pipeline = None
        if rep["alphaSource"] == "rotation":
            classes = rep["certificates"]["rotation"]["classes"]
            pipeline = coloring_pipeline(g, Coloring.of([unids(c) for c in classes]))
        fresh = analysis_report(normalize(g), unids(rep["s"]), dual, rep["bruteMax"], pipeline)
        fresh["instance"] = rep["instance"]
        for key in fresh:
            if key != "checks" and fresh[key] != rep.get(key):
                problems.append(f"field {key!r} does not match a fresh computation")
        return problems
    except (KeyError, TypeError, ValueError, ParseError, RoundBipError) as exc:
        return [f"malformed report: {exc}"]


# fractional chromatic number reports

def _coloring_json(fc: FractionalColoring) -> dict[str, Any]:
    return {"sets": [ids(s) for s in fc.sets], "values": [q(v) for v in fc.values]}


def _coloring_from_json(data) -> FractionalColoring:
    return FractionalColoring(
        tuple(unids(s) for s in data["sets"]), tuple(unq(v) for v in data["values"])
    )


def fcn_report(g: Graph, apex: int | None = None, coloring: Coloring | None = None) -> dict[str, Any]:
    """Certificate report; the mode follows from which of ``apex``/``coloring`` is given.

    With neither, bipartite graphs get the trivial certificate and other
    graphs use the smallest vertex whose removal leaves a bipartite graph.
    """
    rep: dict[str, Any] = {"format": FCN_FORMAT, "instance": graph_to_json(g)}
    if apex is None and coloring is None:
        bip = is_bipartite(g)
        if bip is not None:
            if g.m == 0:
                sets, z = [frozenset(g.vertices)] if g.n else [], [Fraction(0)] * g.n
                if g.n:
                    z[0] = Fraction(1)
            else:
                sets = [bip.side_a, bip.side_b]
                z = [Fraction(0)] * g.n
                u, v = g.edges[0]
                z[u] = z[v] = Fraction(1)
            value = Fraction(len(sets))
            rep.update(mode="bipartite", value=q(value), rho=None, apex=None)
            rep["certificate"] = {
                **_coloring_json(FractionalColoring(tuple(sets), tuple([Fraction(1)] * len(sets)))),
                "dualZ": [q(v) for v in z],
            }
            rep["integralityGap"] = q(integrality_gap(value)) if value >= 2 else None
            rep["checks"] = fcn_checks(g, rep)
            return rep
        apex = next((v for v in g.vertices if is_bipartite(g.remove([v]).graph) is not None), None)
        if apex is None:
            coloring = heuristic_coloring(g)
    if apex is not None:
        cert: FcnCertificate = fcn_single_vertex(g, apex)
        rep.update(mode="single-vertex", value=q(cert.value), rho=cert.rho, apex=apex + 1)
        rep["certificate"] = {**_coloring_json(cert.primal), "dualZ": [q(v) for v in cert.dual_z]}
        rep["integralityGap"] = q(integrality_gap(cert.value))
    else:
        upper = fcn_upper_3colorable(g, coloring)
        rep.update(mode="three-coloring", value=q(upper.bound), rho=upper.best.rho, apex=None)
        rep["perClass"] = [
            {
                "class": ids(c.members),
                "rho": c.rho,
                "bound": q(c.bound),
                "bipartiteContraction": c.bipartite_contraction,
                **_coloring_json(c.primal),
            }
            for c in upper.per_class
        ]
        rep["integralityGapUpper"] = q(integrality_gap(upper.bound))
    rep["checks"] = fcn_checks(g, rep)
    return rep


def fcn_checks(g: Graph, rep: dict[str, Any]) -> dict[str, bool]:
    checks: dict[str, bool] = {}
    value = unq(rep["value"])
    if rep["mode"] == "three-coloring":
        bounds = []
        for i, entry in enumerate(rep["perClass"]):
            fc = _coloring_from_json(entry)
            bound = unq(entry["bound"])
            bounds.append(bound)
            checks[f"class{i + 1}_primal_feasible"] = fc.is_feasible(g)
            checks[f"class{i + 1}_objective"] = fc.objective == bound
            if entry["rho"] is not None:
                checks[f"class{i + 1}_formula"] = bound == 2 + Fraction(1, entry["rho"] - 1)
        checks["classes_partition"] = sorted(v for e in rep["perClass"] for v in e["class"]) == list(
            range(1, g.n + 1)
        ) and all(g.is_independent(unids(e["class"])) for e in rep["perClass"])
        checks["bound_is_min"] = bool(bounds) and value == min(bounds)
        checks["gap_formula"] = unq(rep["integralityGapUpper"]) == 2 - 2 / value
        return checks
    cert = rep["certificate"]
    fc = _coloring_from_json(cert)
    z = [unq(v) for v in cert["dualZ"]]
    checks["primal_feasible"] = fc.is_feasible(g)
    checks["dual_feasible"] = dual_z_feasible(g, z)
    checks["strong_duality"] = fc.objective == sum(z, Fraction(0)) == value
    if rep["mode"] == "single-vertex":
        checks["value_formula"] = value == 2 + Fraction(1, rep["rho"] - 1)
    gap = rep["integralityGap"]
    checks["gap_formula"] = (gap is None and value < 2) or (
        gap is not None and unq(gap) == 2 - 2 / value
    )
    return checks


def verify_fcn(rep: dict[str, Any], g: Graph | None = None) -> list[str]:
    try:
        embedded = graph_from_json(rep["instance"])
        if g is not None and embedded != g:
            return ["the report was produced for a different instance"]
        g = embedded
        checks = fcn_checks(g, rep)
        problems = [f"check failed: {name}" for name, ok in checks.items() if not ok]
        if rep.get("checks") != checks:
            problems.append("recorded check results differ from the recomputed ones")
        return problems
    except (KeyError, TypeError, ValueError, ParseError, RoundBipError) as exc:
        return [f"malformed report: {exc}"]
