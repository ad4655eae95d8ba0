"""Ratio bounds parameterized by the contracted odd girth and the internal dual mass."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .bipartize import (
    DEFAULT_BRUTE_MAX,
    CoverFamily,
    LayerDecomposition,
    OptMode,
    RoundingReport,
    edge_separate_covers,
    layer_decomposition,
    round_and_bipartize,
)
from .errors import InvalidParams, InvalidRho, InvalidSolution, UnnormalizedDual
from .graph import ContractedGraph, Graph, boundary_and_inside, contract, shortest_odd_cycle
from .relax import DualSolution, normalize, nt_decompose, recover_dual


class CaseTag(str, Enum):
    SINGLE_VERTEX = "SingleVertex"
    INDEPENDENT_SET = "IndependentSet"
    GENERAL_ODD = "GeneralOdd"
    GENERAL_BIPARTITE = "GeneralBipartite"


def compute_alpha(dual: DualSolution, s: Iterable[int], g: Graph) -> Fraction:
    """Dual mass on the edges with both endpoints in ``s``."""
    if dual.total != 1:
        raise UnnormalizedDual(f"dual total is {dual.total}, expected 1")
    _, inside = boundary_and_inside(g, s)
    return dual.mass(inside)


def theoretical_bound(rho: int | None, alpha: Fraction) -> Fraction:
    """``(1 + 1/rho)(1 - alpha) + 2 alpha``, or ``1 + alpha`` when ``rho`` is ``None``."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise InvalidParams(f"alpha = {alpha} is outside [0, 1]")
    if rho is None:
        return 1 + alpha
    if rho < 2:
        raise InvalidRho(f"rho must be at least 2, got {rho}")
    return (1 + Fraction(1, rho)) * (1 - alpha) + 2 * alpha


def case_tag(g: Graph, s: frozenset[int], rho: int | None) -> CaseTag:
    if rho is None:
        return CaseTag.GENERAL_BIPARTITE
    if len(s) == 1:
        return CaseTag.SINGLE_VERTEX
    if g.is_independent(s):
        return CaseTag.INDEPENDENT_SET
    return CaseTag.GENERAL_ODD


@dataclass(frozen=True)
class RatioReport:
    graph: Graph  # normalized
    s: frozenset[int]
    rho: int | None
    alpha: Fraction | None
    case_tag: CaseTag
    bound: Fraction | None
    achieved: Fraction | None
    opt_mode: OptMode
    dual: DualSolution | None
    rounding: RoundingReport
    contracted: ContractedGraph | None
    layers: LayerDecomposition | None
    family: CoverFamily | None

    @property
    def in_qw(self) -> bool:
        return self.dual is not None

    @property
    def within_bound(self) -> bool | None:
        if self.bound is None or self.achieved is None:
            return None
        return self.achieved <= self.bound


def analyze(
    g: Graph,
    s: Iterable[int],
    dual: DualSolution | None = None,
    brute_max: int = DEFAULT_BRUTE_MAX,
) -> RatioReport:
    """Run round-and-bipartize on ``g`` and set the achieved ratio against its bound.

    Weights are normalized first; a supplied dual is rescaled with them and
    must be tight.  Without a tight dual the weights lie outside the weight
    polytope and ``alpha``/``bound`` are left as ``None``.
    """
    s = g.check_vertices(s)
    gn = normalize(g)
    if dual is not None:
        dual = dual.scaled(Fraction(2) / g.total_weight)
        if not dual.is_tight(gn):
            raise InvalidSolution("the supplied dual is not tight at every vertex")
    else:
        dual = recover_dual(gn)
    _, rounding = round_and_bipartize(gn, s, brute_max)

    half = nt_decompose(gn, rounding.lp).half_subgraph
    hs = half.lower(s)
    contracted = layers = family = None
    rho = None
    if hs:
        local = contract(half.graph, hs)
        cycle = shortest_odd_cycle(local.graph)
        rho = None if cycle is None else cycle.rho
        if half.graph.n == gn.n:
            contracted = local
            layers = layer_decomposition(local)
            if rho is not None:
                family = edge_separate_covers(local, layers)

    alpha = bound = None
    if dual is not None:
        alpha = compute_alpha(dual, s, gn)
        bound = theoretical_bound(rho, alpha)
    return RatioReport(
        graph=gn,
        s=s,
        rho=rho,
        alpha=alpha,
        case_tag=case_tag(gn, s, rho),
        bound=bound,
        achieved=rounding.achieved,
        opt_mode=rounding.opt_mode,
        dual=dual,
        rounding=rounding,
        contracted=contracted,
        layers=layers,
        family=family,
    )
