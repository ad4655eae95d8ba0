"""Round-and-bipartize and the layer machinery behind its analysis."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .errors import BipartiteContraction, NotBipartite, NotBipartizing
from .flow import FlowNetwork, common_scale
from .graph import (
    Bipartition,
    ContractedGraph,
    Graph,
    components,
    is_bipartite,
    shortest_odd_cycle,
)
from .oracle import OracleBudget, brute_opt_vc
from .relax import DualSolution, HalfIntegralSolution, nt_decompose, solve_lp

DEFAULT_BRUTE_MAX = 20


class OptMode(str, Enum):
    BRUTE_EXACT = "BruteExact"
    LP_LOWER_BOUND = "LPLowerBound"


def bipartite_min_cover(g: Graph, bip: Bipartition) -> frozenset[int]:
    """Exact minimum-weight vertex cover of a bipartite graph via min cut."""
    if not bip.is_valid_for(g):
        raise NotBipartite("the bipartition does not match the graph")
    scale = common_scale(g.weights)
    caps = [int(w * scale) for w in g.weights]
    n = g.n
    net = FlowNetwork(n + 2)
    source, sink = n, n + 1
    big = sum(caps) + 1
    for v in g.vertices:
        if v in bip.side_a:
            net.add_arc(source, v, caps[v])
        else:
            net.add_arc(v, sink, caps[v])
    for u, v in g.edges:
        a, b = (u, v) if u in bip.side_a else (v, u)
        net.add_arc(a, b, big)
    net.max_flow(source, sink)
    reach = net.reachable(source)
    return frozenset(
        v for v in g.vertices if (v in bip.side_a) != reach[v]
    )


@dataclass(frozen=True)
class RoundingReport:
    lp: HalfIntegralSolution
    one: frozenset[int]
    s: frozenset[int]
    bipartite_cover: frozenset[int]
    cover: frozenset[int]
    cover_weight: Fraction
    weight_one: Fraction
    weight_s: Fraction
    weight_bipartite: Fraction
    opt_value: Fraction
    opt_mode: OptMode
    achieved: Fraction | None


def round_and_bipartize(
    g: Graph, s: Iterable[int], brute_max: int = DEFAULT_BRUTE_MAX
) -> tuple[frozenset[int], RoundingReport]:
    """Return ``V_1 | S | W`` where ``W`` optimally covers ``G_{1/2} minus S``.

    The achieved ratio divides by the brute-force optimum when the graph has
    at most ``brute_max`` vertices and by the LP value otherwise.
    """
    s = g.check_vertices(s)
    lp = solve_lp(g)
    nt = nt_decompose(g, lp)
    half = nt.half_subgraph
    rest = half.graph.remove(half.lower(s))
    bip = is_bipartite(rest.graph)
    if bip is None:
        raise NotBipartizing("removing S leaves an odd cycle in the half-integral part")
    w_sub = bipartite_min_cover(rest.graph, bip)
    w_set = half.lift(rest.lift(w_sub))
    cover = nt.one | s | w_set
    cover_weight = g.weight(cover)
    if g.n <= brute_max:
        opt = brute_opt_vc(g, OracleBudget(max_vertices_exact=max(brute_max, 1)))[1]
        mode = OptMode.BRUTE_EXACT
    else:
        opt, mode = lp.objective, OptMode.LP_LOWER_BOUND
    if opt > 0:
        achieved = cover_weight / opt
    else:
        achieved = Fraction(1) if cover_weight == 0 else None
    report = RoundingReport(
        lp=lp,
        one=nt.one,
        s=s,
        bipartite_cover=w_set,
        cover=cover,
        cover_weight=cover_weight,
        weight_one=g.weight(nt.one),
        weight_s=g.weight(s),
        weight_bipartite=g.weight(w_set),
        opt_value=opt,
        opt_mode=mode,
        achieved=achieved,
    )
    return cover, report


def extend_to_bipartizing(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Greedy repair: add the smallest vertex of a witness odd cycle until bipartite."""
    s = set(g.check_vertices(s))
    while True:
        rest = g.remove(s)
        cycle = shortest_odd_cycle(rest.graph)
        if cycle is None:
            return frozenset(s)
        s.add(min(rest.vertex_map[v] for v in cycle.vertices))


@dataclass(frozen=True)
class LayerDecomposition:
    """BFS layers of ``G/S`` minus its hub, in contracted-graph ids.

    ``side_a`` / ``side_b`` is the bipartition after the per-component flip;
    even layers lie in ``side_a``.  ``dummy_start`` is the index of the first
    layer holding components that never touch the hub.
    """

    layers: tuple[frozenset[int], ...]
    side_of: tuple[str, ...]
    dummy_start: int | None
    sources: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]

    def __len__(self) -> int:
        return len(self.layers)

    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}


def layer_decomposition(contracted: ContractedGraph) -> LayerDecomposition:
    h = contracted.graph
    hub = contracted.contracted_vertex
    rest = h.remove([hub])
    bip = is_bipartite(rest.graph)
    if bip is None:
        raise NotBipartizing("the contracted graph minus its hub is not bipartite")
    hub_nbrs = set(h.neighbors(hub))
    side_a: set[int] = set()
    side_b: set[int] = set()
    dummy_a: set[int] = set()
    dummy_b: set[int] = set()
    for comp in components(rest.graph):
        a = {rest.vertex_map[v] for v in comp if v in bip.side_a}
        b = {rest.vertex_map[v] for v in comp if v not in bip.side_a}
        sees_a, sees_b = bool(a & hub_nbrs), bool(b & hub_nbrs)
        if not sees_a and not sees_b:
            dummy_a |= a
            dummy_b |= b
            continue
        if sees_b and not sees_a:
            a, b = b, a
        side_a |= a
        side_b |= b
    sources = frozenset(hub_nbrs & side_a)

    dist = {v: 0 for v in sources}
    queue = deque(sorted(sources))
    while queue:
        v = queue.popleft()
        for _, u in h.adjacency[v]:
            if u != hub and u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    q = max(dist.values(), default=0)
    layers = [set() for _ in range(q + 1)]
    for v, d in dist.items():
        layers[d].add(v)
    dummy_start = None
    if dummy_a or dummy_b:
        dummy_start = q + 1
        # keep even layers on side A
        layers += [dummy_b, dummy_a] if q % 2 == 0 else [dummy_a, dummy_b]
    side_a |= dummy_a
    side_b |= dummy_b
    return LayerDecomposition(
        layers=tuple(frozenset(layer) for layer in layers),
        side_of=tuple("A" if i % 2 == 0 else "B" for i in range(len(layers))),
        dummy_start=dummy_start,
        sources=sources,
        side_a=frozenset(side_a),
        side_b=frozenset(side_b),
    )


@dataclass(frozen=True)
class CoverFamily:
    """Covers of ``G minus S`` with their surplus edge sets, in parent ids."""

    covers: tuple[frozenset[int], ...]
    marked_edges: tuple[frozenset[int], ...]
    labels: tuple[str, ...]
    rho: int

    def pairwise_disjoint(self) -> bool:
        seen: set[int] = set()
        for marked in self.marked_edges:
            if seen & marked:
                return False
            seen |= marked
        return True


def surplus_edges(g: Graph, s: Iterable[int], cover: Iterable[int]) -> frozenset[int]:
    """``E_U``: edges of ``G minus S`` inside ``U`` plus edges joining ``U`` to ``S``."""
    s, u = set(s), set(cover)
    out = set()
    for e, (a, b) in enumerate(g.edges):
        if a in s and b in s:
            continue
        if (a in u and b in u) or (a in u and b in s) or (b in u and a in s):
            out.add(e)
    return frozenset(out)


def alternating_layers(j: int, count: int) -> list[int]:
    """Layer indices of the ``j``-th extra cover: ``2j-1, 2j``, then every other layer."""
    taken = [2 * j - 1, 2 * j]
    taken += range(2 * j + 2, count, 2)
    taken += range(2 * j - 3, 0, -2)
    return sorted(taken)


def edge_separate_covers(contracted: ContractedGraph, layers: LayerDecomposition) -> CoverFamily:
    cycle = shortest_odd_cycle(contracted.graph)
    if cycle is None:
        raise BipartiteContraction("the contracted graph has no odd cycle")
    rho = cycle.rho
    h = contracted.graph
    hub = contracted.contracted_vertex

    def marked(cover: frozenset[int]) -> frozenset[int]:
        local = set()
        for e, (a, b) in enumerate(h.edges):
            if a == hub:
                hit = b in cover
            elif b == hub:
                hit = a in cover
            else:
                hit = a in cover and b in cover
            if hit:
                local.add(e)
        return contracted.lift_edges(local)

    local_covers = [layers.side_a, layers.side_b]
    labels = ["A", "B"]
    for j in range(1, rho - 1):
        idx = alternating_layers(j, len(layers.layers))
        local_covers.append(frozenset().union(*(layers.layers[i] for i in idx if i < len(layers))))
        labels.append(f"L{2 * j - 1}+L{2 * j}")
    return CoverFamily(
        covers=tuple(contracted.lift_vertices(c) for c in local_covers),
        marked_edges=tuple(marked(c) for c in local_covers),
        labels=tuple(labels),
        rho=rho,
    )


def family_bound(g: Graph, s: Iterable[int], family: CoverFamily, dual: DualSolution) -> Fraction:
    """``y(E') + min_U y(E_U)``, an upper bound on ``w(OPT(G minus S))``."""
    s = set(s)
    inner = [e for e, (a, b) in enumerate(g.edges) if a not in s and b not in s]
    return dual.mass(inner) + min(dual.mass(m) for m in family.marked_edges)
