"""Instances on which round-and-bipartize meets its ratio bound with equality.

Every generator returns a :class:`TightInstance` carrying the weights, a
tight dual certifying that the weights lie in the weight polytope, the set
``S`` to bipartize with, and the ratio the algorithm must achieve.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidCombination,
    InvalidCycle,
    InvalidParams,
    NoOddCycle,
    NotBipartizing,
    NotIndependent,
)
from .graph import Graph, OddCycle, contract, cycle_graph, is_bipartite, odd_girth
from .relax import DualSolution


@dataclass(frozen=True)
class TightInstance:
    graph: Graph
    dual: DualSolution
    s: frozenset[int]
    expected_ratio: Fraction
    rho: int | None
    alpha: Fraction


@dataclass(frozen=True)
class CycleEnumeration:
    cycles: tuple[OddCycle, ...]
    truncated: bool


def _edge_between(g: Graph, u: int, v: int) -> int:
    for e, x in g.adjacency[u]:
        if x == v:
            return e
    raise InvalidCycle(f"vertices {u} and {v} are not adjacent")


def _cycle_edges(g: Graph, cycle: Sequence[int]) -> list[int]:
    """Edge ids along a closed vertex sequence; the lowest id among parallels."""
    n = len(cycle)
    return [_edge_between(g, cycle[i], cycle[(i + 1) % n]) for i in range(n)]


def _checked_cycle(g: Graph, vp: int, cycle: Sequence[int], girth: int | None) -> tuple[list[int], list[int]]:
    """Rotate ``cycle`` to start at ``vp`` and return ``(vertices, edges)`` after validation."""
    cycle = [int(v) for v in cycle]
    g.check_vertices(cycle)
    if len(set(cycle)) != len(cycle):
        raise InvalidCycle("the cycle repeats a vertex")
    if len(cycle) < 3 or len(cycle) % 2 == 0:
        raise InvalidCycle(f"a cycle of length {len(cycle)} is not an odd cycle")
    if vp not in cycle:
        raise InvalidCycle(f"the cycle does not pass through vertex {vp}")
    if len(cycle) != girth:
        raise InvalidCycle(f"length {len(cycle)} is not the odd girth {girth}")
    i = cycle.index(vp)
    cycle = cycle[i:] + cycle[:i]
    return cycle, _cycle_edges(g, cycle)


def _require_near_bipartite(g: Graph, vp: int):
    g.check_vertices([vp])
    if is_bipartite(g.remove([vp]).graph) is None:
        raise NotBipartizing(f"removing vertex {vp} leaves an odd cycle")


def _cycle_dual(m: int, cycle_edges: Sequence[int], value: Fraction) -> list[Fraction]:
    # edges at the start vertex carry ``value``; walking away, 0 and ``value`` alternate
    y = [Fraction(0)] * m
    for i, e in enumerate(cycle_edges):
        if i % 2 == 0:
            y[e] += value
    return y


def _weights_from_dual(g: Graph, y: Sequence[Fraction]) -> list[Fraction]:
    w = [Fraction(0)] * g.n
    for (u, v), val in zip(g.edges, y):
        w[u] += val
        w[v] += val
    return w


def basic_weight(g: Graph, vp: int, cycle: Sequence[int]) -> TightInstance:
    """``2/rho`` on ``vp``, ``1/rho`` on the rest of ``cycle``, 0 elsewhere."""
    return convex_weight(g, vp, {tuple(cycle): Fraction(1)})


def convex_weight(g: Graph, vp: int, lambdas: Mapping[Sequence[int], Fraction]) -> TightInstance:
    """Convex combination of basic weight functions of shortest odd cycles through ``vp``."""
    lam = {tuple(c): Fraction(x) for c, x in lambdas.items()}
    if not lam or any(x < 0 for x in lam.values()) or sum(lam.values()) != 1:
        raise InvalidCombination("the coefficients must be non-negative and sum to 1")
    _require_near_bipartite(g, vp)
    girth = odd_girth(g)
    rho = (girth + 1) // 2
    y = [Fraction(0)] * g.m
    for cycle, x in lam.items():
        _, edges = _checked_cycle(g, vp, cycle, girth)
        if x:
            y = [a + b for a, b in zip(y, _cycle_dual(g.m, edges, x / rho))]
    return TightInstance(
        graph=g.with_weights(_weights_from_dual(g, y)),
        dual=DualSolution(tuple(y)),
        s=frozenset([vp]),
        expected_ratio=1 + Fraction(1, rho),
        rho=rho,
        alpha=Fraction(0),
    )


def lifted_dual_weight(
    g: Graph, indep: Iterable[int], contracted_cycle: Sequence[int] | None = None
) -> TightInstance:
    """Weights ``w(v) = y(delta(v))`` for a cycle dual on ``G/I`` pulled back to ``G``.

    ``contracted_cycle`` is given in ids of ``contract(g, indep)``; by default
    the first shortest odd cycle through the contracted node is used.
    """
    indep = g.check_vertices(indep)
    if not indep:
        raise NotIndependent("the set is empty")
    if not g.is_independent(indep):
        raise NotIndependent("the set spans an edge")
    if is_bipartite(g.remove(indep).graph) is None:
        raise NotBipartizing("removing the set leaves an odd cycle")
    con = contract(g, indep)
    h, hub = con.graph, con.contracted_vertex
    if contracted_cycle is None:
        contracted_cycle = shortest_odd_cycles(h, hub, limit=1).cycles[0].vertices
    girth = odd_girth(h)
    rho = (girth + 1) // 2
    _, edges = _checked_cycle(h, hub, contracted_cycle, girth)
    local = _cycle_dual(h.m, edges, Fraction(1, rho))
    y = [Fraction(0)] * g.m
    for e, val in enumerate(local):
        y[con.parent_edge_of[e]] = val
    return TightInstance(
        graph=g.with_weights(_weights_from_dual(g, y)),
        dual=DualSolution(tuple(y)),
        s=indep,
        expected_ratio=1 + Fraction(1, rho),
        rho=rho,
        alpha=Fraction(0),
    )


def _check_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise InvalidParams(f"alpha = {alpha} is outside [0, 1]")
    return alpha


def gen_alpha_rho(alpha, rho: int) -> TightInstance:
    """An odd cycle of length ``2 rho - 1`` whose special node is blown up to a triangle.

    Vertices: ``s1, s2, s3 = 0, 1, 2`` form the triangle and ``3 ..`` walk the
    path ``u_1 .. u_{2rho-2}`` from ``s1`` back to ``s2``.  The triangle edge
    ``s1 s2`` carries ``alpha``.
    """
    alpha = _check_alpha(alpha)
    if isinstance(rho, bool) or not isinstance(rho, int) or rho < 2:
        raise InvalidParams(f"rho must be an integer >= 2, got {rho!r}")
    step = (1 - alpha) / rho
    path = list(range(3, 3 + 2 * rho - 2))
    edges = [(0, 1), (1, 2), (2, 0), (0, path[0])]
    y = [alpha, Fraction(0), Fraction(0), step]
    for i in range(len(path) - 1):
        edges.append((path[i], path[i + 1]))
        y.append(Fraction(0) if i % 2 == 0 else step)
    edges.append((path[-1], 1))
    y.append(step)
    g = Graph.from_edges(3 + len(path), edges)
    return TightInstance(
        graph=g.with_weights(_weights_from_dual(g, y)),
        dual=DualSolution(tuple(y)),
        s=frozenset({0, 1, 2}),
        expected_ratio=(1 + Fraction(1, rho)) * (1 - alpha) + 2 * alpha,
        rho=rho,
        alpha=alpha,
    )


def gen_alpha_bipartite(alpha, length: int, remainder: Sequence[Fraction] | None = None) -> TightInstance:
    """The cycle ``v_0 .. v_{L-1}`` with ``alpha`` on ``v_0 v_1`` and ``S = {v_0, v_1}``.

    Edge ``v_0 v_{L-1}`` gets 0.  ``remainder`` lists the duals of
    ``v_1 v_2, .., v_{L-2} v_{L-1}`` and must sum to ``1 - alpha``; by default
    the mass sits on every other edge starting next to ``S``.
    """
    alpha = _check_alpha(alpha)
    if isinstance(length, bool) or not isinstance(length, int) or length < 5 or length % 2 == 0:
        raise InvalidParams(f"the cycle length must be odd and at least 5, got {length!r}")
    if remainder is None:
        share = 2 * (1 - alpha) / (length - 1)
        remainder = [share if i % 2 == 0 else Fraction(0) for i in range(length - 2)]
    remainder = [Fraction(x) for x in remainder]
    if len(remainder) != length - 2 or any(x < 0 for x in remainder) or sum(remainder) != 1 - alpha:
        raise InvalidParams(f"the remainder needs {length - 2} non-negative values summing to 1 - alpha")
    # cycle_graph numbers edge i as (v_i, v_{i+1}), so (v_{L-1}, v_0) is last
    y = [alpha] + remainder + [Fraction(0)]
    g = cycle_graph(length)
    return TightInstance(
        graph=g.with_weights(_weights_from_dual(g, y)),
        dual=DualSolution(tuple(y)),
        s=frozenset({0, 1}),
        expected_ratio=1 + alpha,
        rho=None,
        alpha=alpha,
    )


def _cover_distances(g: Graph, start: int) -> list[int]:
    dist = [-1] * (2 * g.n)
    dist[start] = 0
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, p = divmod(state, 2)
        for _, u in g.adjacency[v]:
            nxt = 2 * u + 1 - p
            if dist[nxt] < 0:
                dist[nxt] = dist[state] + 1
                queue.append(nxt)
    return dist


def shortest_odd_cycles(g: Graph, vp: int, limit: int = 64) -> CycleEnumeration:
    """Distinct shortest odd cycles through ``vp``, at most ``limit`` of them.

    Walks the shortest-path DAG from ``(vp, even)`` to ``(vp, odd)`` in the
    bipartite double cover depth first, neighbours in ascending order.
    Cycles with the same edge set are reported once.
    """
    g.check_vertices([vp])
    if limit < 1:
        raise InvalidParams("limit must be positive")
    girth = odd_girth(g)
    if girth is None:
        raise NoOddCycle("the graph is bipartite")
    src, dst = 2 * vp, 2 * vp + 1
    from_src = _cover_distances(g, src)
    to_dst = _cover_distances(g, dst)  # the double cover is symmetric under parity swap
    if from_src[dst] != girth:
        return CycleEnumeration((), False)

    found: list[OddCycle] = []
    seen: set[frozenset[int]] = set()
    verts, edges = [vp], []

    def dfs(state: int) -> bool:
        if state == dst:
            key = frozenset(edges)
            if key not in seen:
                seen.add(key)
                found.append(OddCycle(tuple(verts[:-1]), tuple(edges)))
            return len(found) > limit
        v, p = divmod(state, 2)
        for e, u in g.adjacency[v]:
            nxt = 2 * u + 1 - p
            if from_src[nxt] == from_src[state] + 1 and from_src[nxt] + to_dst[nxt] == girth:
                verts.append(u)
                edges.append(e)
                stop = dfs(nxt)
                verts.pop()
                edges.pop()
                if stop:
                    return True
        return False

    dfs(src)
    truncated = len(found) > limit
    return CycleEnumeration(tuple(found[:limit]), truncated)

