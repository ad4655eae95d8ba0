"""Bipartizing sets from a k-colouring, and dual rotation on the K_k auxiliary.

Given colour classes ``V_1 .. V_k`` sorted by weight, ``S`` is the union of
the ``k - 2`` lightest.  The auxiliary instance is ``K_k`` with vertex
weights ``w(V_i)`` and edge duals ``y(E[V_i, V_j])``.  Rotating dual mass
around 4-cycles through the heaviest pair pushes ``y'(E[S'])`` down to a
value of at most ``1 - 4/k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .bounds import theoretical_bound
from .errors import InvalidColoring, NotInQW, TooFewColors, UnnormalizedDual
from .graph import Graph, complete_graph, contract, odd_girth
from .relax import DualSolution, normalize, recover_dual


@dataclass(frozen=True)
class Coloring:
    classes: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, classes: Sequence) -> Coloring:
        return cls(tuple(frozenset(c) for c in classes))

    @property
    def k(self) -> int:
        return sum(1 for c in self.classes if c)

    def nonempty(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.classes if c)

    def check(self, g: Graph) -> None:
        seen: set[int] = set()
        for c in self.classes:
            g.check_vertices(c)
            if seen & c:
                raise InvalidColoring("colour classes overlap")
            seen |= c
            if not g.is_independent(c):
                raise InvalidColoring(f"class {sorted(c)} spans an edge")
        if seen != set(g.vertices):
            raise InvalidColoring("colour classes do not cover every vertex")


def heuristic_coloring(g: Graph) -> Coloring:
    """Saturation-degree greedy colouring.

    Picks the uncoloured vertex with the most distinct neighbour colours,
    then the highest degree, then the smallest id, and gives it the
    smallest colour not used by a neighbour.
    """
    nbrs = [set(g.neighbors(v)) for v in g.vertices]
    color: dict[int, int] = {}
    while len(color) < g.n:
        def key(v):
            sat = len({color[u] for u in nbrs[v] if u in color})
            return (-sat, -len(nbrs[v]), v)

        v = min((v for v in g.vertices if v not in color), key=key)
        used = {color[u] for u in nbrs[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    k = max(color.values(), default=-1) + 1
    return Coloring(tuple(frozenset(v for v in g.vertices if color[v] == c) for c in range(k)))


@dataclass(frozen=True)
class AuxTuple:
    graph: Graph  # K_k, edges in lexicographic order
    dual: DualSolution
    s_prime: frozenset[int]
    classes: tuple[frozenset[int], ...]  # sorted lightest first

    @property
    def k(self) -> int:
        return self.graph.n

    def edge_id(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        k = self.k
        return i * (2 * k - i - 1) // 2 + (j - i - 1)

    @property
    def heavy_edge(self) -> int:
        return self.edge_id(self.k - 2, self.k - 1)

    def inner_edges(self) -> list[int]:
        """Edges of ``E[S']`` in lexicographic order."""
        return [self.edge_id(i, j) for i in range(self.k - 2) for j in range(i + 1, self.k - 2)]

    @property
    def alpha(self) -> Fraction:
        return self.dual.mass(self.inner_edges())

    def with_dual(self, values) -> AuxTuple:
        return AuxTuple(self.graph, DualSolution(tuple(values)), self.s_prime, self.classes)


def sorted_classes(g: Graph, coloring: Coloring) -> list[frozenset[int]]:
    """Non-empty classes by weight, ties broken by smallest member."""
    return sorted(coloring.nonempty(), key=lambda c: (g.weight(c), min(c)))


def lightest_classes(g: Graph, coloring: Coloring) -> frozenset[int]:
    """Union of all classes except the two heaviest."""
    return frozenset().union(*sorted_classes(g, coloring)[:-2])


def build_aux(g: Graph, dual: DualSolution, coloring: Coloring) -> AuxTuple:
    """``g`` and ``dual`` should be normalized (``w(V) = 2``, ``y(E) = 1``)."""
    coloring.check(g)
    if dual.total != 1:
        raise UnnormalizedDual(f"dual total is {dual.total}, expected 1")
    classes = sorted_classes(g, coloring)
    k = len(classes)
    if k < 4:
        raise TooFewColors(f"need at least 4 colour classes, got {k}")
    where = {v: i for i, c in enumerate(classes) for v in c}
    kg = complete_graph(k, [g.weight(c) for c in classes])
    aux = AuxTuple(kg, DualSolution(tuple([Fraction(0)] * kg.m)), frozenset(range(k - 2)), tuple(classes))
    y = [Fraction(0)] * kg.m
    for e, (u, v) in enumerate(g.edges):
        y[aux.edge_id(where[u], where[v])] += dual.values[e]
    return aux.with_dual(y)


def iter_rotations(aux: AuxTuple) -> Iterator[AuxTuple]:
    """Yield the tuple after each rotation step.

    A step takes the lexicographically first positive edge ``(i, j)`` of
    ``E[S']`` and moves ``eps`` from ``(i, j)`` and ``(k-1, k)`` onto
    ``(j, k-1)`` and ``(i, k)``, with ``eps`` the smaller of the two.
    """
    k = aux.k
    heavy = aux.heavy_edge
    y = list(aux.dual.values)
    while y[heavy] > 0:
        pick = next(
            ((i, j) for i in range(k - 2) for j in range(i + 1, k - 2) if y[aux.edge_id(i, j)] > 0),
            None,
        )
        if pick is None:
            return
        i, j = pick
        inner = aux.edge_id(i, j)
        eps = min(y[inner], y[heavy])
        y[inner] -= eps
        y[heavy] -= eps
        y[aux.edge_id(j, k - 2)] += eps
        y[aux.edge_id(i, k - 1)] += eps
        yield aux.with_dual(y)


def rotate_duals(aux: AuxTuple) -> tuple[AuxTuple, Fraction]:
    final = aux
    for final in iter_rotations(aux):
        pass
    return final, final.alpha


@dataclass(frozen=True)
class PipelineResult:
    s: frozenset[int]
    alpha: Fraction
    bound: Fraction
    coloring: Coloring
    aux: AuxTuple
    rotated: AuxTuple
    steps: tuple[AuxTuple, ...]

    @property
    def k(self) -> int:
        return self.aux.k


def coloring_pipeline(g: Graph, coloring: Coloring | None = None) -> PipelineResult:
    """Bipartizing set and a certified ``alpha <= 1 - 4/k`` from a k-colouring, ``k >= 4``."""
    if coloring is None:
        coloring = heuristic_coloring(g)
    coloring.check(g)
    if coloring.k <= 3:
        raise TooFewColors(f"a {coloring.k}-colouring goes through the independent-set analysis")
    gn = normalize(g)
    dual = recover_dual(gn)
    if dual is None:
        raise NotInQW("no tight dual exists for these weights")
    aux = build_aux(gn, dual, coloring)
    steps = tuple(iter_rotations(aux))
    rotated = steps[-1] if steps else aux
    alpha = rotated.alpha
    s = frozenset().union(*(aux.classes[i] for i in aux.s_prime))
    return PipelineResult(
        s=s,
        alpha=alpha,
        bound=theoretical_bound(2, alpha),
        coloring=coloring,
        aux=aux,
        rotated=rotated,
        steps=steps,
    )


def auto_bipartizing_set(g: Graph, coloring: Coloring | None = None) -> frozenset[int]:
    """Pick ``S`` from a colouring: the ``k - 2`` lightest classes for ``k >= 4``, one class for ``k = 3``.

    For three classes the class whose contraction has the largest odd girth
    wins (a bipartite contraction beats everything), then the lighter class,
    then the earlier one.
    """
    if coloring is None:
        coloring = heuristic_coloring(g)
    coloring.check(g)
    classes = coloring.nonempty()
    if len(classes) <= 2:
        return frozenset()
    if len(classes) >= 4:
        return lightest_classes(g, coloring)

    def score(item):
        i, c = item
        girth = odd_girth(contract(g, c).graph)
        reach = float("inf") if girth is None else girth
        return (-reach, g.weight(c), i)

    return min(enumerate(classes), key=score)[1]
