"""Exact half-integral LP for vertex cover and its tight duals.

Both :func:`solve_lp` and :func:`recover_dual` work on the bipartite double
cover: every vertex ``v`` gets copies ``v'`` (left) and ``v''`` (right) and
every edge ``uv`` becomes the two arcs ``u' -> v''`` and ``v' -> u''``.  A
minimum cut of that network is a minimum vertex cover of the double cover,
which folds back to an optimal half-integral LP point; a flow saturating
every source arc folds back to a dual ``y`` with ``y(delta(v)) = w_v``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegenerateWeights, InvalidSolution, NoEdges
from .flow import FlowNetwork, common_scale
from .graph import Graph, Subgraph

HALF = Fraction(1, 2)
_ALLOWED = (Fraction(0), HALF, Fraction(1))


@dataclass(frozen=True)
class HalfIntegralSolution:
    values: tuple[Fraction, ...]
    objective: Fraction

    def is_feasible(self, g: Graph) -> bool:
        return all(self.values[u] + self.values[v] >= 1 for u, v in g.edges)


@dataclass(frozen=True)
class DualSolution:
    values: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def load(self, g: Graph, v: int) -> Fraction:
        return sum((self.values[e] for e in g.incident(v)), Fraction(0))

    def mass(self, edges) -> Fraction:
        return sum((self.values[e] for e in edges), Fraction(0))

    def is_feasible(self, g: Graph) -> bool:
        return (
            len(self.values) == g.m
            and all(y >= 0 for y in self.values)
            and all(self.load(g, v) <= g.weights[v] for v in g.vertices)
        )

    def is_tight(self, g: Graph) -> bool:
        """Non-negative with ``y(delta(v)) = w_v`` everywhere."""
        return (
            len(self.values) == g.m
            and all(y >= 0 for y in self.values)
            and all(self.load(g, v) == g.weights[v] for v in g.vertices)
        )

    def scaled(self, factor: Fraction) -> DualSolution:
        return DualSolution(tuple(y * factor for y in self.values))


@dataclass(frozen=True)
class NTDecomposition:
    zero: frozenset[int]
    half: frozenset[int]
    one: frozenset[int]
    half_subgraph: Subgraph  # induced on ``half``


def _double_cover_network(g: Graph, capacities: Sequence[int]):
    n = g.n
    net = FlowNetwork(2 * n + 2)
    source, sink = 2 * n, 2 * n + 1
    big = sum(capacities) + 1
    for v in g.vertices:
        net.add_arc(source, v, capacities[v])
        net.add_arc(n + v, sink, capacities[v])
    pairs = []
    for u, v in g.edges:
        pairs.append((net.add_arc(u, n + v, big), net.add_arc(v, n + u, big)))
    return net, source, sink, pairs


def solve_lp(g: Graph) -> HalfIntegralSolution:
    """Optimal half-integral solution of the vertex cover LP.

    The cover is read off the source-side residual reachability, so when the
    all-half point is optimal it is exactly what comes back.
    """
    scale = common_scale(g.weights)
    caps = [int(w * scale) for w in g.weights]
    net, source, sink, _ = _double_cover_network(g, caps)
    net.max_flow(source, sink)
    reach = net.reachable(source)
    n = g.n
    values = tuple(
        Fraction(int(not reach[v]) + int(reach[n + v]), 2) for v in g.vertices
    )
    objective = sum((w * x for w, x in zip(g.weights, values)), Fraction(0))
    return HalfIntegralSolution(values, objective)


def nt_decompose(g: Graph, x: HalfIntegralSolution) -> NTDecomposition:
    if len(x.values) != g.n or any(val not in _ALLOWED for val in x.values):
        raise InvalidSolution("values must be one of 0, 1/2, 1 for every vertex")
    if not x.is_feasible(g):
        raise InvalidSolution("some edge has x_u + x_v < 1")
    zero = frozenset(v for v in g.vertices if x.values[v] == 0)
    half = frozenset(v for v in g.vertices if x.values[v] == HALF)
    one = frozenset(v for v in g.vertices if x.values[v] == 1)
    return NTDecomposition(zero, half, one, g.induced(half))


def normalize(g: Graph) -> Graph:
    """Scale weights so that ``w(V) = 2``."""
    total = g.total_weight
    if total == 0:
        raise DegenerateWeights("all weights are zero")
    factor = Fraction(2) / total
    return g.with_weights([w * factor for w in g.weights])


def recover_dual(g: Graph) -> DualSolution | None:
    """A dual with ``y(delta(v)) = w_v`` for all ``v``, or ``None`` if none exists.

    On a normalized graph the returned dual has total 1.
    """
    scale = common_scale(g.weights)
    caps = [int(w * scale) for w in g.weights]
    net, source, sink, pairs = _double_cover_network(g, caps)
    if net.max_flow(source, sink) != sum(caps):
        return None
    values = tuple(
        Fraction(net.flow(a) + net.flow(b), 2 * scale) for a, b in pairs
    )
    return DualSolution(values)


def qw_point(g: Graph, lambdas: Mapping[int, Fraction] | Sequence[Fraction]) -> Graph:
    """Weights ``sum_e lambda_e (1_u + 1_v)`` for a distribution over edges."""
    if isinstance(lambdas, Mapping):
        lam = [Fraction(lambdas.get(e, 0)) for e in range(g.m)]
    else:
        lam = [Fraction(x) for x in lambdas]
    if len(lam) != g.m or any(x < 0 for x in lam) or sum(lam) != 1:
        raise ValueError("lambdas must be a probability distribution over the edges")
    weights = [Fraction(0)] * g.n
    for (u, v), x in zip(g.edges, lam):
        weights[u] += x
        weights[v] += x
    return g.with_weights(weights)


def sample_qw(g: Graph, seed: int, granularity: int = 12) -> Graph:
    """A seeded random point of the normalized weight polytope.

    The convex coefficients are integer draws in ``0..granularity`` divided by
    their sum, so every output is exact and reproducible.
    """
    if g.m == 0:
        raise NoEdges("the weight polytope of an edgeless graph is empty")
    rng = random.Random(seed)
    draws = [rng.randint(0, granularity) for _ in range(g.m)]
    if sum(draws) == 0:
        draws[rng.randrange(g.m)] = 1
    total = sum(draws)
    return qw_point(g, [Fraction(d, total) for d in draws])
