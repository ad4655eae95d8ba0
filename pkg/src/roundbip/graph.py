"""Vertex-weighted undirected multigraphs with exact rational weights.

Vertices and edges are dense integer ids: vertex ``v`` is ``0 <= v < n`` and
edge ``e`` is an index into :attr:`Graph.edges`.  Graphs are immutable; every
operation that changes structure returns a new graph together with the maps
needed to translate ids back to the parent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidSet


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Graph:
    weights: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        weights = tuple(as_fraction(w) for w in self.weights)
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        n = len(weights)
        for w in weights:
            if w < 0:
                raise ValueError(f"negative weight {w}")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], weights=None) -> Graph:
        if weights is None:
            weights = [1] * n
        if len(weights) != n:
            raise ValueError("need one weight per vertex")
        return cls(tuple(weights), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(edge_id, neighbor)`` sorted by neighbor, then edge."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((e, v))
            adj[v].append((e, u))
        return tuple(tuple(sorted(a, key=lambda t: (t[1], t[0]))) for a in adj)

    def neighbors(self, v: int) -> list[int]:
        seen: list[int] = []
        for _, u in self.adjacency[v]:
            if not seen or seen[-1] != u:
                seen.append(u)
        return seen

    def incident(self, v: int) -> list[int]:
        return [e for e, _ in self.adjacency[v]]

    def weight(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in set(vertices)), Fraction(0))

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def with_weights(self, weights: Sequence) -> Graph:
        if len(weights) != self.n:
            raise ValueError("need one weight per vertex")
        return Graph(tuple(weights), self.edges)

    def check_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        vs = frozenset(vertices)
        bad = [v for v in vs if not (isinstance(v, int) and 0 <= v < self.n)]
        if bad:
            raise InvalidSet(f"unknown vertices {sorted(bad)}")
        return vs

    def is_cover(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(u in vs or v in vs for u, v in self.edges)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return not any(u in vs and v in vs for u, v in self.edges)

    def induced(self, vertices: Iterable[int]) -> Subgraph:
        keep = sorted(self.check_vertices(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges, edge_map = [], []
        for e, (u, v) in enumerate(self.edges):
            if u in index and v in index:
                edges.append((index[u], index[v]))
                edge_map.append(e)
        sub = Graph(tuple(self.weights[v] for v in keep), tuple(edges))
        return Subgraph(sub, tuple(keep), tuple(edge_map))

    def remove(self, vertices: Iterable[int]) -> Subgraph:
        gone = self.check_vertices(vertices)
        return self.induced(v for v in self.vertices if v not in gone)


@dataclass(frozen=True)
class Subgraph:
    """An induced subgraph plus the id maps back to its parent."""

    graph: Graph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    index: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {v: i for i, v in enumerate(self.vertex_map)})

    def lift(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.vertex_map[v] for v in vertices)

    def lower(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.index[v] for v in vertices if v in self.index)


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    side_b: frozenset[int]

    def side_of(self, v: int) -> str:
        return "A" if v in self.side_a else "B"

    def is_valid_for(self, g: Graph) -> bool:
        if self.side_a & self.side_b or (self.side_a | self.side_b) != set(g.vertices):
            return False
        return all((u in self.side_a) != (v in self.side_a) for u, v in g.edges)


@dataclass(frozen=True)
class OddCycle:
    """A closed walk ``vertices[0] -> vertices[1] -> ... -> vertices[0]``.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[(i + 1) % len]``.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def rho(self) -> int:
        return (len(self.vertices) + 1) // 2


@dataclass(frozen=True)
class ContractedGraph:
    """``G / S``: ``S`` merged into one node, internal edges dropped.

    Non-members keep their relative order and become ids ``0..n-|S|-1``; the
    contracted node is the last id.  Its weight is ``w(S)``.
    """

    graph: Graph
    contracted_vertex: int
    parent_edge_of: tuple[int, ...]
    dropped_edges: frozenset[int]
    parent_vertex_of: tuple[int | None, ...]
    members: frozenset[int]

    def lift_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for v in vertices:
            if v == self.contracted_vertex:
                out |= self.members
            else:
                out.add(self.parent_vertex_of[v])
        return frozenset(out)

    def lift_edges(self, edges: Iterable[int]) -> frozenset[int]:
        return frozenset(self.parent_edge_of[e] for e in edges)

    @cached_property
    def vertex_index(self) -> dict[int, int]:
        index = {p: i for i, p in enumerate(self.parent_vertex_of) if p is not None}
        for s in self.members:
            index[s] = self.contracted_vertex
        return index


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for start in g.vertices:
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for _, u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def is_bipartite(g: Graph) -> Bipartition | None:
    """BFS 2-colouring; the smallest vertex of each component goes to side A.

    Returns ``None`` when an odd cycle exists; :func:`shortest_odd_cycle`
    then gives a witness.
    """
    color = [-1] * g.n
    for start in g.vertices:
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, u in g.adjacency[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    a = frozenset(v for v in g.vertices if color[v] == 0)
    return Bipartition(a, frozenset(g.vertices) - a)


def _cover_bfs(g: Graph, source: int):
    # BFS in the bipartite double cover; state 2*v + parity.
    dist = [-1] * (2 * g.n)
    parent: list[tuple[int, int] | None] = [None] * (2 * g.n)
    start, target = 2 * source, 2 * source + 1
    dist[start] = 0
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == target:
            break
        v, p = divmod(state, 2)
        for e, u in g.adjacency[v]:
            nxt = 2 * u + (1 - p)
            if dist[nxt] < 0:
                dist[nxt] = dist[state] + 1
                parent[nxt] = (state, e)
                queue.append(nxt)
    return dist, parent


def _closed_walk(parent, source: int) -> OddCycle:
    verts, edges = [], []
    state = 2 * source + 1
    while state != 2 * source:
        prev, e = parent[state]
        edges.append(e)
        verts.append(prev // 2)
        state = prev
    verts.reverse()
    edges.reverse()
    return OddCycle(tuple(verts), tuple(edges))


def shortest_odd_cycle(g: Graph) -> OddCycle | None:
    """A shortest odd cycle, found by BFS in the bipartite double cover.

    The distance between the two copies of ``v`` is the shortest odd closed
    walk through ``v``; the minimum over ``v`` is the odd girth and the walk
    realizing it is a simple cycle.  The first minimizing source (smallest
    id) and BFS parent order (smallest neighbor first) fix the witness.
    """
    best, best_parent, best_source = None, None, None
    for v in g.vertices:
        dist, parent = _cover_bfs(g, v)
        d = dist[2 * v + 1]
        if d > 0 and (best is None or d < best):
            best, best_parent, best_source = d, parent, v
            if best == 3:
                break
    if best is None:
        return None
    return _closed_walk(best_parent, best_source)


def odd_girth(g: Graph) -> int | None:
    cycle = shortest_odd_cycle(g)
    return None if cycle is None else len(cycle)


def contract(g: Graph, s: Iterable[int]) -> ContractedGraph:
    members = g.check_vertices(s)
    if not members:
        raise InvalidSet("cannot contract an empty set")
    others = [v for v in g.vertices if v not in members]
    index = {v: i for i, v in enumerate(others)}
    hub = len(others)
    for v in members:
        index[v] = hub
    edges, parent_edge_of, dropped = [], [], set()
    for e, (u, v) in enumerate(g.edges):
        if u in members and v in members:
            dropped.add(e)
            continue
        edges.append((index[u], index[v]))
        parent_edge_of.append(e)
    weights = [g.weights[v] for v in others] + [g.weight(members)]
    return ContractedGraph(
        graph=Graph(tuple(weights), tuple(edges)),
        contracted_vertex=hub,
        parent_edge_of=tuple(parent_edge_of),
        dropped_edges=frozenset(dropped),
        parent_vertex_of=tuple(others) + (None,),
        members=members,
    )


def boundary_and_inside(g: Graph, s: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(delta(S), E[S])`` as edge-id sets."""
    vs = g.check_vertices(s)
    crossing, inside = set(), set()
    for e, (u, v) in enumerate(g.edges):
        a, b = u in vs, v in vs
        if a and b:
            inside.add(e)
        elif a or b:
            crossing.add(e)
    return frozenset(crossing), frozenset(inside)


# Small constructors used throughout the tests and generators.

def cycle_graph(n: int, weights=None) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], weights)


def path_graph(n: int, weights=None) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], weights)


def complete_graph(n: int, weights=None) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], weights)
