"""Brute-force ground truth for small graphs.

Nothing here imports the algorithmic modules: these engines exist to check
them.  Every exponential routine enforces an :class:`OracleBudget` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TooLarge
from .graph import Graph


@dataclass(frozen=True)
class OracleBudget:
    max_vertices_exact: int = 20
    max_vertices_lp_enum: int = 12
    max_vertices_fcn: int = 12

    def __post_init__(self):
        if min(self.max_vertices_exact, self.max_vertices_lp_enum, self.max_vertices_fcn) <= 0:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


def _check(g: Graph, limit: int, what: str):
    if g.n > limit:
        raise TooLarge(f"{what}: {g.n} vertices exceeds the budget of {limit}")


def _neighbor_sets(g: Graph) -> list[set[int]]:
    nbrs = [set() for _ in g.vertices]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def brute_opt_vc(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[frozenset[int], Fraction]:
    """Exact minimum-weight vertex cover by branch and bound.

    Branches on the first uncovered edge ``uv``: either ``u`` is in the cover
    or ``u`` is out and all of ``N(u)`` is in.  Among optimal covers the
    lexicographically smallest sorted tuple is returned.
    """
    _check(g, budget.max_vertices_exact, "brute_opt_vc")
    w = g.weights
    nbrs = _neighbor_sets(g)
    edges = g.edges
    best_cover = tuple(g.vertices)
    best_weight = g.total_weight

    def lower_bound(chosen) -> Fraction:
        used: set[int] = set()
        lb = Fraction(0)
        for u, v in edges:
            if u in chosen or v in chosen or u in used or v in used:
                continue
            used.update((u, v))
            lb += min(w[u], w[v])
        return lb

    def rec(chosen: frozenset[int], weight: Fraction):
        nonlocal best_cover, best_weight
        edge = next(((u, v) for u, v in edges if u not in chosen and v not in chosen), None)
        if edge is None:
            key = tuple(sorted(chosen))
            if weight < best_weight or (weight == best_weight and key < best_cover):
                best_cover, best_weight = key, weight
            return
        if weight + lower_bound(chosen) > best_weight:
            return
        u, _ = edge
        rec(chosen | {u}, weight + w[u])
        added = nbrs[u] - chosen
        rec(chosen | added, weight + sum((w[x] for x in added), Fraction(0)))

    rec(frozenset(), Fraction(0))
    return frozenset(best_cover), best_weight


def brute_lp(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> Fraction:
    """Minimum of ``sum w_v x_v`` over feasible points of ``{0, 1/2, 1}^V``."""
    _check(g, budget.max_vertices_lp_enum, "brute_lp")
    nbrs = _neighbor_sets(g)
    order = sorted(g.vertices, key=lambda v: (-len(nbrs[v]), v))
    w = g.weights
    x = [None] * g.n  # doubled values 0, 1, 2
    best = g.total_weight  # all-half, in doubled units

    def rec(i: int, partial: Fraction):
        nonlocal best
        if partial >= best:
            return
        if i == len(order):
            best = partial
            return
        v = order[i]
        low = max((2 - x[u] for u in nbrs[v] if x[u] is not None), default=0)
        choices = (2,) if w[v] == 0 else range(low, 3)
        for val in choices:
            x[v] = val
            rec(i + 1, partial + w[v] * val)
        x[v] = None

    rec(0, Fraction(0))
    return best / 2


def maximal_independent_sets(g: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    nbrs = _neighbor_sets(g)
    everyone = set(g.vertices)
    non_nbrs = [everyone - nbrs[v] - {v} for v in g.vertices]
    out: list[frozenset[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(non_nbrs[u] & p))
        for v in sorted(p - non_nbrs[pivot]):
            bk(r | {v}, p & non_nbrs[v], x & non_nbrs[v])
            p = p - {v}
            x = x | {v}

    if g.n:
        bk(set(), set(everyone), set())
    return sorted(out, key=lambda s: sorted(s))


def simplex_max(c: Sequence[Fraction], rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Maximize ``c.x`` subject to ``rows.x <= rhs``, ``x >= 0`` with ``rhs >= 0``.

    Dense rational tableau with Bland's rule.  Returns ``(value, x, y)`` where
    ``y`` is an optimal solution of the dual ``min rhs.y, rows^T y >= c``.
    """
    m, n = len(rows), len(c)
    if any(b < 0 for b in rhs):
        raise ValueError("the slack basis must be feasible")
    width = n + m
    tab = []
    for i, row in enumerate(rows):
        line = [Fraction(a) for a in row] + [Fraction(0)] * m + [Fraction(rhs[i])]
        line[n + i] = Fraction(1)
        tab.append(line)
    obj = [-Fraction(a) for a in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best_ratio = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leave]
                ):
                    leave, best_ratio = i, ratio
        if leave is None:
            raise ArithmeticError("unbounded linear program")
        piv = tab[leave][enter]
        tab[leave] = [a / piv for a in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][-1]
    y = [obj[n + i] for i in range(m)]
    return obj[-1], x, y


def brute_fcn_certificate(g: Graph, budget: OracleBudget = DEFAULT_BUDGET):
    """``(value, {independent set: y_I}, z)`` solving the fractional colouring LP exactly.

    Solved as the packing form ``max sum z_v, z(I) <= 1`` over all maximal
    independent sets; the covering weights come back as its dual.
    """
    _check(g, budget.max_vertices_fcn, "brute_fcn")
    if g.n == 0:
        return Fraction(0), {}, []
    sets = maximal_independent_sets(g)
    rows = [[Fraction(int(v in s)) for v in g.vertices] for s in sets]
    value, z, y = simplex_max([Fraction(1)] * g.n, rows, [Fraction(1)] * len(sets))
    cover = {s: val for s, val in zip(sets, y) if val}
    return value, cover, z


def brute_fcn(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> Fraction:
    return brute_fcn_certificate(g, budget)[0]


def simple_cycles(g: Graph, max_vertices: int = 12) -> list[tuple[int, ...]]:
    """All simple cycles of length >= 3 as vertex tuples.

    Each cycle is listed once, starting at its smallest vertex and oriented so
    the second vertex is smaller than the last.
    """
    if g.n > max_vertices:
        raise TooLarge(f"simple_cycles: {g.n} vertices exceeds {max_vertices}")
    nbrs = [sorted(s) for s in _neighbor_sets(g)]
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], on_path: set[int]):
        last = path[-1]
        for u in nbrs[last]:
            if u == path[0] and len(path) >= 3 and path[1] < path[-1]:
                found.append(tuple(path))
            elif u > path[0] and u not in on_path:
                path.append(u)
                on_path.add(u)
                extend(path, on_path)
                on_path.discard(u)
                path.pop()

    for s in g.vertices:
        extend([s], {s})
    return found


def brute_odd_girth(g: Graph, max_vertices: int = 12) -> int | None:
    lengths = [len(c) for c in simple_cycles(g, max_vertices) if len(c) % 2]
    return min(lengths, default=None)
