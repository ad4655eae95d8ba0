"""Fractional chromatic number certificates for near-bipartite and 3-colourable graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bipartize import layer_decomposition
from .coloring import Coloring
from .errors import InvalidColoring, InvalidFcn, NotNearBipartite
from .graph import Graph, contract, is_bipartite, shortest_odd_cycle
from .oracle import maximal_independent_sets

EXHAUSTIVE_MAX = 20


@dataclass(frozen=True)
class FractionalColoring:
    sets: tuple[frozenset[int], ...]
    values: tuple[Fraction, ...]

    @property
    def objective(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def coverage(self, v: int) -> Fraction:
        return sum((x for s, x in zip(self.sets, self.values) if v in s), Fraction(0))

    def is_feasible(self, g: Graph) -> bool:
        return (
            len(self.sets) == len(self.values)
            and all(x >= 0 for x in self.values)
            and all(g.is_independent(s) for s in self.sets)
            and all(self.coverage(v) >= 1 for v in g.vertices)
        )


@dataclass(frozen=True)
class FcnCertificate:
    primal: FractionalColoring
    dual_z: tuple[Fraction, ...]  # one entry per vertex
    value: Fraction
    rho: int
    apex: int


def _layer_sets(g: Graph, vp: int) -> tuple[int, list[frozenset[int]], list[frozenset[int]], list[frozenset[int]]]:
    """``(rho, relabelled layers ~L_1..~L_{2rho-1}, R_1, R_2)`` in ids of ``g``."""
    if is_bipartite(g) is not None:
        raise NotNearBipartite("the graph is bipartite")
    g.check_vertices([vp])
    if is_bipartite(g.remove([vp]).graph) is None:
        raise NotNearBipartite(f"removing vertex {vp} leaves an odd cycle")
    rho = shortest_odd_cycle(g).rho
    con = contract(g, [vp])
    layers = [con.lift_vertices(layer) for layer in layer_decomposition(con).layers]
    head = 2 * rho - 2  # L_0 .. L_{2rho-3}
    tilde = [frozenset([vp])] + [layers[i] if i < len(layers) else frozenset() for i in range(head)]
    trailing = range(head, len(layers))
    r1 = frozenset().union(*(layers[i] for i in trailing if i % 2 == 1))
    r2 = frozenset().union(*(layers[i] for i in trailing if i % 2 == 0))
    return rho, tilde, r1, r2


def skip_pattern(k: int, m: int) -> list[int]:
    """1-based indices of ``U_k`` among ``~L_1..~L_m``: take ``k``, skip two, then every other one."""
    offsets = [0] + list(range(3, m - 1, 2))
    return sorted((k - 1 + off) % m + 1 for off in offsets)


def fcn_single_vertex(g: Graph, vp: int) -> FcnCertificate:
    """Optimal primal and dual fractional colourings when ``g - vp`` is bipartite."""
    rho, tilde, r1, r2 = _layer_sets(g, vp)
    m = 2 * rho - 1
    share = Fraction(1, rho - 1)
    sets = []
    for k in range(1, m + 1):
        idx = skip_pattern(k, m)
        u = frozenset().union(*(tilde[i - 1] for i in idx))
        sets.append(u | (r2 if vp in u else r1))
    z = [Fraction(0)] * g.n
    for v in shortest_odd_cycle(g).vertices:
        z[v] = share
    return FcnCertificate(
        primal=FractionalColoring(tuple(sets), tuple([share] * m)),
        dual_z=tuple(z),
        value=2 + share,
        rho=rho,
        apex=vp,
    )


def dual_z_feasible(g: Graph, z: Sequence[Fraction], exhaustive_max: int = EXHAUSTIVE_MAX) -> bool:
    """``z(I) <= 1`` for every independent set, enumerated up to ``exhaustive_max`` vertices."""
    if any(x < 0 for x in z) or len(z) != g.n:
        return False
    if g.n <= exhaustive_max:
        return all(sum((z[v] for v in s), Fraction(0)) <= 1 for s in maximal_independent_sets(g))
    # above desk scale: accept only the cycle-supported form
    support = [v for v in g.vertices if z[v]]
    if not support:
        return True
    length = len(support)
    cycle = shortest_odd_cycle(g.induced(support).graph)
    return (
        cycle is not None
        and len(cycle) == length
        and length % 2 == 1
        and all(z[v] == Fraction(2, length - 1) for v in support)
    )


def verify_certificate(g: Graph, cert: FcnCertificate, exhaustive_max: int = EXHAUSTIVE_MAX) -> dict[str, bool]:
    """Named pass/fail checks for a certificate against ``g``."""
    return {
        "primal_feasible": cert.primal.is_feasible(g),
        "dual_feasible": dual_z_feasible(g, cert.dual_z, exhaustive_max),
        "strong_duality": cert.primal.objective == sum(cert.dual_z, Fraction(0)) == cert.value,
    }


@dataclass(frozen=True)
class ClassBound:
    index: int
    members: frozenset[int]
    rho: int | None
    bound: Fraction
    primal: FractionalColoring
    bipartite_contraction: bool


@dataclass(frozen=True)
class UpperBound3:
    bound: Fraction
    per_class: tuple[ClassBound, ...]

    @property
    def best(self) -> ClassBound:
        return min(self.per_class, key=lambda c: (c.bound, c.index))


def fcn_upper_3colorable(g: Graph, coloring: Coloring) -> UpperBound3:
    """``chi_f <= 2 + min_i 1/(rho_i - 1)`` from the three contractions ``G / V_i``."""
    coloring.check(g)
    classes = coloring.nonempty()
    if len(classes) != 3:
        raise InvalidColoring(f"need exactly 3 non-empty colour classes, got {len(classes)}")
    out = []
    for i, members in enumerate(classes):
        con = contract(g, members)
        h, hub = con.graph, con.contracted_vertex
        bip = is_bipartite(h)
        if bip is not None:
            sides = [con.lift_vertices(bip.side_a), con.lift_vertices(bip.side_b)]
            primal = FractionalColoring(tuple(sides), (Fraction(1), Fraction(1)))
            out.append(ClassBound(i, members, None, Fraction(2), primal, True))
            continue
        cert = fcn_single_vertex(h, hub)
        lifted = tuple(con.lift_vertices(s) for s in cert.primal.sets)
        primal = FractionalColoring(lifted, cert.primal.values)
        out.append(ClassBound(i, members, cert.rho, cert.value, primal, False))
    return UpperBound3(min(c.bound for c in out), tuple(out))


def integrality_gap(fcn_value) -> Fraction:
    """``2 - 2/chi_f`` for the vertex cover relaxation."""
    fcn_value = Fraction(fcn_value)
    if fcn_value < 2:
        raise InvalidFcn(f"a fractional chromatic number below 2 ({fcn_value}) has no gap formula")
    return 2 - 2 / fcn_value
