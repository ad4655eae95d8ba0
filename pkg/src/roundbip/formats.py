"""Plain-text instance files.

::

    c comment
    p vcb <n> <m>
    v <id> <num>/<den>
    e <u> <v>
    s <id> <id> ...
    y <u> <v> <num>/<den>

Ids are 1-based.  Every vertex needs one ``v`` line and there must be
exactly ``m`` edge lines.  ``y`` lines are optional, but when present every
edge gets exactly one; the k-th ``y`` line for a pair belongs to the k-th
edge between that pair, which keeps parallel edges apart.  Rationals are
``num/den`` or a bare integer; decimals are rejected.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from .graph import Graph
from .relax import DualSolution

_RATIONAL = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_rational(text: str, line: int | None = None) -> Fraction:
    match = _RATIONAL.match(text)
    if not match:
        raise ParseError(f"expected a non-negative rational num/den, got {text!r}", line)
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ParseError("zero denominator", line)
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    s: frozenset[int] | None = None
    dual: DualSolution | None = None
    comments: tuple[str, ...] = field(default=(), compare=False)


def _int(token: str, line: int) -> int:
    if not re.fullmatch(r"\d+", token):
        raise ParseError(f"expected a positive integer, got {token!r}", line)
    return int(token)


def parse_instance(text: str) -> Instance:
    n = m = None
    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int]] = []
    s: set[int] | None = None
    duals: list[tuple[int, int, Fraction, int]] = []
    comments: list[str] = []

    def vertex(token: str, line: int) -> int:
        v = _int(token, line)
        if not 1 <= v <= n:
            raise ParseError(f"vertex id {v} is outside 1..{n}", line)
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        kind, args = parts[0], parts[1:]
        if kind == "c":
            comments.append(raw.strip()[1:].strip())
            continue
        if kind == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(args) != 3 or args[0] != "vcb":
                raise ParseError("problem line must read 'p vcb <n> <m>'", lineno)
            n, m = _int(args[1], lineno), _int(args[2], lineno)
            continue
        if n is None:
            raise ParseError(f"'{kind}' line before the problem line", lineno)
        if kind == "v":
            if len(args) != 2:
                raise ParseError("vertex line must read 'v <id> <weight>'", lineno)
            v = vertex(args[0], lineno)
            if v in weights:
                raise ParseError(f"vertex {v + 1} has two weights", lineno)
            weights[v] = parse_rational(args[1], lineno)
        elif kind == "e":
            if len(args) != 2:
                raise ParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = vertex(args[0], lineno), vertex(args[1], lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", lineno)
            edges.append((u, v))
        elif kind == "s":
            if s is not None:
                raise ParseError("duplicate set line", lineno)
            s = {vertex(a, lineno) for a in args}
        elif kind == "y":
            if len(args) != 3:
                raise ParseError("dual line must read 'y <u> <v> <value>'", lineno)
            u, v = vertex(args[0], lineno), vertex(args[1], lineno)
            duals.append((u, v, parse_rational(args[2], lineno), lineno))
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)

    if n is None:
        raise ParseError("missing problem line 'p vcb <n> <m>'")
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    missing = [v + 1 for v in range(n) if v not in weights]
    if missing:
        raise ParseError(f"no weight for vertices {missing}")
    graph = Graph(tuple(weights[v] for v in range(n)), tuple(edges))

    dual = None
    if duals:
        slots: dict[frozenset[int], list[int]] = defaultdict(list)
        for e, (u, v) in enumerate(edges):
            slots[frozenset((u, v))].append(e)
        values: list[Fraction | None] = [None] * m
        used: dict[frozenset[int], int] = defaultdict(int)
        for u, v, val, lineno in duals:
            key = frozenset((u, v))
            k = used[key]
            if k >= len(slots[key]):
                raise ParseError(f"more dual values than edges between {u + 1} and {v + 1}", lineno)
            values[slots[key][k]] = val
            used[key] += 1
        if any(val is None for val in values):
            raise ParseError("dual values must be given for every edge or for none")
        dual = DualSolution(tuple(values))
    return Instance(graph, None if s is None else frozenset(s), dual, tuple(comments))


def serialize_instance(inst: Instance) -> str:
    g = inst.graph
    lines = [f"c {c}" if c else "c" for c in inst.comments]
    lines.append(f"p vcb {g.n} {g.m}")
    lines += [f"v {v + 1} {format_rational(w)}" for v, w in enumerate(g.weights)]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    if inst.s is not None:
        lines.append(" ".join(["s"] + [str(v + 1) for v in sorted(inst.s)]))
    if inst.dual is not None:
        lines += [
            f"y {u + 1} {v + 1} {format_rational(y)}"
            for (u, v), y in zip(g.edges, inst.dual.values)
        ]
    return "\n".join(lines) + "\n"


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
