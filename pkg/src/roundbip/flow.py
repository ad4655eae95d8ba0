"""Integer max-flow (Dinic) used for every exact cover / b-matching computation.

Rational capacities are brought to integers with :func:`common_scale` before
the network is built, so the algorithm terminates exactly.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import lcm
from typing import Iterable


def common_scale(values: Iterable[Fraction]) -> int:
    scale = 1
    for x in values:
        scale = lcm(scale, Fraction(x).denominator)
    return scale


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.head: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        if capacity < 0:
            raise ValueError("negative capacity")
        arc = len(self.head)
        self.head += [v, u]
        self.cap += [capacity, 0]
        self.out[u].append(arc)
        self.out[v].append(arc + 1)
        return arc

    def flow(self, arc: int) -> int:
        return self.cap[arc ^ 1]

    def _levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.out[u]:
                v = self.head[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking(self, s: int, t: int, level) -> int:
        it = [0] * self.n
        total = 0
        while True:
            # iterative DFS along the level graph
            path: list[int] = []
            u = s
            while u != t:
                advanced = False
                while it[u] < len(self.out[u]):
                    a = self.out[u][it[u]]
                    v = self.head[a]
                    if self.cap[a] > 0 and level[v] == level[u] + 1:
                        path.append(a)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        return total
                    level[u] = -1  # dead end
                    a = path.pop()
                    u = self.head[a ^ 1]
                    it[u] += 1
            push = min(self.cap[a] for a in path)
            for a in path:
                self.cap[a] -= push
                self.cap[a ^ 1] += push
            total += push

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while (level := self._levels(s, t)) is not None:
            total += self._blocking(s, t, level)
        return total

    def reachable(self, s: int) -> list[bool]:
        """Vertices reachable from ``s`` in the residual network."""
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.out[u]:
                v = self.head[a]
                if self.cap[a] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen
