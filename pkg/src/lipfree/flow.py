"""Exact min-cost flow: successive shortest paths with node potentials.

Capacities, costs and flows are Fractions; ``None`` capacity means
unbounded. Arc costs must be nonnegative so the zero potential is a valid
starting point. Dijkstra runs on reduced costs, which stay nonnegative on
every residual arc as long as potentials are updated from each round's
shortest-path labels.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)


class MinCostFlow:
    def __init__(self, n_nodes: int):
        self.n = n_nodes
        # arc record: [to, cap (None = inf), cost, flow, rev_index]
        self.adj: list[list[list]] = [[] for _ in range(n_nodes)]

    def add_arc(self, u: int, v: int, cap, cost) -> tuple[int, int]:
        cost = Fraction(cost)
        if cost < 0:
            raise ValueError("arc costs must be nonnegative")
        cap = None if cap is None else Fraction(cap)
        self.adj[u].append([v, cap, cost, _ZERO, len(self.adj[v])])
        self.adj[v].append([u, _ZERO, -cost, _ZERO, len(self.adj[u]) - 1])
        return u, len(self.adj[u]) - 1

    def _residual(self, arc) -> Fraction | None:
        cap, flow = arc[1], arc[3]
        return None if cap is None else cap - flow

    def flow_on(self, handle) -> Fraction:
        u, k = handle
        return self.adj[u][k][3]

    def solve(self, s: int, t: int, amount) -> Fraction:
        """Send ``amount`` from ``s`` to ``t`` at minimum cost; return the cost."""
        amount = Fraction(amount)
        pot = [_ZERO] * self.n
        sent = _ZERO
        total = _ZERO
        while sent < amount:
            dist: list[Fraction | None] = [None] * self.n
            prev: list[tuple[int, int] | None] = [None] * self.n
            done = [False] * self.n
            dist[s] = _ZERO
            while True:
                u, du = -1, None
                for v in range(self.n):
                    if not done[v] and dist[v] is not None and (du is None or dist[v] < du):
                        u, du = v, dist[v]
                if u < 0:
                    break
                done[u] = True
                for k, arc in enumerate(self.adj[u]):
                    res = self._residual(arc)
                    if res is not None and res <= 0:
                        continue
                    v = arc[0]
                    nd = du + arc[2] + pot[u] - pot[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v], prev[v] = nd, (u, k)
            if dist[t] is None:
                raise ValueError("demand cannot be routed")
            dt = dist[t]
            for v in range(self.n):
                pot[v] += dt if dist[v] is None or dist[v] > dt else dist[v]
            push = amount - sent
            v = t
            while v != s:
                u, k = prev[v]
                res = self._residual(self.adj[u][k])
                if res is not None and res < push:
                    push = res
                v = u
            v = t
            while v != s:
                u, k = prev[v]
                arc = self.adj[u][k]
                arc[3] += push
                self.adj[v][arc[4]][3] -= push
                total += push * arc[2]
                v = u
            sent += push
        return total


def transport(supply: Sequence, demand: Sequence,
              cost: Sequence[Sequence]) -> tuple[Fraction, list[list[Fraction]]]:
    """Balanced transportation problem.

    Returns ``(total_cost, flow)`` with ``flow[i][j]`` shipped from supply
    node ``i`` to demand node ``j``.
    """
    m, n = len(supply), len(demand)
    supply = [Fraction(v) for v in supply]
    demand = [Fraction(v) for v in demand]
    if sum(supply) != sum(demand):
        raise ValueError("unbalanced transportation problem")
    g = MinCostFlow(m + n + 2)
    s, t = m + n, m + n + 1
    for i in range(m):
        g.add_arc(s, i, supply[i], 0)
    for j in range(n):
        g.add_arc(m + j, t, demand[j], 0)
    handles = [[g.add_arc(i, m + j, None, cost[i][j]) for j in range(n)] for i in range(m)]
    total = g.solve(s, t, sum(supply))
    flow = [[g.flow_on(h) for h in row] for row in handles]
    return total, flow
