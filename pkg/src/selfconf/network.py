"""Influence-structure validation and graph queries.

The central object is :class:`InfluenceNetwork`: a row-stochastic,
zero-diagonal influence matrix whose directed graph is strongly connected
and aperiodic. :func:`validate_network` is the only constructor that should
be used; it normalizes rows exactly so downstream linear algebra sees row
sums of 1, and rejects anything outside the model class.

Also provided: S-avoiding reachability (:func:`restricted_graph`) and the
directed-ring test used by the equilibrium classifier.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np

from .errors import (
    EmptySubset,
    NegativeEntry,
    NodeOutOfRange,
    NonzeroDiagonal,
    NotSquare,
    NotStronglyConnected,
    Periodic,
    RowSumOutOfTolerance,
)

#: absolute tolerance on each row sum before exact renormalization
ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class InfluenceNetwork:
    """Validated influence structure.

    Attributes:
        n: number of agents (at least 2).
        P: n x n read-only array; rows sum to 1, diagonal is exactly 0,
           the induced graph is strongly connected and aperiodic.
    """

    n: int
    P: np.ndarray

    def successors(self, i: int) -> list[int]:
        """Nodes j with a direct edge i -> j (positive weight)."""
        if not 0 <= i < self.n:
            raise NodeOutOfRange(f"node {i} outside 0..{self.n - 1}")
        return [int(j) for j in np.flatnonzero(self.P[i] > 0.0)]

    def adjacency(self) -> list[list[int]]:
        """Successor lists for all nodes."""
        return [self.successors(i) for i in range(self.n)]


@dataclass(frozen=True)
class RestrictedGraph:
    """Graph induced on a node subset by subset-avoiding paths.

    An edge (i, j), i != j, means j is reachable from i without passing
    through any intermediate node of the subset. Self-loops never appear.
    """

    subset: tuple[int, ...]
    edges: frozenset[tuple[int, int]]


def _reachable_from(adj: list[list[int]], src: int) -> np.ndarray:
    seen = np.zeros(len(adj), dtype=bool)
    seen[src] = True
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return seen


def _strongly_connected(adj: list[list[int]], radj: list[list[int]]) -> bool:
    # one forward and one backward sweep from node 0 suffice
    return bool(_reachable_from(adj, 0).all() and _reachable_from(radj, 0).all())


def _aperiodic(adj: list[list[int]]) -> bool:
    # BFS level-difference gcd; valid because the graph is strongly connected
    n = len(adj)
    level = np.full(n, -1, dtype=int)
    level[0] = 0
    queue = deque([0])
    g = 0
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = gcd(g, level[u] + 1 - level[v])
    return g == 1


def validate_network(raw_matrix) -> InfluenceNetwork:
    """Validate and normalize an influence matrix.

    Checks, in order: squareness and n >= 2; nonnegativity; exactly-zero
    diagonal; row sums within ``ROW_SUM_TOL`` of 1 (then renormalized
    exactly); strong connectivity; aperiodicity.

    Raises:
        NotSquare, NegativeEntry, NonzeroDiagonal, RowSumOutOfTolerance,
        NotStronglyConnected, Periodic.
    """
    P = np.array(raw_matrix, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] < 2:
        raise NotSquare(f"need a square matrix with n >= 2, got shape {P.shape}")
    n = P.shape[0]
    if np.any(P < 0.0):
        i, j = np.argwhere(P < 0.0)[0]
        raise NegativeEntry(f"entry ({i}, {j}) is negative: {P[i, j]}")
    diag = np.diagonal(P)
    if np.any(diag != 0.0):
        i = int(np.flatnonzero(diag != 0.0)[0])
        raise NonzeroDiagonal(f"diagonal entry ({i}, {i}) is {diag[i]}, must be 0")
    sums = P.sum(axis=1)
    bad = np.abs(sums - 1.0) > ROW_SUM_TOL
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise RowSumOutOfTolerance(f"row {i} sums to {sums[i]!r}")
    P /= sums[:, None]

    adj = [[int(j) for j in np.flatnonzero(P[i] > 0.0)] for i in range(n)]
    radj: list[list[int]] = [[] for _ in range(n)]
    for i, row in enumerate(adj):
        for j in row:
            radj[j].append(i)
    if not _strongly_connected(adj, radj):
        raise NotStronglyConnected("influence graph is not strongly connected")
    if not _aperiodic(adj):
        raise Periodic("influence graph is periodic")

    P.setflags(write=False)
    return InfluenceNetwork(n=n, P=P)


def restricted_graph(net: InfluenceNetwork, subset: Iterable[int]) -> RestrictedGraph:
    """Build the graph induced on ``subset`` by subset-avoiding paths.

    Edge (i, j) is present for i != j in the subset iff j is reachable
    from i through nodes outside the subset only; a direct edge counts.
    """
    nodes = sorted(set(int(s) for s in subset))
    if not nodes:
        raise EmptySubset("subset must contain at least one node")
    for s in nodes:
        if s < 0 or s >= net.n:
            raise NodeOutOfRange(f"node {s} outside 0..{net.n - 1}")
    in_subset = np.zeros(net.n, dtype=bool)
    in_subset[nodes] = True
    adj = net.adjacency()

    edges = set()
    for src in nodes:
        # BFS that may reach subset nodes but never expands through them
        seen = np.zeros(net.n, dtype=bool)
        seen[src] = True
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if in_subset[u] and u != src:
                continue
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        for dst in nodes:
            if dst != src and seen[dst]:
                edges.add((src, dst))
    return RestrictedGraph(subset=tuple(nodes), edges=frozenset(edges))


def is_directed_ring(g: RestrictedGraph) -> bool:
    """True iff the edges form one directed cycle covering every subset node.

    Equivalent to: every node has in-degree 1 and out-degree 1 and the
    graph is strongly connected. A single node (no self-loops possible)
    is never a ring.
    """
    nodes = g.subset
    succ: dict[int, list[int]] = {u: [] for u in nodes}
    indeg = {u: 0 for u in nodes}
    for u, v in g.edges:
        succ[u].append(v)
        indeg[v] += 1
    if any(len(succ[u]) != 1 or indeg[u] != 1 for u in nodes):
        return False
    start = nodes[0]
    seen = {start}
    cur = succ[start][0]
    while cur != start:
        if cur in seen:
            return False
        seen.add(cur)
        cur = succ[cur][0]
    return len(seen) == len(nodes)
