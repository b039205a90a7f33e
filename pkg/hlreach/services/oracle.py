"""
Brute-force reachability oracle used to check every other engine.

Overlapping hyperedge pairs are fed to a union-find in descending overlap
order. When two components first merge at overlap s, every cross pair of
hyperedges becomes s-connected, and s is the best any walk between them
can do. Recording that value for all cross pairs gives an m x m
bottleneck table B; the diagonal holds |e|.

Memory is O(m^2), which is fine for test and verification graphs but
not for benchmark-sized inputs.
"""
import logging
from typing import List

import numpy as np

from hlreach.errors import ArgumentError
from hlreach.models import Hypergraph, HyperedgeOrder
from hlreach.services.hypergraph_service import neighbors
from hlreach.union_find import UnionFind

logger = logging.getLogger(__name__)


class ReachabilityOracle:
    """Bottleneck table over hyperedges plus vertex-level lookups."""

    def __init__(self, H: Hypergraph):
        self.H = H
        self.bottleneck = self._build_table(H)

    @staticmethod
    def _build_table(H: Hypergraph) -> np.ndarray:
        table = np.zeros((H.m, H.m), dtype=np.int64)
        pairs = [(od, e, other) for e in range(H.m) for other, od in neighbors(H, e) if other > e]
        pairs.sort(key=lambda item: -item[0])

        uf = UnionFind(H.m)
        for od, a, b in pairs:
            left = list(uf.component(a))
            right = list(uf.component(b))
            if uf.union(a, b):
                table[np.ix_(left, right)] = od
                table[np.ix_(right, left)] = od

        for e in range(H.m):
            table[e, e] = H.size(e)
        return table

    def mr(self, u: int, v: int) -> int:
        self.H.check_vertex(u)
        self.H.check_vertex(v)
        rows = list(self.H.vertex_edges[u])
        cols = list(self.H.vertex_edges[v])
        if not rows or not cols:
            return 0
        return int(self.bottleneck[np.ix_(rows, cols)].max())

    def vte(self, u: int, e: int) -> int:
        """Best s such that some hyperedge of u s-reaches e (0 if none)."""
        self.H.check_vertex(u)
        self.H.check_hyperedge(e)
        rows = list(self.H.vertex_edges[u])
        if not rows:
            return 0
        return int(self.bottleneck[rows, e].max())

    def s_reach(self, u: int, v: int, s: int) -> bool:
        if s < 1:
            raise ArgumentError(f"s must be >= 1, got {s}")
        return self.mr(u, v) >= s

    def mcd(self, order: HyperedgeOrder, e: int) -> int:
        """Best s at which any strictly more important hyperedge reaches e."""
        self.H.check_hyperedge(e)
        better: List[int] = list(order.sequence[: order.rank[e]])
        if not better:
            return 0
        return int(self.bottleneck[e, better].max())

    def vte_matrix(self) -> np.ndarray:
        """n x m table of vertex-to-hyperedge reach."""
        out = np.zeros((self.H.n, self.H.m), dtype=np.int64)
        for u, row in enumerate(self.H.vertex_edges):
            if row:
                out[u] = self.bottleneck[list(row)].max(axis=0)
        return out

    def all_pairs(self) -> np.ndarray:
        """n x n table of MR values."""
        vte = self.vte_matrix()
        out = np.zeros((self.H.n, self.H.n), dtype=np.int64)
        for v, row in enumerate(self.H.vertex_edges):
            if row:
                out[:, v] = vte[:, list(row)].max(axis=1)
        return out


def mr_oracle(H: Hypergraph, u: int, v: int) -> int:
    return ReachabilityOracle(H).mr(u, v)


def vte_oracle(H: Hypergraph, u: int, e: int) -> int:
    return ReachabilityOracle(H).vte(u, e)


def s_reach_oracle(H: Hypergraph, u: int, v: int, s: int) -> bool:
    if s < 1:
        raise ArgumentError(f"s must be >= 1, got {s}")
    return ReachabilityOracle(H).s_reach(u, v, s)


def mcd_bruteforce(H: Hypergraph, order: HyperedgeOrder, e: int) -> int:
    """MCD(e) straight from the bottleneck table; 0 for the rank-0 hyperedge."""
    return ReachabilityOracle(H).mcd(order, e)
