"""
Online max-reachability: bidirectional best-first search over hyperedges.

No index is needed. Each direction grows from the hyperedges of one query
vertex and keeps, per hyperedge, the widest walk found so far. The two
frontiers meet on a hyperedge visited from both sides.
"""
import heapq
import logging
from typing import Callable, Dict, List, Optional, Tuple

from hlreach.errors import ArgumentError, InvalidWalkError
from hlreach.models import Hypergraph, Walk
from hlreach.schemas import SearchConfig, SearchStats
from hlreach.services.hypergraph_service import NeighborTable, neighbors, overlap_degree

logger = logging.getLogger(__name__)


def wod(H: Hypergraph, walk: Walk) -> int:
    """
    Walk overlap degree: smallest overlap between consecutive hyperedges.

    A single-hyperedge walk has WOD |e|.

    Raises:
        InvalidWalkError: empty walk, or two consecutive hyperedges share nothing
    """
    if not walk:
        raise InvalidWalkError("walk is empty")
    for e in walk:
        H.check_hyperedge(e)
    if len(walk) == 1:
        return H.size(walk[0])

    value = None
    for position, (a, b) in enumerate(zip(walk, walk[1:])):
        od = overlap_degree(H, a, b)
        if od == 0:
            raise InvalidWalkError(f"hyperedges {a} and {b} at positions {position}, {position + 1} share no vertex")
        value = od if value is None else min(value, od)
    return value


class OnlineSearcher:
    """
    Reusable online search engine bound to one hypergraph.

    With neighbor_mode="precomputed" a NeighborTable is built once (or
    passed in) and shared by every query; otherwise neighbors are counted
    on the fly per expansion.
    """

    def __init__(self, H: Hypergraph, config: Optional[SearchConfig] = None, table: Optional[NeighborTable] = None):
        self.H = H
        self.config = config or SearchConfig()
        self.stats = SearchStats()

        if self.config.neighbor_mode == "precomputed":
            self.table = table if table is not None else NeighborTable(H)
            self._neighbors: Callable[[int], List[Tuple[int, int]]] = self.table.__getitem__
        else:
            self.table = None
            self._neighbors = lambda e: neighbors(H, e)

    def mr(self, u: int, v: int) -> int:
        """MR(u, v); 0 when no walk connects them."""
        H = self.H
        H.check_vertex(u)
        H.check_vertex(v)
        self.stats.queries += 1

        # widest overlap seen per hyperedge and direction, absent = unseen
        visit: Tuple[Dict[int, int], Dict[int, int]] = ({}, {})
        queues = (
            [(-H.size(e), e) for e in H.vertex_edges[u]],
            [(-H.size(e), e) for e in H.vertex_edges[v]],
        )
        for q in queues:
            heapq.heapify(q)

        result = 0
        side = 0
        cutoff = self.config.early_global_cutoff
        while queues[0] or queues[1]:
            if cutoff:
                top_0 = -queues[0][0][0] if queues[0] else 0
                top_1 = -queues[1][0][0] if queues[1] else 0
                if top_0 <= result and top_1 <= result:
                    break

            q = queues[side]
            mine, other = visit[side], visit[1 - side]
            for _ in range(len(q)):
                neg_s, e = heapq.heappop(q)
                s = -neg_s
                self.stats.pops += 1
                if s <= mine.get(e, -1):
                    continue
                mine[e] = s

                met = other.get(e, -1)
                if met > result:
                    result = max(result, min(s, met))
                    continue

                for e_next, od in self._neighbors(e):
                    self.stats.neighbor_scans += 1
                    if od <= result:
                        continue
                    s_next = min(s, od)
                    if s_next > mine.get(e_next, -1):
                        heapq.heappush(q, (-s_next, e_next))
                        self.stats.pushes += 1
            side = 1 - side

        return result

    def s_reach(self, u: int, v: int, s: int) -> bool:
        if s < 1:
            raise ArgumentError(f"s must be >= 1, got {s}")
        return self.mr(u, v) >= s


def mr_online(H: Hypergraph, u: int, v: int, config: Optional[SearchConfig] = None) -> int:
    """One-shot online MR query (builds a throwaway searcher)."""
    return OnlineSearcher(H, config).mr(u, v)
