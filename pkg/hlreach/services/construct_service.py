"""
================================================================================
Construction Service - HL-index Builders
================================================================================

DESCRIPTION:
    Builds the hub-label index. Hyperedges are taken one at a time in
    importance order; each one runs a widest-walk search that hands the
    source out as a hub label to every vertex it reaches. A tuple is only
    stored when no more important hyperedge already covers it.

BUILDERS:
    basic   - Cover check by an online bidirectional BFS per popped tuple
    fast    - Maximum-cover-degree (MCD) pruning plus a shrinking neighbor
              index; also emits the dual index needed for minimization
    minimal - fast, then redundant labels removed (minimize_service)

USAGE:
    from hlreach.services.construct_service import build_index

    index, stats, _ = build_index(H, "fast")
    print(stats.total_labels, stats.wall_time_s)
================================================================================
"""
import heapq
import logging
import time
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from hlreach.config import settings
from hlreach.errors import ArgumentError
from hlreach.models import DualIndex, HLIndex, Hypergraph, HyperedgeOrder, IndexFlavor, Label, ReachabilityTuple
from hlreach.schemas import ConstructionStats, MinimizeStats
from hlreach.services.hypergraph_service import NeighborTable, compute_order, neighbors
from hlreach.services.minimize_service import minimize
from hlreach.services.oracle import ReachabilityOracle, mcd_bruteforce
from hlreach.services.query_service import merge_scan

logger = logging.getLogger(__name__)

__all__ = [
    "NeighborIndex",
    "build_basic",
    "build_fast",
    "build_index",
    "essential_violations",
    "is_covered_online",
    "mcd_bruteforce",
]


def _sources(order: HyperedgeOrder, method: str, progress: Optional[bool]) -> Iterable[int]:
    show = settings.SHOW_PROGRESS if progress is None else progress
    return tqdm(order.sequence, desc=f"build {method}", unit="hyperedge", disable=not show)


def _adjacency(H: Hypergraph, table: Optional[NeighborTable]) -> Callable[[int], List[Tuple[int, int]]]:
    if table is not None:
        return table.__getitem__
    return lambda e: neighbors(H, e)


# ============================================================================
# BASIC CONSTRUCTION
# ============================================================================

def is_covered_online(
    H: Hypergraph,
    order: HyperedgeOrder,
    labels: Sequence[Sequence[Label]],
    e: int,
    e_u: int,
    s: int,
    table: Optional[NeighborTable] = None,
) -> bool:
    """
    Check whether some hyperedge more important than e reaches both e and
    e_u along walks of overlap >= s.

    The partial index is consulted first: if it cannot connect a member of
    e_u with a member of e at level s, no covering hyperedge exists yet.
    Otherwise a BFS runs from both ends over the overlap >= s adjacency,
    growing the smaller frontier first.

    Args:
        H: Hypergraph
        order: Importance order
        labels: Labels emitted so far
        e: Current source hyperedge
        e_u: Popped hyperedge
        s: Walk overlap from e to e_u
        table: Precomputed neighbor lists; counted on the fly if omitted

    Returns:
        True if the tuple is covered and must not be labelled
    """
    rank = order.rank
    r = rank[e]
    if r == 0 or s > min(H.size(e), H.size(e_u)):
        return False

    a = H.edge_vertices[e_u][0]
    b = H.edge_vertices[e][0]
    reach, _ = merge_scan(labels[a], labels[b], rank)
    if reach < s:
        return False

    adjacent = _adjacency(H, table)
    starts = (e, e_u)
    seen = [{e}, {e_u}]
    frontier = [[e], [e_u]]
    found = [rank[e] < r, rank[e_u] < r]
    met = e == e_u

    while True:
        if found[0] and found[1]:
            return True
        if met and (found[0] or found[1]):
            return True

        for side in (0, 1):
            if not frontier[side]:
                # this side's BFS has the whole component
                return found[side] and starts[1 - side] in seen[side]

        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = seen[side], seen[1 - side]
        grown: List[int] = []
        for x in frontier[side]:
            for y, od in adjacent(x):
                if od < s or y in mine:
                    continue
                mine.add(y)
                grown.append(y)
                if rank[y] < r:
                    found[side] = True
                if y in other:
                    met = True
        frontier[side] = grown


def build_basic(
    H: Hypergraph,
    order: Optional[HyperedgeOrder] = None,
    stats: Optional[ConstructionStats] = None,
    progress: Optional[bool] = None,
    table: Optional[NeighborTable] = None,
) -> HLIndex:
    """
    Build the HL-index with an online cover check per popped tuple.

    Args:
        H: Hypergraph
        order: Importance order (computed if omitted)
        stats: Optional stats object to fill in
        progress: Show a tqdm bar (default: settings.SHOW_PROGRESS)
        table: Precomputed neighbor lists shared by the sweep and the
            cover checks; counted on the fly if omitted

    Returns:
        HLIndex with flavor BASIC
    """
    order = order or compute_order(H)
    stats = stats if stats is not None else ConstructionStats(method="basic")
    rank = order.rank
    started = time.perf_counter()

    labels: List[List[Label]] = [[] for _ in range(H.n)]
    visited_e = [-1] * H.m
    visited_v = [-1] * H.n
    adjacent = _adjacency(H, table)

    for e in _sources(order, "basic", progress):
        r = rank[e]
        heap = [(-H.size(e), r, e)]
        while heap:
            neg_s, _, e_u = heapq.heappop(heap)
            if visited_e[e_u] == e:
                continue
            visited_e[e_u] = e
            s = -neg_s

            if is_covered_online(H, order, labels, e, e_u, s, table):
                continue

            for u in H.edge_vertices[e_u]:
                if visited_v[u] != e:
                    visited_v[u] = e
                    labels[u].append(Label(e, s))

            for e_v, od in adjacent(e_u):
                if rank[e_v] <= r or visited_e[e_v] == e:
                    continue
                heapq.heappush(heap, (-min(s, od), rank[e_v], e_v))
                stats.queue_pushes += 1

    index = HLIndex(labels=labels, order=order, flavor=IndexFlavor.BASIC, original_ids=H.original_ids)
    stats.total_labels = index.total_labels
    stats.wall_time_s = time.perf_counter() - started
    logger.info(f"Basic build: {stats.total_labels} labels in {stats.wall_time_s:.3f}s")
    return index


# ============================================================================
# FAST CONSTRUCTION
# ============================================================================

class NeighborIndex:
    """
    Lazily built, shrinking neighbor lists used by the fast builder.

    M(e) is created on the first visit of e, holding every neighbor less
    important than the source of that epoch, in rank order. Entries only
    ever leave. Each list is an insertion-ordered dict {neighbor: OD}, so
    deletion is O(1) and iteration stays in rank order.
    """

    def __init__(self, H: Hypergraph, order: HyperedgeOrder):
        self.H = H
        self.order = order
        self.rows: List[Optional[Dict[int, int]]] = [None] * H.m
        self.resident = 0
        self.peak = 0
        self.insertions = 0

    def initialized(self, e: int) -> bool:
        return self.rows[e] is not None

    def initialize(self, e: int, source_rank: int) -> Dict[int, int]:
        rank = self.order.rank
        kept = [(other, od) for other, od in neighbors(self.H, e) if rank[other] > source_rank]
        kept.sort(key=lambda item: rank[item[0]])
        row = dict(kept)
        self.rows[e] = row
        self.resident += len(row)
        self.insertions += len(row)
        self.peak = max(self.peak, self.resident)
        return row

    def discard(self, e: int, other: int) -> None:
        """Drop other from M(e); no-op if M(e) is absent or lacks the entry."""
        row = self.rows[e]
        if row is not None and row.pop(other, None) is not None:
            self.resident -= 1


def build_fast(
    H: Hypergraph,
    order: Optional[HyperedgeOrder] = None,
    record_mcd: bool = False,
    progress: Optional[bool] = None,
) -> Tuple[HLIndex, DualIndex, ConstructionStats]:
    """
    Build the HL-index with MCD pruning and the neighbor index.

    MCD(e) is a lower bound on how well more important hyperedges already
    reach e; it is exact once e becomes the source. A source whose MCD
    equals its size is skipped, and walks no wider than the snapshot of
    its MCD are never pushed. Neighbor pairs whose overlap is at most the
    current walk width are covered by the source and dropped for good.

    Args:
        H: Hypergraph
        order: Importance order (computed if omitted)
        record_mcd: Store MCD(e) as seen at the start of every epoch
        progress: Show a tqdm bar (default: settings.SHOW_PROGRESS)

    Returns:
        (HLIndex with flavor FAST, DualIndex, ConstructionStats)
    """
    order = order or compute_order(H)
    rank = order.rank
    stats = ConstructionStats(method="fast")
    started = time.perf_counter()

    labels: List[List[Label]] = [[] for _ in range(H.n)]
    dual: List[List[Tuple[int, int]]] = [[] for _ in range(H.m)]
    mcd = [0] * H.m
    mcd_at_epoch = [0] * H.m if record_mcd else None
    visited_e = [-1] * H.m
    visited_v = [-1] * H.n
    nbr_index = NeighborIndex(H, order)

    for e in _sources(order, "fast", progress):
        r = rank[e]
        if mcd_at_epoch is not None:
            mcd_at_epoch[e] = mcd[e]
        if mcd[e] == H.size(e):
            stats.skipped_by_mcd += 1
            continue
        mcd_e = mcd[e]

        heap = [(-H.size(e), r, e)]
        while heap:
            neg_s, _, e_u = heapq.heappop(heap)
            if visited_e[e_u] == e:
                continue
            visited_e[e_u] = e
            s = -neg_s
            if e_u != e and s > mcd[e_u]:
                mcd[e_u] = s

            for u in H.edge_vertices[e_u]:
                if visited_v[u] != e:
                    visited_v[u] = e
                    labels[u].append(Label(e, s))
                    dual[e].append((u, s))

            row = nbr_index.rows[e_u]
            if row is None:
                row = nbr_index.initialize(e_u, r)

            stale: List[int] = []
            covered: List[int] = []
            for e_v, od in row.items():
                if rank[e_v] <= r:
                    stale.append(e_v)
                    continue
                if od > mcd_e and visited_e[e_v] != e:
                    heapq.heappush(heap, (-min(s, od), rank[e_v], e_v))
                    stats.queue_pushes += 1
                if od <= s:
                    covered.append(e_v)

            for e_v in stale:
                nbr_index.discard(e_u, e_v)
            for e_v in covered:
                nbr_index.discard(e_u, e_v)
                nbr_index.discard(e_v, e_u)

    index = HLIndex(labels=labels, order=order, flavor=IndexFlavor.FAST, original_ids=H.original_ids)
    stats.total_labels = index.total_labels
    stats.neighbor_index_peak = nbr_index.peak
    stats.neighbor_index_insertions = nbr_index.insertions
    stats.mcd_at_epoch = mcd_at_epoch
    stats.wall_time_s = time.perf_counter() - started
    logger.info(
        f"Fast build: {stats.total_labels} labels, {stats.skipped_by_mcd} sources skipped, "
        f"neighbor-index peak {stats.neighbor_index_peak}, {stats.wall_time_s:.3f}s"
    )
    return index, DualIndex(entries=dual), stats


# ============================================================================
# CHECKS AND PIPELINE
# ============================================================================

def essential_violations(
    H: Hypergraph,
    index: HLIndex,
    oracle: Optional[ReachabilityOracle] = None,
) -> List[ReachabilityTuple]:
    """
    Labels (e, s) of u for which a more important hyperedge e_w reaches u
    and e both at level >= s. Empty for a correctly built index.
    """
    oracle = oracle or ReachabilityOracle(H)
    vte = oracle.vte_matrix()
    table = oracle.bottleneck
    sequence = index.order.sequence
    rank = index.order.rank

    violations: List[ReachabilityTuple] = []
    for u, row in enumerate(index.labels):
        for e, s in row:
            for e_w in sequence[: rank[e]]:
                if vte[u, e_w] >= s and table[e_w, e] >= s:
                    violations.append(ReachabilityTuple(u, e, s))
                    break
    return violations


def build_index(
    H: Hypergraph,
    method: str = "fast",
    order: Optional[HyperedgeOrder] = None,
    progress: Optional[bool] = None,
) -> Tuple[HLIndex, ConstructionStats, Optional[MinimizeStats]]:
    """
    Build an index by method name: basic, fast or minimal.

    Returns:
        (index, construction stats, minimize stats or None)
    """
    method = method.lower()
    order = order or compute_order(H)
    logger.info(f"Building {method} index: n={H.n}, m={H.m}")

    if method == "basic":
        stats = ConstructionStats(method="basic")
        index = build_basic(H, order, stats=stats, progress=progress)
        return index, stats, None
    if method == "fast":
        index, _, stats = build_fast(H, order, progress=progress)
        return index, stats, None
    if method == "minimal":
        index, dual, stats = build_fast(H, order, progress=progress)
        minimal, minimize_stats = minimize(index, dual, order)
        stats.method = "minimal"
        stats.total_labels = minimal.total_labels
        stats.wall_time_s += minimize_stats.wall_time_s
        return minimal, stats, minimize_stats

    raise ArgumentError(f"unknown build method {method!r} (expected basic, fast or minimal)")
