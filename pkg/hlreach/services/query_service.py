"""
================================================================================
Query Service - Max-Reachability and s-Reachability over an HL-index
================================================================================

DESCRIPTION:
    Answers MR(u, v) and "does u s-reach v" from the label lists alone.
    Both label lists are sorted by hub rank, so one two-cursor pass finds
    every common hub; the answer is the best min(s_u, s_v) over them.

FEATURES:
    - Single queries returning the value and the number of labels scanned
    - Batch queries over a shared index with a thread pool, order preserved,
      per-pair errors reported in place instead of aborting the batch
    - Label-set statistics (l, l_v, mean labels, theta)

USAGE:
    from hlreach.services.query_service import mr_query, batch_query

    result = mr_query(index, u, v)
    print(result.value, result.labels_scanned)
================================================================================
"""
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import List, Optional, Sequence, Tuple

from hlreach.config import settings
from hlreach.errors import ArgumentError
from hlreach.models import HLIndex, Label, QueryResult
from hlreach.schemas import IndexStats

logger = logging.getLogger(__name__)


def merge_scan(
    labels_u: Sequence[Label],
    labels_v: Sequence[Label],
    rank: Sequence[int],
    k: int = 0,
    stop_on_hit: bool = False,
) -> Tuple[int, int]:
    """
    Two-cursor merge over rank-sorted label lists.

    Args:
        labels_u: Labels of the first vertex, ascending by hub rank
        labels_v: Labels of the second vertex, ascending by hub rank
        rank: Hub rank per hyperedge id
        k: Starting accumulator; labels with s <= k are skipped
        stop_on_hit: Return as soon as one common hub beats k

    Returns:
        (best value found or the initial k, labels scanned)
    """
    i = j = 0
    len_u = len(labels_u)
    len_v = len(labels_v)
    while i < len_u and j < len_v:
        e_u, s_u = labels_u[i]
        e_v, s_v = labels_v[j]
        if s_u <= k or rank[e_u] < rank[e_v]:
            i += 1
        elif s_v <= k or rank[e_u] > rank[e_v]:
            j += 1
        else:
            k = min(s_u, s_v)
            i += 1
            j += 1
            if stop_on_hit:
                return k, i + j
    return k, i + j


def mr_query(index: HLIndex, u: int, v: int) -> QueryResult:
    """MR(u, v) from the index; value 0 when u and v share no hub."""
    index.check_vertex(u)
    index.check_vertex(v)
    value, scanned = merge_scan(index.labels[u], index.labels[v], index.order.rank)
    return QueryResult(value=value, labels_scanned=scanned)


def s_reach_query(index: HLIndex, u: int, v: int, s: int) -> QueryResult:
    """True iff u s-reaches v. The merge starts at k = s - 1 and stops at the first hit."""
    if s < 1:
        raise ArgumentError(f"s must be >= 1, got {s}")
    index.check_vertex(u)
    index.check_vertex(v)
    value, scanned = merge_scan(index.labels[u], index.labels[v], index.order.rank, k=s - 1, stop_on_hit=True)
    return QueryResult(value=value >= s, labels_scanned=scanned)


def _answer(index: HLIndex, pair: Sequence[int]) -> QueryResult:
    if len(pair) == 2:
        return mr_query(index, pair[0], pair[1])
    if len(pair) == 3:
        return s_reach_query(index, pair[0], pair[1], pair[2])
    raise ArgumentError(f"expected (u, v) or (u, v, s), got {tuple(pair)}")


def batch_query(index: HLIndex, pairs: Sequence[Sequence[int]], threads: Optional[int] = None) -> List[QueryResult]:
    """
    Answer many queries concurrently over one shared index.

    Each pair is (u, v) for MR or (u, v, s) for s-reachability. Results come
    back in input order; a failing pair yields a QueryResult with value
    None and the error message, and the rest of the batch still runs.

    Args:
        index: HL-index to query
        pairs: Query tuples
        threads: Worker count (default: settings.BATCH_THREADS)

    Returns:
        One QueryResult per input pair, same order
    """
    if not pairs:
        return []

    threads = threads or settings.BATCH_THREADS
    results: List[Optional[QueryResult]] = [None] * len(pairs)
    failures = 0

    with ThreadPoolExecutor(max_workers=threads) as executor:
        future_to_position = {executor.submit(_answer, index, pair): position for position, pair in enumerate(pairs)}

        for future in as_completed(future_to_position):
            position = future_to_position[future]
            try:
                results[position] = future.result()
            except Exception as e:
                failures += 1
                logger.debug(f"Query {position} {tuple(pairs[position])} failed: {e}")
                results[position] = QueryResult(value=None, labels_scanned=0, error=str(e))

    if failures:
        logger.warning(f"Batch finished with {failures}/{len(pairs)} failed queries")
    return results


def index_stats(index: HLIndex) -> IndexStats:
    """Label-set sizes: total l, l_v = max |L(u)|, mean, theta = max |D(e)|."""
    per_hub = [0] * index.m
    for row in index.labels:
        for e, _ in row:
            per_hub[e] += 1
    sizes = [len(row) for row in index.labels]
    return IndexStats(
        flavor=index.flavor.value,
        n=index.n,
        m=index.m,
        total_labels=sum(sizes),
        l_v=max(sizes, default=0),
        mean_labels=sum(sizes) / len(sizes) if sizes else 0.0,
        theta=max(per_hub, default=0),
    )
