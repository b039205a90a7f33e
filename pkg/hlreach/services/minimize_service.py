"""
Minimal HL-index generation and the completeness / necessity checks.

A label (e, s_u) of u is redundant when every vertex v still waiting in
D(e) can be answered by another live common hub at level >= s_v. D(e) is
walked in non-ascending s, so the pair (u, v) through e is worth exactly
s_v for every v behind u.
"""
import logging
import time
from typing import Dict, List, Optional, Set, Tuple

from hlreach.models import DualIndex, HLIndex, Hypergraph, HyperedgeOrder, IndexFlavor, Label
from hlreach.schemas import CompletenessReport, MinimizeStats, Mismatch, NecessityReport, RedundantLabel
from hlreach.services.oracle import ReachabilityOracle
from hlreach.services.query_service import merge_scan

logger = logging.getLogger(__name__)


def minimize(
    index: HLIndex,
    dual: DualIndex,
    order: Optional[HyperedgeOrder] = None,
) -> Tuple[HLIndex, MinimizeStats]:
    """
    Remove redundant labels from a complete index.

    Args:
        index: Complete index from build_fast
        dual: Its dual, D(e) non-ascending in s
        order: Importance order (default: index.order)

    Returns:
        (minimal HLIndex, MinimizeStats)

    Raises:
        IndexIntegrityError: index and dual are not transposes
    """
    dual.check_transpose(index)
    order = order or index.order
    started = time.perf_counter()
    stats = MinimizeStats()

    # working copy; dicts keep rank order under deletion
    live: List[Dict[int, int]] = [dict(row) for row in index.labels]
    stats.l_v = max((len(row) for row in live), default=0)

    inverted_stamp = [-1] * index.m
    inverted: List[List[Tuple[int, int]]] = [[] for _ in range(index.m)]
    in_dual = [-1] * index.n
    non_redundant = [-1] * index.n

    for e in order.sequence:
        entries = dual.entries[e]
        if not entries:
            continue
        stats.theta = max(stats.theta, len(entries))

        for v, _ in entries:
            in_dual[v] = e

        touched: List[int] = []
        for v, s_v in entries:
            for e_other, s_other in live[v].items():
                if e_other == e or s_other < s_v:
                    continue
                if inverted_stamp[e_other] != e:
                    inverted_stamp[e_other] = e
                    inverted[e_other] = []
                    touched.append(e_other)
                inverted[e_other].append((v, s_v))
        if touched:
            stats.beta = max(stats.beta, max(len(inverted[e_other]) for e_other in touched))

        remaining = len(entries)
        nr_count = 0
        for position, (u, s_u) in enumerate(entries):
            if nr_count == remaining:
                break
            stats.labels_examined += 1

            supported: Set[int] = set()
            for e_other, s_other in live[u].items():
                if e_other == e or inverted_stamp[e_other] != e:
                    continue
                for v, s_v in inverted[e_other]:
                    if in_dual[v] == e and s_other >= s_v:
                        supported.add(v)
                if len(supported) == remaining:
                    break

            if len(supported) < remaining or non_redundant[u] == e:
                for w, _ in entries[position:]:
                    if w not in supported and non_redundant[w] != e:
                        non_redundant[w] = e
                        nr_count += 1
            else:
                del live[u][e]
                stats.labels_removed += 1

            if non_redundant[u] == e:
                non_redundant[u] = -1
                nr_count -= 1
            in_dual[u] = -1
            remaining -= 1

    labels = [[Label(e, s) for e, s in row.items()] for row in live]
    minimal = HLIndex(labels=labels, order=index.order, flavor=IndexFlavor.MINIMAL, original_ids=index.original_ids)
    stats.labels_kept = minimal.total_labels
    stats.wall_time_s = time.perf_counter() - started
    logger.info(
        f"Minimized index: removed {stats.labels_removed} of {index.total_labels} labels "
        f"(theta={stats.theta}, beta={stats.beta}) in {stats.wall_time_s:.3f}s"
    )
    return minimal, stats


def verify_completeness(
    index: HLIndex,
    H: Hypergraph,
    oracle: Optional[ReachabilityOracle] = None,
) -> CompletenessReport:
    """All-pairs comparison of index answers against the oracle."""
    report = CompletenessReport()
    if H.n == 0:
        return report

    truth = (oracle or ReachabilityOracle(H)).all_pairs()
    rank = index.order.rank
    for u in range(H.n):
        for v in range(u, H.n):
            got, _ = merge_scan(index.labels[u], index.labels[v], rank)
            report.pairs_checked += 1
            if got != truth[u, v]:
                report.mismatches.append(Mismatch(u=u, v=v, expected=int(truth[u, v]), got=got))
    return report


def verify_necessity(
    index: HLIndex,
    H: Hypergraph,
    oracle: Optional[ReachabilityOracle] = None,
) -> NecessityReport:
    """
    Drop each label in turn and look for a query it was holding up.

    Removing a label of u only changes queries (u, *), so those are the
    only ones re-run. A label whose removal leaves every answer intact is
    reported as redundant.
    """
    report = NecessityReport()
    if H.n == 0:
        return report

    truth = (oracle or ReachabilityOracle(H)).all_pairs()
    rank = index.order.rank
    for u, row in enumerate(index.labels):
        for position, (e, s) in enumerate(row):
            report.labels_checked += 1
            trimmed = row[:position] + row[position + 1:]
            load_bearing = False
            for v in range(H.n):
                other = trimmed if v == u else index.labels[v]
                got, _ = merge_scan(trimmed, other, rank)
                if got != truth[u, v]:
                    load_bearing = True
                    break
            if not load_bearing:
                report.redundant.append(RedundantLabel(vertex=u, hyperedge=e, s=s))
    return report
