"""
================================================================================
Verification Service - Randomized Cross-Engine Suite
================================================================================

DESCRIPTION:
    Generates seeded random hypergraphs and compares, over all vertex
    pairs, the union-find oracle against the online search (both neighbor
    modes) and the basic, fast and minimal indexes. Zero tolerance: any
    differing value is a failure.

    Also records index economy per graph: the minimal index is never
    larger than the fast one, and the neighbor-index peak stays at or
    below the total neighbor count (strictly below when anything overlaps).

USAGE:
    from hlreach.services.verify_service import run_suite

    report = run_suite(graphs=200, max_n=60, seed=1)
    assert report.mismatches == 0
================================================================================
"""
import logging
from typing import Optional

import numpy as np
from tqdm import tqdm

from hlreach.config import settings
from hlreach.generator import generate_random
from hlreach.models import Hypergraph
from hlreach.schemas import GenConfig, GraphCheck, SearchConfig, SuiteReport
from hlreach.services.construct_service import build_basic, build_fast
from hlreach.services.hypergraph_service import NeighborTable, compute_order
from hlreach.services.minimize_service import minimize
from hlreach.services.online_search import OnlineSearcher
from hlreach.services.oracle import ReachabilityOracle
from hlreach.services.query_service import merge_scan

logger = logging.getLogger(__name__)

BIAS_LEVELS = (0.0, 0.3, 0.6, 0.9)
MAX_EDGE_SIZE = 8


def suite_config(seed: int, max_n: int, rng: np.random.Generator) -> GenConfig:
    """Draw one suite graph's shape: n in [5, max_n], m in [5, 2 max_n], mixed bias."""
    n = int(rng.integers(5, max(5, max_n) + 1))
    m = int(rng.integers(5, max(5, 2 * max_n) + 1))
    return GenConfig(
        n=n,
        m=m,
        max_size=min(MAX_EDGE_SIZE, n),
        bias=float(BIAS_LEVELS[int(rng.integers(len(BIAS_LEVELS)))]),
        seed=seed,
    )


def check_graph(H: Hypergraph, seed: int = 0) -> GraphCheck:
    """
    All-pairs comparison of the five engines against the oracle on one graph.

    Returns:
        GraphCheck with the mismatch count and index economy figures
    """
    truth = ReachabilityOracle(H).all_pairs()
    order = compute_order(H)

    table = NeighborTable(H)

    basic = build_basic(H, order, progress=False, table=table)
    fast, dual, fast_stats = build_fast(H, order, progress=False)
    minimal, _ = minimize(fast, dual, order)

    online = OnlineSearcher(H, SearchConfig(neighbor_mode="on-the-fly"))
    online_pre = OnlineSearcher(H, SearchConfig(neighbor_mode="precomputed"), table)
    rank = order.rank

    pairs = mismatches = 0
    for u in range(H.n):
        for v in range(u, H.n):
            pairs += 1
            expected = int(truth[u, v])
            answers = (
                online.mr(u, v),
                online_pre.mr(u, v),
                merge_scan(basic.labels[u], basic.labels[v], rank)[0],
                merge_scan(fast.labels[u], fast.labels[v], rank)[0],
                merge_scan(minimal.labels[u], minimal.labels[v], rank)[0],
            )
            if any(answer != expected for answer in answers):
                mismatches += 1
                logger.debug(f"seed={seed} pair=({u}, {v}) expected {expected}, got {answers}")

    return GraphCheck(
        seed=seed,
        n=H.n,
        m=H.m,
        pairs=pairs,
        mismatches=mismatches,
        fast_labels=fast.total_labels,
        minimal_labels=minimal.total_labels,
        neighbor_index_peak=fast_stats.neighbor_index_peak,
        neighbor_total=table.total,
    )


def run_suite(
    graphs: Optional[int] = None,
    max_n: Optional[int] = None,
    seed: int = 1,
    progress: Optional[bool] = None,
) -> SuiteReport:
    """
    Run the randomized cross-engine suite.

    Args:
        graphs: Number of graphs (default: settings.VERIFY_GRAPHS)
        max_n: Largest vertex count (default: settings.VERIFY_MAX_N)
        seed: Suite seed; graph i uses a seed derived from it
        progress: Show a tqdm bar (default: settings.SHOW_PROGRESS)

    Returns:
        SuiteReport; failures lists every graph with a mismatch or an
        economy violation
    """
    graphs = graphs if graphs is not None else settings.VERIFY_GRAPHS
    max_n = max_n if max_n is not None else settings.VERIFY_MAX_N
    show = settings.SHOW_PROGRESS if progress is None else progress

    rng = np.random.default_rng(seed)
    report = SuiteReport()
    logger.info(f"Verify suite: {graphs} graphs, max n={max_n}, seed={seed}")

    for _ in tqdm(range(graphs), desc="verify", unit="graph", disable=not show):
        graph_seed = int(rng.integers(2 ** 31))
        cfg = suite_config(graph_seed, max_n, rng)
        H = generate_random(cfg)
        check = check_graph(H, graph_seed)

        report.graphs += 1
        report.pairs_checked += check.pairs
        report.mismatches += check.mismatches

        economy_ok = (
            check.minimal_labels <= check.fast_labels
            and check.neighbor_index_peak <= check.neighbor_total
        )
        if not economy_ok:
            report.economy_violations += 1
        if check.neighbor_index_peak < check.neighbor_total:
            report.strict_economy += 1
        if check.mismatches or not economy_ok:
            report.failures.append(check)
            logger.error(f"Graph seed={graph_seed} failed: {check.mismatches} mismatches, economy ok={economy_ok}")

    logger.info(
        f"Verify suite done: {report.graphs} graphs, {report.pairs_checked} pairs, "
        f"{report.mismatches} mismatches, {report.economy_violations} economy violations"
    )
    return report
