"""
Benchmark and scalability service.

Times index construction and per-query latency of the online engines
against the index on a seeded random workload, and sweeps index size
and build time over random hyperedge samples of a graph.
"""
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from hlreach.config import settings
from hlreach.errors import ArgumentError
from hlreach.models import HLIndex, Hypergraph
from hlreach.persistence import serialized_size
from hlreach.schemas import BenchReport, EngineLatency, ScalePoint, SearchConfig
from hlreach.services.construct_service import build_index
from hlreach.services.hypergraph_service import compute_order, graph_bytes, sample_hyperedges, stats
from hlreach.services.online_search import OnlineSearcher
from hlreach.services.query_service import mr_query, s_reach_query

logger = logging.getLogger(__name__)

ENGINES = ("online", "online-pre", "index")
DEFAULT_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)


def _latency(engine: str, samples_us: Sequence[float]) -> EngineLatency:
    series = pd.Series(samples_us, dtype="float64")
    return EngineLatency(
        engine=engine,
        queries=len(series),
        mean_us=float(series.mean()),
        p50_us=float(series.quantile(0.50)),
        p95_us=float(series.quantile(0.95)),
        max_us=float(series.max()),
    )


def _time_engine(run: Callable[..., object], workload: Sequence[Tuple[int, ...]]) -> Tuple[List[float], List[object]]:
    samples: List[float] = []
    answers: List[object] = []
    for query in workload:
        started = time.perf_counter()
        answers.append(run(*query))
        samples.append((time.perf_counter() - started) * 1e6)
    return samples, answers


def _with_speedups(latencies: List[EngineLatency]) -> List[EngineLatency]:
    baseline = next((item.mean_us for item in latencies if item.engine == "online"), None)
    if baseline:
        for item in latencies:
            item.speedup_vs_online = baseline / item.mean_us if item.mean_us > 0 else None
    return latencies


def run_bench(
    H: Hypergraph,
    queries: Optional[int] = None,
    seed: Optional[int] = None,
    methods: Optional[Sequence[str]] = None,
    build_methods: Sequence[str] = ("fast", "minimal"),
    progress: Optional[bool] = None,
) -> BenchReport:
    """
    Build indexes and time MR / s-reach queries per engine.

    Args:
        H: Hypergraph to benchmark
        queries: Random vertex pairs (default: settings.BENCH_QUERIES)
        seed: Workload seed (default: settings.BENCH_SEED)
        methods: Query engines among online, online-pre, index
            (default: settings.bench_methods)
        build_methods: Index builders to time; the last one serves the
            "index" engine
        progress: Show tqdm bars during builds

    Returns:
        BenchReport; disagreements counts queries where engines differ
    """
    queries = queries if queries is not None else settings.BENCH_QUERIES
    seed = seed if seed is not None else settings.BENCH_SEED
    methods = list(methods) if methods is not None else settings.bench_methods
    unknown = [name for name in methods if name not in ENGINES]
    if unknown:
        raise ArgumentError(f"unknown bench engine(s) {unknown}; expected a subset of {list(ENGINES)}")
    if H.n == 0:
        raise ArgumentError("cannot benchmark an empty hypergraph")

    graph = stats(H)
    report = BenchReport(graph=graph, graph_bytes=graph_bytes(H))
    order = compute_order(H)

    index: Optional[HLIndex] = None
    for method in build_methods:
        index, construction, _ = build_index(H, method, order, progress=progress)
        report.build_times_s[method] = construction.wall_time_s
        report.index_labels[method] = index.total_labels
        report.index_bytes[method] = serialized_size(index)
        if method != "basic":
            report.neighbor_index_peak = max(report.neighbor_index_peak, construction.neighbor_index_peak)

    rng = np.random.default_rng(seed)
    pairs = [tuple(int(x) for x in row) for row in rng.integers(H.n, size=(queries, 2))]
    thresholds = [int(s) for s in rng.integers(1, max(1, graph.delta) + 1, size=queries)]
    reach_workload = [(u, v, s) for (u, v), s in zip(pairs, thresholds)]

    runners: Dict[str, Tuple[Callable, Callable]] = {}
    if "online" in methods:
        searcher = OnlineSearcher(H, SearchConfig(neighbor_mode="on-the-fly"))
        runners["online"] = (searcher.mr, searcher.s_reach)
    if "online-pre" in methods:
        searcher_pre = OnlineSearcher(H, SearchConfig(neighbor_mode="precomputed"))
        runners["online-pre"] = (searcher_pre.mr, searcher_pre.s_reach)
    if "index" in methods:
        if index is None:
            raise ArgumentError("the index engine needs at least one build method")
        runners["index"] = (
            lambda u, v: mr_query(index, u, v).value,
            lambda u, v, s: s_reach_query(index, u, v, s).value,
        )

    answers: Dict[str, List[object]] = {}
    for engine, (mr_run, reach_run) in runners.items():
        samples, answers[engine] = _time_engine(mr_run, pairs)
        report.latencies.append(_latency(engine, samples))
        reach_samples, _ = _time_engine(reach_run, reach_workload)
        report.s_reach_latencies.append(_latency(engine, reach_samples))
        logger.info(f"Engine {engine}: mean {report.latencies[-1].mean_us:.1f}us over {queries} queries")

    _with_speedups(report.latencies)
    _with_speedups(report.s_reach_latencies)

    if answers:
        columns = list(answers.values())
        report.disagreements = sum(1 for row in zip(*columns) if len(set(row)) > 1)
    if report.disagreements:
        logger.error(f"Engines disagree on {report.disagreements} of {queries} queries")
    return report


def latency_frame(report: BenchReport) -> pd.DataFrame:
    """MR and s-reach latencies side by side, one row per engine."""
    mr = pd.DataFrame([item.model_dump() for item in report.latencies]).set_index("engine")
    reach = pd.DataFrame([item.model_dump() for item in report.s_reach_latencies]).set_index("engine")
    return mr.join(reach[["mean_us", "p95_us"]], rsuffix="_s_reach")


def scale_sweep(
    H: Hypergraph,
    fractions: Sequence[float] = DEFAULT_FRACTIONS,
    seed: int = 0,
    progress: Optional[bool] = None,
) -> List[ScalePoint]:
    """
    Build fast and minimal indexes on random hyperedge samples.

    Returns:
        One ScalePoint per fraction, in the given order
    """
    points: List[ScalePoint] = []
    for fraction in fractions:
        sample = sample_hyperedges(H, fraction, seed)
        order = compute_order(sample)
        fast, fast_stats, _ = build_index(sample, "fast", order, progress=progress)
        minimal, minimal_stats, _ = build_index(sample, "minimal", order, progress=progress)
        points.append(
            ScalePoint(
                fraction=fraction,
                n=sample.n,
                m=sample.m,
                fast_labels=fast.total_labels,
                minimal_labels=minimal.total_labels,
                fast_bytes=serialized_size(fast),
                minimal_bytes=serialized_size(minimal),
                fast_time_s=fast_stats.wall_time_s,
                minimal_time_s=minimal_stats.wall_time_s,
            )
        )
        logger.info(f"Scale {fraction:.0%}: m={sample.m}, fast={fast.total_labels}, minimal={minimal.total_labels}")
    return points


def scale_frame(points: Sequence[ScalePoint]) -> pd.DataFrame:
    return pd.DataFrame([point.model_dump() for point in points]).set_index("fraction")
