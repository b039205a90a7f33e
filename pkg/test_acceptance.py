#!/usr/bin/env python3
"""
Acceptance runs: every engine against the oracle on seeded random graphs
"""
import time

import numpy as np
import pytest

from hlreach.generator import generate_random
from hlreach.schemas import ConstructionStats, GenConfig
from hlreach.services.construct_service import build_basic, build_fast, essential_violations
from hlreach.services.hypergraph_service import compute_order, total_neighbor_pairs
from hlreach.services.minimize_service import minimize, verify_completeness, verify_necessity
from hlreach.services.online_search import OnlineSearcher
from hlreach.services.oracle import ReachabilityOracle
from hlreach.services.query_service import mr_query
from hlreach.services.verify_service import check_graph, run_suite


class TestSuite:
    def test_quick_suite(self):
        report = run_suite(graphs=20, max_n=20, seed=1, progress=False)
        assert report.graphs == 20
        assert report.mismatches == 0
        assert report.failures == []

    @pytest.mark.slow
    def test_full_suite(self):
        report = run_suite(graphs=200, max_n=60, seed=1, progress=False)
        assert report.mismatches == 0
        assert report.economy_violations == 0

    def test_fixture_check(self, fixture_graph):
        check = check_graph(fixture_graph)
        assert check.mismatches == 0
        assert check.pairs == 12 * 13 // 2
        assert check.minimal_labels <= check.fast_labels
        assert check.neighbor_index_peak < check.neighbor_total == 18


class TestIndexProperties:
    def test_minimality(self, graph_factory):
        for H in graph_factory(count=30, max_n=40, max_m=80, seed=81):
            index, dual, _ = build_fast(H)
            minimal, _ = minimize(index, dual)
            oracle = ReachabilityOracle(H)
            assert verify_completeness(minimal, H, oracle).passed
            assert verify_necessity(minimal, H, oracle).passed

    def test_mcd_exact(self, graph_factory):
        for H in graph_factory(count=50, max_n=25, max_m=30, seed=82):
            order = compute_order(H)
            _, _, stats = build_fast(H, order, record_mcd=True)
            oracle = ReachabilityOracle(H)
            assert stats.mcd_at_epoch == [oracle.mcd(order, e) for e in range(H.m)]

    def test_essential_labels_only(self, graph_factory):
        for H in graph_factory(count=30, max_n=15, max_m=30, seed=83):
            index, _, _ = build_fast(H)
            assert essential_violations(H, index) == []

    def test_neighbor_index_economy(self, graph_factory):
        strict = overlapping = 0
        for H in graph_factory(count=40, max_n=30, max_m=50, seed=84, bias_levels=(0.6, 0.9)):
            _, _, stats = build_fast(H)
            total = total_neighbor_pairs(H)
            assert stats.neighbor_index_peak <= total
            if total:
                overlapping += 1
                strict += stats.neighbor_index_peak < total
        assert overlapping > 0
        assert strict >= 0.9 * overlapping


@pytest.fixture(scope="module")
def large_graph():
    return generate_random(GenConfig(n=50_000, m=100_000, max_size=12, bias=0.6, seed=7))


@pytest.fixture(scope="module")
def large_index(large_graph):
    index, _, stats = build_fast(large_graph, progress=False)
    return index, stats


@pytest.mark.slow
class TestPerformance:
    QUERY_PAIRS = 1000
    ONLINE_PAIRS = 200

    def test_query_latency_smoke(self):
        H = generate_random(GenConfig(n=2000, m=3000, max_size=10, bias=0.6, seed=5))
        index, dual, _ = build_fast(H)
        minimal, _ = minimize(index, dual)
        started = time.perf_counter()
        for u in range(0, H.n, 7):
            mr_query(minimal, u, (u * 31) % H.n)
        assert time.perf_counter() - started < 5.0

    def test_fast_build_completes_on_large_graph(self, large_graph, large_index):
        index, stats = large_index
        assert index.n == large_graph.n
        assert index.m == large_graph.m
        assert stats.total_labels == index.total_labels > 0

    def test_index_queries_beat_online_search(self, large_graph, large_index):
        index, _ = large_index
        rng = np.random.default_rng(11)
        pairs = [(int(u), int(v)) for u, v in rng.integers(large_graph.n, size=(self.QUERY_PAIRS, 2))]

        started = time.perf_counter()
        answers = [mr_query(index, u, v).value for u, v in pairs]
        index_mean = (time.perf_counter() - started) / len(pairs)

        searcher = OnlineSearcher(large_graph)
        sample = pairs[: self.ONLINE_PAIRS]
        started = time.perf_counter()
        online = [searcher.mr(u, v) for u, v in sample]
        online_mean = (time.perf_counter() - started) / len(sample)

        assert online == answers[: self.ONLINE_PAIRS]
        assert online_mean >= 10 * index_mean

    def test_fast_build_beats_basic(self):
        H = generate_random(GenConfig(n=1000, m=2000, max_size=8, bias=0.6, seed=12))
        order = compute_order(H)
        basic_stats = ConstructionStats(method="basic")
        basic = build_basic(H, order, stats=basic_stats, progress=False)
        fast, _, fast_stats = build_fast(H, order, progress=False)
        assert fast_stats.wall_time_s < basic_stats.wall_time_s
        rng = np.random.default_rng(13)
        for u, v in rng.integers(H.n, size=(200, 2)):
            assert mr_query(fast, int(u), int(v)).value == mr_query(basic, int(u), int(v)).value
