#!/usr/bin/env python3
"""
Tests for walk overlap, the online bidirectional search and the union-find oracle
"""
import itertools

import numpy as np
import pytest

from hlreach.errors import ArgumentError, InvalidWalkError
from hlreach.models import Hypergraph
from hlreach.schemas import SearchConfig
from hlreach.services.online_search import OnlineSearcher, mr_online, wod
from hlreach.services.oracle import ReachabilityOracle, mr_oracle, s_reach_oracle, vte_oracle
from hlreach.union_find import UnionFind

ALL_CONFIGS = [
    SearchConfig(neighbor_mode=mode, early_global_cutoff=cutoff)
    for mode, cutoff in itertools.product(["on-the-fly", "precomputed"], [True, False])
]


class TestWod:
    def test_two_step_walk(self, fixture_graph, eid):
        assert wod(fixture_graph, [eid(2), eid(5), eid(3)]) == 1

    def test_single_hyperedge_is_size(self, fixture_graph, eid):
        assert wod(fixture_graph, [eid(2)]) == 6

    def test_three_hyperedges(self, fixture_graph, eid):
        assert wod(fixture_graph, [eid(7), eid(2), eid(5)]) == 2

    def test_non_adjacent_step(self, fixture_graph, eid):
        with pytest.raises(InvalidWalkError):
            wod(fixture_graph, [eid(1), eid(2)])

    def test_empty_walk(self, fixture_graph):
        with pytest.raises(InvalidWalkError):
            wod(fixture_graph, [])


class TestOnlineSearch:
    def test_fixture_examples(self, fixture_graph, vid):
        assert mr_online(fixture_graph, vid(1), vid(12)) == 2
        assert mr_online(fixture_graph, vid(5), vid(9)) == 2
        assert mr_online(fixture_graph, vid(6), vid(9)) == 2

    def test_self_pair_is_largest_hyperedge(self, fixture_graph, vid):
        # v3 sits in e2 (6), e4 (4) and e7 (3)
        assert mr_online(fixture_graph, vid(3), vid(3)) == 6

    def test_disconnected(self):
        H = Hypergraph.from_edge_lists([[0, 1], [2, 3]])
        assert mr_online(H, 0, 3) == 0

    def test_out_of_range(self, fixture_graph):
        with pytest.raises(ArgumentError):
            mr_online(fixture_graph, 0, 12)

    def test_configs_agree_with_oracle(self, graph_factory):
        for H in graph_factory(count=20, max_n=25, max_m=30, seed=21):
            truth = ReachabilityOracle(H).all_pairs()
            for cfg in ALL_CONFIGS:
                searcher = OnlineSearcher(H, cfg)
                for u in range(H.n):
                    for v in range(H.n):
                        assert searcher.mr(u, v) == truth[u, v], (cfg, u, v)

    def test_symmetric(self, fixture_graph):
        searcher = OnlineSearcher(fixture_graph)
        for u in range(fixture_graph.n):
            for v in range(fixture_graph.n):
                assert searcher.mr(u, v) == searcher.mr(v, u)

    def test_invariant_under_hyperedge_relabeling(self, graph_factory):
        H = next(graph_factory(count=1, max_n=20, max_m=25, seed=4))
        rng = np.random.default_rng(0)
        permutation = rng.permutation(H.m)
        shuffled = Hypergraph.from_edge_lists([H.edge_vertices[int(e)] for e in permutation], n=H.n)
        a = OnlineSearcher(H)
        b = OnlineSearcher(shuffled)
        for u in range(H.n):
            for v in range(H.n):
                assert a.mr(u, v) == b.mr(u, v)

    def test_stats_counted(self, fixture_graph, vid):
        searcher = OnlineSearcher(fixture_graph)
        searcher.mr(vid(1), vid(12))
        assert searcher.stats.queries == 1
        assert searcher.stats.pops > 0

    def test_reused_searcher_matches_fresh_ones(self, graph_factory):
        H = next(graph_factory(count=1, max_n=40, max_m=60, seed=22))
        searcher = OnlineSearcher(H)
        rng = np.random.default_rng(5)
        pairs = [(int(u), int(v)) for u, v in rng.integers(H.n, size=(300, 2))]
        first = [searcher.mr(u, v) for u, v in pairs]
        assert [searcher.mr(u, v) for u, v in pairs] == first
        assert first == [mr_online(H, u, v) for u, v in pairs]
        assert searcher.stats.queries == 2 * len(pairs)

    def test_s_reach(self, fixture_graph, vid):
        searcher = OnlineSearcher(fixture_graph, SearchConfig(neighbor_mode="precomputed"))
        assert searcher.s_reach(vid(1), vid(10), 2) is True
        assert searcher.s_reach(vid(5), vid(9), 3) is False
        with pytest.raises(ArgumentError):
            searcher.s_reach(vid(1), vid(10), 0)


class TestOracle:
    def test_mr_example(self, fixture_graph, vid):
        assert mr_oracle(fixture_graph, vid(6), vid(9)) == 2

    def test_disjoint_components(self):
        H = Hypergraph.from_edge_lists([[0, 1], [2, 3]])
        assert mr_oracle(H, 0, 2) == 0

    def test_single_hyperedge_self_pair(self):
        H = Hypergraph.from_edge_lists([[0, 1, 2, 3]])
        assert mr_oracle(H, 0, 0) == 4

    def test_vte(self, fixture_graph, vid, eid):
        assert vte_oracle(fixture_graph, vid(9), eid(2)) == 2
        assert vte_oracle(fixture_graph, vid(1), eid(2)) == 2
        assert vte_oracle(fixture_graph, vid(3), eid(2)) >= 6

    def test_s_reach(self, fixture_graph, vid):
        assert s_reach_oracle(fixture_graph, vid(1), vid(10), 2) is True
        assert s_reach_oracle(fixture_graph, vid(5), vid(9), 3) is False
        assert s_reach_oracle(fixture_graph, vid(4), vid(4), 1) is True
        with pytest.raises(ArgumentError):
            s_reach_oracle(fixture_graph, vid(1), vid(2), 0)

    def test_shared_hyperedge_lower_bound(self, graph_factory):
        for H in graph_factory(count=10, max_n=20, max_m=20, seed=8):
            truth = ReachabilityOracle(H).all_pairs()
            for e, row in enumerate(H.edge_vertices):
                for u in row:
                    for v in row:
                        assert truth[u, v] >= H.size(e)

    def test_monotone_s_reach(self, fixture_graph):
        oracle = ReachabilityOracle(fixture_graph)
        for u in range(fixture_graph.n):
            for v in range(fixture_graph.n):
                answers = [oracle.s_reach(u, v, s) for s in range(1, 8)]
                assert answers == sorted(answers, reverse=True)

    def test_all_pairs_matches_single_queries(self, fixture_graph):
        oracle = ReachabilityOracle(fixture_graph)
        table = oracle.all_pairs()
        for u in range(fixture_graph.n):
            for v in range(fixture_graph.n):
                assert table[u, v] == oracle.mr(u, v)


class TestUnionFind:
    def test_union_reports_merges(self):
        uf = UnionFind(4)
        assert uf.union(0, 1) is True
        assert uf.union(1, 0) is False
        assert uf.union(2, 3) is True
        assert uf.find(0) == uf.find(1)
        assert uf.find(0) != uf.find(2)

    def test_component_members(self):
        uf = UnionFind(5)
        uf.union(0, 1)
        uf.union(3, 4)
        uf.union(1, 4)
        assert sorted(uf.component(3)) == [0, 1, 3, 4]
        assert uf.component(2) == [2]

    def test_find_compresses_paths(self):
        uf = UnionFind(4)
        uf.parents = [0, 0, 1, 2]
        assert uf.find(3) == 0
        assert uf.parents == [0, 0, 0, 0]
