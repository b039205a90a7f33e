#!/usr/bin/env python3
"""
Tests for the random hypergraph generator
"""
import pydantic
import pytest

from hlreach.errors import ArgumentError
from hlreach.generator import generate_random
from hlreach.schemas import GenConfig
from hlreach.services.hypergraph_service import stats, total_neighbor_pairs


class TestGenerateRandom:
    def test_deterministic(self):
        cfg = GenConfig(n=50, m=40, max_size=6, bias=0.5, seed=7)
        assert generate_random(cfg) == generate_random(cfg)

    def test_seed_changes_output(self):
        a = generate_random(GenConfig(n=50, m=40, max_size=6, seed=1))
        b = generate_random(GenConfig(n=50, m=40, max_size=6, seed=2))
        assert a != b

    def test_shape(self):
        H = generate_random(GenConfig(n=30, m=25, max_size=5, bias=0.3, seed=4))
        H.validate()
        assert H.m == 25
        assert H.n <= 30
        assert all(1 <= H.size(e) <= 5 for e in range(H.m))
        assert all(0 <= token < 30 for token in H.original_ids)

    def test_size_one_gives_singletons(self):
        H = generate_random(GenConfig(n=10, m=12, max_size=1, seed=3))
        assert all(H.size(e) == 1 for e in range(H.m))

    def test_max_size_beyond_n(self):
        with pytest.raises(ArgumentError):
            generate_random(GenConfig(n=3, m=2, max_size=4))

    def test_bad_bias(self):
        with pytest.raises(pydantic.ValidationError):
            GenConfig(n=3, m=2, max_size=2, bias=1.5)

    def test_bias_raises_overlap(self):
        low = high = 0
        for seed in range(100):
            low += total_neighbor_pairs(generate_random(GenConfig(n=200, m=40, max_size=6, bias=0.0, seed=seed)))
            high += total_neighbor_pairs(generate_random(GenConfig(n=200, m=40, max_size=6, bias=0.9, seed=seed)))
        assert high > low

    def test_bias_concentrates_vertices(self):
        low = stats(generate_random(GenConfig(n=500, m=100, max_size=8, bias=0.0, seed=9)))
        high = stats(generate_random(GenConfig(n=500, m=100, max_size=8, bias=0.9, seed=9)))
        assert high.n < low.n
