"""
Random Hypergraph Generator
Creates seeded synthetic hypergraphs for tests, verification and benchmarks:
1. Hyperedge sizes drawn uniformly in [1, max_size]
2. Members reused from earlier hyperedges with probability `bias`
   (higher bias, more overlap), otherwise drawn uniformly from [0, n)
3. Identical output for identical GenConfig
"""
import logging
from typing import List

import numpy as np

from hlreach.errors import ArgumentError
from hlreach.models import Hypergraph
from hlreach.schemas import GenConfig

logger = logging.getLogger(__name__)


def generate_random(cfg: GenConfig) -> Hypergraph:
    """
    Generate a random hypergraph.

    Vertex tokens are the drawn ids in [0, n); vertices that never get
    drawn do not appear, so the result may have fewer than n vertices.

    Args:
        cfg: Generator configuration

    Returns:
        Hypergraph with exactly cfg.m non-empty hyperedges

    Raises:
        ArgumentError: max_size > n
    """
    if cfg.max_size > cfg.n:
        raise ArgumentError(f"max_size {cfg.max_size} exceeds vertex count {cfg.n}")

    rng = np.random.default_rng(cfg.seed)
    used: List[int] = []
    used_set = set()
    rows: List[List[int]] = []

    for _ in range(cfg.m):
        size = int(rng.integers(1, cfg.max_size + 1))
        row: List[int] = []
        members = set()
        for _ in range(size):
            if used and rng.random() < cfg.bias:
                token = used[int(rng.integers(len(used)))]
            else:
                token = int(rng.integers(cfg.n))
            if token not in members:
                members.add(token)
                row.append(token)
        rows.append(row)

        for token in row:
            if token not in used_set:
                used_set.add(token)
                used.append(token)

    H = Hypergraph.from_tokens(rows)
    logger.debug(f"Generated hypergraph seed={cfg.seed}: n={H.n}, m={H.m}")
    return H
