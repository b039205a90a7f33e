"""Shared fixtures: the 12-vertex reference hypergraph and random graph factories."""
import io
from typing import Callable, Iterator

import numpy as np
import pytest

from hlreach.generator import generate_random
from hlreach.models import Hypergraph
from hlreach.schemas import GenConfig
from hlreach.services.hypergraph_service import parse_hypergraph

# e1..e7, one hyperedge per line, vertex tokens v1..v12
FIXTURE_TEXT = """\
# reference hypergraph
1 2
3 4 5 6 7 8
9 10 12
3 4 11 12
5 6 10
7 8 9
1 3 4
"""


@pytest.fixture
def fixture_text() -> str:
    return FIXTURE_TEXT


@pytest.fixture
def fixture_graph() -> Hypergraph:
    return parse_hypergraph(io.StringIO(FIXTURE_TEXT))


@pytest.fixture
def vid(fixture_graph) -> Callable[[int], int]:
    """Dense id of vertex v_k."""
    return lambda k: fixture_graph.original_ids.index(k)


@pytest.fixture
def eid() -> Callable[[int], int]:
    """Hyperedge id of e_k (file line order)."""
    return lambda k: k - 1


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "fixture.txt"
    path.write_text(FIXTURE_TEXT)
    return path


def random_graphs(count: int, max_n: int, max_m: int, seed: int, max_size: int = 8,
                  bias_levels=(0.0, 0.3, 0.6, 0.9)) -> Iterator[Hypergraph]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(5, max_n + 1))
        m = int(rng.integers(5, max_m + 1))
        cfg = GenConfig(
            n=n,
            m=m,
            max_size=min(max_size, n),
            bias=float(bias_levels[int(rng.integers(len(bias_levels)))]),
            seed=int(rng.integers(2 ** 31)),
        )
        yield generate_random(cfg)


@pytest.fixture
def graph_factory():
    """random_graphs(count, max_n, max_m, seed, ...) as a fixture."""
    return random_graphs


@pytest.fixture(autouse=True)
def isolated_log_dir(tmp_path, monkeypatch):
    from hlreach.config import settings

    monkeypatch.setattr(settings, "LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setattr(settings, "SHOW_PROGRESS", False)
