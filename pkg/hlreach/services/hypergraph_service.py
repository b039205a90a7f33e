"""
================================================================================
Hypergraph Service - Parsing, Compaction, Overlap and Importance Order
================================================================================

DESCRIPTION:
    Everything that reads or derives plain structure from a Hypergraph:
    the text loader, exact-duplicate compaction, overlap degree and
    neighbor enumeration, the hyperedge importance order used by every
    index builder, summary statistics and seeded hyperedge sampling.

INPUT FORMAT:
    One hyperedge per line. Vertex tokens are unsigned integers separated
    by spaces, tabs or commas. Lines starting with '#' or '%' and blank
    lines are skipped. Tokens repeated on a line count once.

USAGE:
    from hlreach.services.hypergraph_service import load_hypergraph, compute_order

    H = load_hypergraph("data/contact.txt")
    order = compute_order(H)
================================================================================
"""
import logging
import re
from collections import Counter
from pathlib import Path
from typing import Dict, Iterable, List, Optional, TextIO, Tuple, Union

import numpy as np

from hlreach.errors import ArgumentError, HypergraphParseError
from hlreach.models import Hypergraph, HyperedgeOrder
from hlreach.schemas import CompactionReport, GraphStats

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[ \t,]+")
_DIGITS = re.compile(r"[0-9]+")
_MAX_TOKEN = 2 ** 64 - 1


# ============================================================================
# PARSING
# ============================================================================

def parse_hypergraph(stream: Iterable[str]) -> Hypergraph:
    """
    Parse a hypergraph from a stream of text lines.

    Args:
        stream: Any iterable of lines (open file, list of strings, StringIO)

    Returns:
        Hypergraph with vertices remapped to dense ids in first-appearance order

    Raises:
        HypergraphParseError: malformed token or a line with no vertices
    """
    rows: List[List[int]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue

        row: List[int] = []
        seen = set()
        for token in _SEPARATORS.split(line):
            if not token:
                continue
            if not _DIGITS.fullmatch(token):
                raise HypergraphParseError(line_no, f"malformed vertex token {token!r}")
            value = int(token)
            if value > _MAX_TOKEN:
                raise HypergraphParseError(line_no, f"vertex token {token} exceeds 64 bits")
            if value not in seen:
                seen.add(value)
                row.append(value)

        if not row:
            raise HypergraphParseError(line_no, "hyperedge has no vertices")
        rows.append(row)

    H = Hypergraph.from_tokens(rows)
    logger.debug(f"Parsed hypergraph: n={H.n}, m={H.m}")
    return H


def load_hypergraph(path: Union[str, Path]) -> Hypergraph:
    """Read a hypergraph file from disk (FileNotFoundError propagates)."""
    with open(path, "r", encoding="utf-8") as handle:
        H = parse_hypergraph(handle)
    logger.info(f"Loaded {path}: n={H.n}, m={H.m}")
    return H


def write_hypergraph(H: Hypergraph, sink: TextIO) -> None:
    """Write H in the input format, one hyperedge per line, original tokens."""
    for row in H.edge_vertices:
        sink.write(" ".join(str(H.original_ids[u]) for u in row))
        sink.write("\n")


# ============================================================================
# COMPACTION
# ============================================================================

def compact(H: Hypergraph) -> Tuple[Hypergraph, CompactionReport]:
    """
    Remove exact-duplicate hyperedges, keeping the lowest id of each group.

    Every vertex of a removed duplicate is also in its keeper, so vertex
    ids and the original id table are unchanged.
    """
    first_seen: Dict[Tuple[int, ...], int] = {}
    removed: List[int] = []
    keeper_of: Dict[int, int] = {}
    kept_rows: List[Tuple[int, ...]] = []

    for e, row in enumerate(H.edge_vertices):
        keeper = first_seen.get(row)
        if keeper is None:
            first_seen[row] = e
            kept_rows.append(row)
        else:
            removed.append(e)
            keeper_of[e] = keeper

    report = CompactionReport(m_before=H.m, m_after=len(kept_rows), removed=removed, keeper_of=keeper_of)
    if not removed:
        return H, report

    logger.info(f"Compaction removed {len(removed)} duplicate hyperedges ({H.m} -> {len(kept_rows)})")
    compacted = Hypergraph.from_edge_lists(kept_rows, n=H.n, original_ids=H.original_ids)
    return compacted, report


# ============================================================================
# OVERLAP AND NEIGHBORS
# ============================================================================

def overlap_degree(H: Hypergraph, e_i: int, e_j: int) -> int:
    """Number of shared vertices, by linear merge of the sorted member lists."""
    H.check_hyperedge(e_i)
    H.check_hyperedge(e_j)
    a = H.edge_vertices[e_i]
    b = H.edge_vertices[e_j]
    i = j = shared = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            shared += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return shared


def neighbors(H: Hypergraph, e: int) -> List[Tuple[int, int]]:
    """
    All hyperedges sharing at least one vertex with e, paired with the overlap.

    Counts how many members of e each incident hyperedge appears under;
    the count is the overlap degree. e itself is excluded.

    Returns:
        List of (neighbor id, OD) sorted by neighbor id
    """
    H.check_hyperedge(e)
    counts = Counter(other for u in H.edge_vertices[e] for other in H.vertex_edges[u])
    counts.pop(e, None)
    return sorted(counts.items())


class NeighborTable:
    """N(e) with overlap degrees for every hyperedge, computed once."""

    def __init__(self, H: Hypergraph):
        self.rows: List[List[Tuple[int, int]]] = [neighbors(H, e) for e in range(H.m)]

    def __getitem__(self, e: int) -> List[Tuple[int, int]]:
        return self.rows[e]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def total(self) -> int:
        return sum(len(row) for row in self.rows)


def total_neighbor_pairs(H: Hypergraph) -> int:
    """Sum over e of |N(e)|; each overlapping pair counts twice."""
    return sum(len(neighbors(H, e)) for e in range(H.m))


# ============================================================================
# IMPORTANCE ORDER
# ============================================================================

def compute_order(H: Hypergraph) -> HyperedgeOrder:
    """
    Rank hyperedges by weight sum(|E(v)|^2 for v in e), heaviest first.

    Ties go to the smaller hyperedge id. Weights are Python ints so they
    never overflow.
    """
    degree_sq = [len(row) ** 2 for row in H.vertex_edges]
    weight = [sum(degree_sq[u] for u in row) for row in H.edge_vertices]
    sequence = sorted(range(H.m), key=lambda e: (-weight[e], e))
    return HyperedgeOrder.from_sequence(sequence, weight=weight)


# ============================================================================
# STATISTICS AND SAMPLING
# ============================================================================

def stats(H: Hypergraph) -> GraphStats:
    """Summary statistics; degrees and sizes come from the CSR arrays."""
    edge_indptr, _, vertex_indptr, _ = H.to_csr()
    edge_sizes = np.diff(edge_indptr)
    degrees = np.diff(vertex_indptr)
    return GraphStats(
        n=H.n,
        m=H.m,
        d=int(degrees.max()) if H.n else 0,
        delta=int(edge_sizes.max()) if H.m else 0,
        eta_max=int(degrees.max()) if H.n else 0,
        eta_avg=float(degrees.mean()) if H.n else 0.0,
        total_incidence=int(edge_indptr[-1]),
    )


def graph_bytes(H: Hypergraph) -> int:
    """Incidence footprint with u32 ids, as stored on disk."""
    return 4 * int(sum(len(row) for row in H.edge_vertices))


def sample_hyperedges(H: Hypergraph, fraction: float, seed: Optional[int] = 0) -> Hypergraph:
    """
    Sub-hypergraph over a uniform random sample of hyperedges.

    Vertices are re-densified; their original tokens are kept, so files
    written from the sample still use the source ids.

    Args:
        H: Source hypergraph
        fraction: Share of hyperedges to keep, in (0, 1]
        seed: RNG seed

    Returns:
        Hypergraph induced by the sampled hyperedges, in ascending id order
    """
    if not 0.0 < fraction <= 1.0:
        raise ArgumentError(f"sample fraction must be in (0, 1], got {fraction}")
    if H.m == 0:
        raise ArgumentError("cannot sample from an empty hypergraph")

    rng = np.random.default_rng(seed)
    k = max(1, int(round(fraction * H.m)))
    chosen = np.sort(rng.choice(H.m, size=k, replace=False))
    rows = [[H.original_ids[u] for u in H.edge_vertices[int(e)]] for e in chosen]
    return Hypergraph.from_tokens(rows)
