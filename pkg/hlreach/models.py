"""
Core data model: hypergraph incidence, hyperedge importance order, label
index and its dual.

Every type here is immutable once built, except HLIndex/DualIndex label
lists, which construction fills in place and never touches afterwards.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from hlreach.errors import ArgumentError, IndexIntegrityError, UnknownVertexError

Walk = Sequence[int]


class Label(NamedTuple):
    """Hub entry (e, s): the owning vertex s-reaches hyperedge e"""
    hyperedge: int
    s: int


class ReachabilityTuple(NamedTuple):
    vertex: int
    hyperedge: int
    s: int


class QueryResult(NamedTuple):
    value: Optional[int]
    labels_scanned: int = 0
    error: Optional[str] = None


class IndexFlavor(str, Enum):
    BASIC = "basic"
    FAST = "fast"
    MINIMAL = "minimal"


@dataclass(frozen=True)
class Hypergraph:
    """Dual incidence lists with dense ids, both sides sorted ascending."""

    edge_vertices: Tuple[Tuple[int, ...], ...]
    vertex_edges: Tuple[Tuple[int, ...], ...]
    original_ids: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.vertex_edges)

    @property
    def m(self) -> int:
        return len(self.edge_vertices)

    def size(self, e: int) -> int:
        return len(self.edge_vertices[e])

    def check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise ArgumentError(f"vertex id {u} out of range [0, {self.n})")

    def check_hyperedge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise ArgumentError(f"hyperedge id {e} out of range [0, {self.m})")

    @classmethod
    def from_edge_lists(
        cls,
        edges: Sequence[Iterable[int]],
        n: Optional[int] = None,
        original_ids: Optional[Sequence[int]] = None,
    ) -> "Hypergraph":
        """Build from hyperedges already expressed in dense vertex ids."""
        edge_vertices = []
        for e, members in enumerate(edges):
            row = tuple(sorted(set(members)))
            if not row:
                raise ArgumentError(f"hyperedge {e} is empty")
            if row[0] < 0:
                raise ArgumentError(f"hyperedge {e} holds negative vertex id {row[0]}")
            edge_vertices.append(row)

        top = max((row[-1] for row in edge_vertices), default=-1) + 1
        if n is None:
            n = top
        elif n < top:
            raise ArgumentError(f"vertex id {top - 1} out of range [0, {n})")

        incident: List[List[int]] = [[] for _ in range(n)]
        for e, row in enumerate(edge_vertices):
            for u in row:
                incident[u].append(e)

        if original_ids is None:
            original_ids = range(n)
        original_ids = tuple(int(token) for token in original_ids)
        if len(original_ids) != n:
            raise ArgumentError(f"original id table has {len(original_ids)} entries for {n} vertices")

        return cls(
            edge_vertices=tuple(edge_vertices),
            vertex_edges=tuple(tuple(row) for row in incident),
            original_ids=original_ids,
        )

    @classmethod
    def from_tokens(cls, rows: Iterable[Iterable[int]]) -> "Hypergraph":
        """Remap arbitrary vertex tokens to dense ids in first-appearance order."""
        dense: Dict[int, int] = {}
        edges = []
        for row in rows:
            members = []
            for token in row:
                u = dense.get(token)
                if u is None:
                    u = dense[token] = len(dense)
                members.append(u)
            edges.append(members)
        return cls.from_edge_lists(edges, n=len(dense), original_ids=list(dense))

    def to_csr(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(edge_indptr, edge_indices, vertex_indptr, vertex_indices)"""
        edge_sizes = np.fromiter((len(row) for row in self.edge_vertices), dtype=np.int64, count=self.m)
        vertex_sizes = np.fromiter((len(row) for row in self.vertex_edges), dtype=np.int64, count=self.n)
        edge_indptr = np.concatenate(([0], np.cumsum(edge_sizes)))
        vertex_indptr = np.concatenate(([0], np.cumsum(vertex_sizes)))
        edge_indices = np.fromiter(
            (u for row in self.edge_vertices for u in row), dtype=np.int64, count=int(edge_indptr[-1])
        )
        vertex_indices = np.fromiter(
            (e for row in self.vertex_edges for e in row), dtype=np.int64, count=int(vertex_indptr[-1])
        )
        return edge_indptr, edge_indices, vertex_indptr, vertex_indices

    def validate(self) -> None:
        """Raise ArgumentError if any structural invariant is broken."""
        for e, row in enumerate(self.edge_vertices):
            if not row:
                raise ArgumentError(f"hyperedge {e} is empty")
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ArgumentError(f"hyperedge {e} is not strictly ascending")
            for u in row:
                if e not in self.vertex_edges[u]:
                    raise ArgumentError(f"vertex {u} does not list hyperedge {e}")
        for u, row in enumerate(self.vertex_edges):
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ArgumentError(f"incidence of vertex {u} is not strictly ascending")
            for e in row:
                if u not in self.edge_vertices[e]:
                    raise ArgumentError(f"hyperedge {e} does not contain vertex {u}")


@dataclass(frozen=True)
class HyperedgeOrder:
    """Importance order: rank 0 is the most important hyperedge."""

    rank: Tuple[int, ...]
    sequence: Tuple[int, ...]
    weight: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_sequence(cls, sequence: Sequence[int], weight: Optional[Sequence[int]] = None) -> "HyperedgeOrder":
        sequence = tuple(sequence)
        rank = [-1] * len(sequence)
        for position, e in enumerate(sequence):
            if not 0 <= e < len(sequence) or rank[e] != -1:
                raise ArgumentError("hyperedge order must be a permutation of [0, m)")
            rank[e] = position
        return cls(rank=tuple(rank), sequence=sequence, weight=tuple(weight) if weight is not None else None)

    @classmethod
    def from_ranks(cls, rank: Sequence[int]) -> "HyperedgeOrder":
        sequence = [-1] * len(rank)
        for e, position in enumerate(rank):
            if not 0 <= position < len(rank) or sequence[position] != -1:
                raise ArgumentError("rank array must be a permutation of [0, m)")
            sequence[position] = e
        return cls(rank=tuple(rank), sequence=tuple(sequence))

    @property
    def m(self) -> int:
        return len(self.rank)


@dataclass
class HLIndex:
    """Per-vertex label lists, each strictly ascending by hyperedge rank."""

    labels: List[List[Label]]
    order: HyperedgeOrder
    flavor: IndexFlavor
    original_ids: Optional[Tuple[int, ...]] = None
    _lookup: Optional[Dict[int, int]] = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return self.order.m

    @property
    def total_labels(self) -> int:
        return sum(len(row) for row in self.labels)

    def check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise ArgumentError(f"vertex id {u} out of range [0, {self.n})")

    def dense_id(self, token: int) -> int:
        """Translate a source-file vertex token to its dense id."""
        if self._lookup is None:
            tokens = self.original_ids if self.original_ids is not None else range(self.n)
            self._lookup = {token: u for u, token in enumerate(tokens)}
        try:
            return self._lookup[token]
        except KeyError:
            raise UnknownVertexError(token) from None


@dataclass
class DualIndex:
    """D(e): (vertex, s) pairs holding a label on e, non-ascending in s."""

    entries: List[List[Tuple[int, int]]]

    @property
    def total(self) -> int:
        return sum(len(row) for row in self.entries)

    @classmethod
    def from_index(cls, index: HLIndex) -> "DualIndex":
        entries: List[List[Tuple[int, int]]] = [[] for _ in range(index.m)]
        for u, row in enumerate(index.labels):
            for e, s in row:
                entries[e].append((u, s))
        for row in entries:
            row.sort(key=lambda item: -item[1])
        return cls(entries=entries)

    def check_transpose(self, index: HLIndex) -> None:
        if len(self.entries) != index.m:
            raise IndexIntegrityError(f"dual index covers {len(self.entries)} hyperedges, index has {index.m}")
        held = [dict(row) for row in index.labels]
        seen = 0
        for e, row in enumerate(self.entries):
            previous = None
            for u, s in row:
                if not 0 <= u < index.n or held[u].get(e) != s:
                    raise IndexIntegrityError(f"D({e}) lists ({u}, {s}) but no matching label exists")
                if previous is not None and s > previous:
                    raise IndexIntegrityError(f"D({e}) is not non-ascending in s")
                previous = s
                seen += 1
        if seen != index.total_labels:
            raise IndexIntegrityError(f"dual index holds {seen} entries, index holds {index.total_labels}")
