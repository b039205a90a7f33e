#!/usr/bin/env python3
"""
Tests for the binary index format
"""
import io
import struct

import numpy as np
import pytest

from hlreach.errors import IndexFormatError
from hlreach.models import HLIndex
from hlreach.persistence import (
    HEADER,
    MAGIC,
    deserialize_index,
    fnv1a_64,
    load_index,
    save_index,
    serialize_index,
    serialized_size,
)
from hlreach.services.construct_service import build_index
from hlreach.services.query_service import mr_query


@pytest.fixture
def fixture_index(fixture_graph):
    index, _, _ = build_index(fixture_graph, "fast")
    return index


class TestSerialize:
    def test_header_and_size(self, fixture_index):
        data = serialize_index(fixture_index)
        assert data[:4] == MAGIC
        assert len(data) == serialized_size(fixture_index)

    def test_reserialize_is_byte_identical(self, fixture_index):
        data = serialize_index(fixture_index)
        assert serialize_index(deserialize_index(data)) == data

    def test_load_keeps_everything(self, fixture_index):
        loaded = deserialize_index(serialize_index(fixture_index))
        assert loaded.labels == fixture_index.labels
        assert loaded.order.rank == fixture_index.order.rank
        assert loaded.flavor == fixture_index.flavor
        assert loaded.original_ids == fixture_index.original_ids

    def test_writes_to_sink(self, fixture_index):
        sink = io.BytesIO()
        data = serialize_index(fixture_index, sink)
        assert sink.getvalue() == data

    def test_fnv_known_values(self):
        assert fnv1a_64(b"") == 0xCBF29CE484222325
        assert fnv1a_64(b"a") == 0xAF63DC4C8601EC8C


class TestCorruption:
    def test_flipped_body_byte(self, fixture_index):
        data = bytearray(serialize_index(fixture_index))
        data[HEADER.size + 2] ^= 0xFF
        with pytest.raises(IndexFormatError, match="checksum"):
            deserialize_index(bytes(data))

    def test_bad_magic(self, fixture_index):
        data = b"XXXX" + serialize_index(fixture_index)[4:]
        with pytest.raises(IndexFormatError, match="magic"):
            deserialize_index(data)

    def test_bad_version(self, fixture_index):
        data = bytearray(serialize_index(fixture_index))
        struct.pack_into("<I", data, 4, 99)
        with pytest.raises(IndexFormatError, match="version"):
            deserialize_index(bytes(data))

    def test_truncated(self, fixture_index):
        data = serialize_index(fixture_index)
        with pytest.raises(IndexFormatError):
            deserialize_index(data[:10])
        with pytest.raises(IndexFormatError):
            deserialize_index(data[:-3])

    def test_labels_out_of_rank_order(self, fixture_index):
        labels = [list(row) for row in fixture_index.labels]
        u = next(u for u, row in enumerate(labels) if len(row) >= 2)
        labels[u][0], labels[u][1] = labels[u][1], labels[u][0]
        broken = HLIndex(labels, fixture_index.order, fixture_index.flavor, fixture_index.original_ids)
        with pytest.raises(IndexFormatError, match="ascending"):
            deserialize_index(serialize_index(broken))

    def test_repeated_hub_in_one_list(self, fixture_index):
        labels = [list(row) for row in fixture_index.labels]
        u = next(u for u, row in enumerate(labels) if row)
        labels[u].append(labels[u][-1])
        broken = HLIndex(labels, fixture_index.order, fixture_index.flavor, fixture_index.original_ids)
        with pytest.raises(IndexFormatError, match="ascending"):
            deserialize_index(serialize_index(broken))

    def test_duplicate_original_ids(self, fixture_index):
        tokens = list(fixture_index.original_ids)
        tokens[1] = tokens[0]
        broken = HLIndex(fixture_index.labels, fixture_index.order, fixture_index.flavor, tuple(tokens))
        with pytest.raises(IndexFormatError, match="duplicate"):
            deserialize_index(serialize_index(broken))


class TestFiles:
    def test_save_and_load(self, fixture_graph, tmp_path):
        index, _, _ = build_index(fixture_graph, "minimal")
        path = tmp_path / "nested" / "fixture.hlx"
        written = save_index(index, path)
        assert written == path.stat().st_size
        loaded = load_index(path)
        assert loaded.labels == index.labels

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_index(tmp_path / "absent.hlx")

    def test_random_queries_survive(self, graph_factory, tmp_path):
        H = next(graph_factory(count=1, max_n=60, max_m=80, seed=71))
        index, _, _ = build_index(H, "minimal")
        path = tmp_path / "random.hlx"
        save_index(index, path)
        loaded = load_index(path)
        rng = np.random.default_rng(3)
        for u, v in rng.integers(H.n, size=(1000, 2)):
            assert mr_query(loaded, int(u), int(v)).value == mr_query(index, int(u), int(v)).value
