"""
================================================================================
Index Persistence - Binary HL-index Files
================================================================================

FILE LAYOUT (little-endian throughout):
    magic        4 bytes  b"HLX1"
    version      u32      1
    n            u32      vertex count
    m            u32      hyperedge count
    flavor       u8       0 basic, 1 fast, 2 minimal
    ranks        m x u32  rank of each hyperedge
    original_ids n x u64  source-file token of each dense vertex id
    labels       per vertex: u32 count, then count x (u32 hyperedge, u32 s),
                 in rank-ascending order
    checksum     u64      FNV-1a over every preceding byte

USAGE:
    from hlreach.persistence import save_index, load_index

    save_index(index, "contact.hlx")
    index = load_index("contact.hlx")
================================================================================
"""
import logging
import struct
from pathlib import Path
from typing import BinaryIO, List, Optional, Union

import numpy as np

from hlreach.errors import ArgumentError, IndexFormatError
from hlreach.models import HLIndex, HyperedgeOrder, IndexFlavor, Label

logger = logging.getLogger(__name__)

MAGIC = b"HLX1"
VERSION = 1
HEADER = struct.Struct("<4sIIIB")
COUNT = struct.Struct("<I")
CHECKSUM = struct.Struct("<Q")

FLAVOR_CODES = {IndexFlavor.BASIC: 0, IndexFlavor.FAST: 1, IndexFlavor.MINIMAL: 2}
CODE_FLAVORS = {code: flavor for flavor, code in FLAVOR_CODES.items()}

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK_64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    value = _FNV_OFFSET
    for byte in data:
        value = ((value ^ byte) * _FNV_PRIME) & _MASK_64
    return value


def serialized_size(index: HLIndex) -> int:
    """Byte size of the serialized index, without serializing it."""
    return HEADER.size + 4 * index.m + 8 * index.n + 4 * index.n + 8 * index.total_labels + CHECKSUM.size


def serialize_index(index: HLIndex, sink: Optional[BinaryIO] = None) -> bytes:
    """
    Encode an index to the HLX1 layout.

    Args:
        index: Index to encode
        sink: Optional binary stream to write the image to

    Returns:
        The encoded bytes
    """
    original_ids = index.original_ids if index.original_ids is not None else range(index.n)
    if len(original_ids) != index.n:
        raise ArgumentError(f"original id table has {len(original_ids)} entries for {index.n} vertices")

    buffer = bytearray()
    buffer += HEADER.pack(MAGIC, VERSION, index.n, index.m, FLAVOR_CODES[index.flavor])
    buffer += np.asarray(index.order.rank, dtype="<u4").tobytes()
    buffer += np.asarray(original_ids, dtype="<u8").tobytes()
    for row in index.labels:
        buffer += COUNT.pack(len(row))
        if row:
            buffer += np.asarray(row, dtype="<u4").tobytes()
    buffer += CHECKSUM.pack(fnv1a_64(bytes(buffer)))

    data = bytes(buffer)
    if sink is not None:
        sink.write(data)
    return data


def deserialize_index(source: Union[bytes, BinaryIO]) -> HLIndex:
    """
    Decode an HLX1 image.

    Raises:
        IndexFormatError: bad magic, version, checksum, flavor or truncated data;
            labels out of rank order; duplicate original ids
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    if len(data) < HEADER.size + CHECKSUM.size:
        raise IndexFormatError(f"index image truncated ({len(data)} bytes)")

    magic, version, n, m, flavor_code = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise IndexFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")

    body, (stored,) = data[: -CHECKSUM.size], CHECKSUM.unpack_from(data, len(data) - CHECKSUM.size)
    if fnv1a_64(bytes(body)) != stored:
        raise IndexFormatError("checksum mismatch")
    if flavor_code not in CODE_FLAVORS:
        raise IndexFormatError(f"unknown index flavor code {flavor_code}")

    offset = HEADER.size
    try:
        ranks = np.frombuffer(body, dtype="<u4", count=m, offset=offset)
        offset += 4 * m
        original_ids = np.frombuffer(body, dtype="<u8", count=n, offset=offset)
        offset += 8 * n

        labels: List[List[Label]] = []
        for _ in range(n):
            (count,) = COUNT.unpack_from(body, offset)
            offset += COUNT.size
            pairs = np.frombuffer(body, dtype="<u4", count=2 * count, offset=offset).reshape(count, 2)
            offset += 8 * count
            labels.append([Label(int(e), int(s)) for e, s in pairs])
    except (ValueError, struct.error) as e:
        raise IndexFormatError(f"index image truncated: {e}") from e

    if offset != len(body):
        raise IndexFormatError(f"{len(body) - offset} trailing bytes before checksum")

    try:
        order = HyperedgeOrder.from_ranks([int(r) for r in ranks])
    except ArgumentError as e:
        raise IndexFormatError(str(e)) from e
    rank = order.rank
    for u, row in enumerate(labels):
        previous = -1
        for e, s in row:
            if e >= m or s < 1:
                raise IndexFormatError(f"vertex {u} holds invalid label ({e}, {s})")
            if rank[e] <= previous:
                raise IndexFormatError(f"labels of vertex {u} are not strictly ascending by rank")
            previous = rank[e]

    tokens = tuple(int(token) for token in original_ids)
    if len(set(tokens)) != n:
        raise IndexFormatError("original id table holds duplicate tokens")

    return HLIndex(
        labels=labels,
        order=order,
        flavor=CODE_FLAVORS[flavor_code],
        original_ids=tokens,
    )


def save_index(index: HLIndex, path: Union[str, Path]) -> int:
    """Write the index to path; returns the byte count."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as handle:
        data = serialize_index(index, handle)
    logger.info(f"Saved {index.flavor.value} index to {path} ({len(data)} bytes, {index.total_labels} labels)")
    return len(data)


def load_index(path: Union[str, Path]) -> HLIndex:
    """Read an index file (FileNotFoundError propagates)."""
    with open(path, "rb") as handle:
        index = deserialize_index(handle)
    logger.info(f"Loaded {index.flavor.value} index from {path}: n={index.n}, m={index.m}")
    return index
