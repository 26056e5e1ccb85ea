"""Membership vectors packed into Python ints (bit i <-> element i)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def from_mask(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def from_indices(idx, size: int) -> int:
    mask = np.zeros(size, dtype=bool)
    mask[np.asarray(idx, dtype=np.int64)] = True
    return from_mask(mask)


@lru_cache(maxsize=65536)
def _mask(bits: int, size: int) -> np.ndarray:
    raw = bits.to_bytes((size + 7) // 8, "little")
    out = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    out = out[:size].astype(bool)
    out.flags.writeable = False
    return out


def to_mask(bits: int, size: int) -> np.ndarray:
    return _mask(bits, size)


@lru_cache(maxsize=65536)
def _indices(bits: int, size: int) -> np.ndarray:
    out = np.flatnonzero(_mask(bits, size))
    out.flags.writeable = False
    return out


def to_indices(bits: int, size: int) -> np.ndarray:
    return _indices(bits, size)


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(bits: int, size: int) -> tuple[int, str]:
    """(cardinality, membership vector read from element 0 onwards)."""
    vector = format(bits, f"0{size}b")[::-1]
    return (vector.count("1"), vector)
