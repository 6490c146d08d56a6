"""Vectorized numpy kernels for the size-by-weight counting table.

Tables are ``uint64`` arrays of shape ``(s_max + 1, q)``: row ``s`` column ``v``
counts subsets with ``s`` members and total weight ``v < q``.  A companion
vector ``sat`` holds, per size, the subsets whose weight reaches ``q``.

With ``mod == 0`` entries are exact counts (the caller guarantees they stay
below 2**63).  Otherwise every entry is a residue modulo the prime ``mod``
(below 2**62, so the sum of two residues never wraps).
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_LOW = np.uint64((1 << 31) - 1)
_SHIFT = np.uint64(31)


def _reduce(x: np.ndarray, mod: int) -> None:
    if mod:
        m = np.uint64(mod)
        np.subtract(x, m, out=x, where=x >= m)


def row_sum(row: np.ndarray, mod: int) -> int:
    """Sum of a residue (or exact) row as a Python int reduced by ``mod``."""
    if row.size == 0:
        return 0
    if not mod:
        return int(row.sum(dtype=np.uint64))
    # split into 31-bit halves so the uint64 accumulators cannot overflow
    lo = int(np.bitwise_and(row, _LOW).sum(dtype=np.uint64))
    hi = int(np.right_shift(row, _SHIFT).sum(dtype=np.uint64))
    return ((hi << 31) + lo) % mod


def add_item(table: np.ndarray, sat: np.ndarray, w: int, mod: int) -> None:
    """Insert one player of weight ``w`` in place."""
    q = table.shape[1]
    lo = q - w if w < q else 0
    for s in range(table.shape[0] - 1, 0, -1):
        prev = table[s - 1]
        acc = int(sat[s - 1]) + row_sum(prev[lo:], mod)
        acc += int(sat[s])
        sat[s] = acc % mod if mod else acc
        if w < q:
            dst = table[s, w:]
            np.add(dst, prev[: q - w], out=dst)
            _reduce(dst, mod)


def _sub_shifted(cur: np.ndarray, src: np.ndarray, prev: np.ndarray, w: int, mod: int) -> None:
    """``cur[v] = src[v] - prev[v - w]`` (the shifted term vanishes for ``v < w``)."""
    q = src.shape[0]
    np.copyto(cur, src)
    if w < q:
        dst = cur[w:]
        sub = prev[: q - w]
        if mod:
            m = np.uint64(mod)
            np.add(dst, m, out=dst, where=dst < sub)
        np.subtract(dst, sub, out=dst)


def remove_item(table: np.ndarray, sat: np.ndarray, w: int, mod: int):
    """Return a new ``(table, sat)`` with one player of weight ``w`` taken out."""
    q = table.shape[1]
    lo = q - w if w < q else 0
    out = np.empty_like(table)
    out_sat = np.empty_like(sat)
    out[0] = table[0]
    out_sat[0] = sat[0]
    for s in range(1, table.shape[0]):
        _sub_shifted(out[s], table[s], out[s - 1], w, mod)
        acc = int(out_sat[s - 1]) + row_sum(out[s - 1, lo:], mod)
        val = int(sat[s]) - acc
        out_sat[s] = val % mod if mod else val
    return out, out_sat


def losing_without(table: np.ndarray, w: int, c: int, mod: int) -> int:
    """Losing size-``c`` subsets (weight below ``q``) once a player of weight ``w`` is removed.

    Only two scratch rows are kept alive.
    """
    prev = table[0].copy()
    cur = np.empty_like(prev)
    for s in range(1, c + 1):
        _sub_shifted(cur, table[s], prev, w, mod)
        prev, cur = cur, prev
    return row_sum(prev, mod)
