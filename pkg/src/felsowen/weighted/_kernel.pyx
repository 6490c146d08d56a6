# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the size-by-weight counting table.

Same contract as ``_kernel_py``; loops are fused so no temporaries are built.
"""

import numpy as np

from libc.stdint cimport uint64_t

ctypedef uint64_t u64

NAME = "cython"


cdef inline u64 addm(u64 a, u64 b, u64 mod) noexcept nogil:
    cdef u64 s = a + b
    if mod != 0 and s >= mod:
        s -= mod
    return s


cdef inline u64 subm(u64 a, u64 b, u64 mod) noexcept nogil:
    if a >= b:
        return a - b
    return a + mod - b


cdef u64 _sum(const u64[::1] row, Py_ssize_t lo, Py_ssize_t hi, u64 mod) noexcept nogil:
    cdef u64 acc = 0
    cdef Py_ssize_t v
    if mod == 0:
        for v in range(lo, hi):
            acc += row[v]
        return acc
    for v in range(lo, hi):
        acc = addm(acc, row[v], mod)
    return acc


# Plain-count loops on raw pointers: the modulus branch is hoisted out and
# source and destination rows never overlap, so the compiler can vectorize.
cdef void _add_shift_plain(u64* dst, const u64* src, Py_ssize_t count) noexcept nogil:
    cdef Py_ssize_t v
    for v in range(count):
        dst[v] += src[v]


cdef void _sub_shift_plain(u64* dst, const u64* a, const u64* b, Py_ssize_t count) noexcept nogil:
    cdef Py_ssize_t v
    for v in range(count):
        dst[v] = a[v] - b[v]


def row_sum(const u64[::1] row, u64 mod):
    return int(_sum(row, 0, row.shape[0], mod))


def add_item(u64[:, ::1] table, u64[::1] sat, Py_ssize_t w, u64 mod):
    cdef Py_ssize_t S = table.shape[0], q = table.shape[1]
    cdef Py_ssize_t s, v
    cdef Py_ssize_t lo = q - w if w < q else 0
    cdef u64 acc
    with nogil:
        for s in range(S - 1, 0, -1):
            acc = addm(sat[s - 1], _sum(table[s - 1], lo, q, mod), mod)
            sat[s] = addm(sat[s], acc, mod)
            if w >= q:
                continue
            if mod == 0:
                _add_shift_plain(&table[s, w], &table[s - 1, 0], q - w)
            else:
                for v in range(w, q):
                    table[s, v] = addm(table[s, v], table[s - 1, v - w], mod)


cdef void _sub_shifted(u64[::1] cur, const u64[::1] src, const u64[::1] prev,
                       Py_ssize_t w, u64 mod) noexcept nogil:
    cdef Py_ssize_t q = src.shape[0], v
    for v in range(min(w, q)):
        cur[v] = src[v]
    if w >= q:
        return
    if mod == 0:
        _sub_shift_plain(&cur[w], &src[w], &prev[0], q - w)
        return
    for v in range(w, q):
        cur[v] = subm(src[v], prev[v - w], mod)


def remove_item(const u64[:, ::1] table, const u64[::1] sat, Py_ssize_t w, u64 mod):
    cdef Py_ssize_t S = table.shape[0], q = table.shape[1], s
    cdef Py_ssize_t lo = q - w if w < q else 0
    out_arr = np.empty((S, q), dtype=np.uint64)
    out_sat_arr = np.empty(S, dtype=np.uint64)
    cdef u64[:, ::1] out = out_arr
    cdef u64[::1] out_sat = out_sat_arr
    cdef u64 acc
    with nogil:
        out[0, :] = table[0, :]
        out_sat[0] = sat[0]
        for s in range(1, S):
            _sub_shifted(out[s], table[s], out[s - 1], w, mod)
            acc = addm(out_sat[s - 1], _sum(out[s - 1], lo, q, mod), mod)
            out_sat[s] = subm(sat[s], acc, mod)
    return out_arr, out_sat_arr


def losing_without(const u64[:, ::1] table, Py_ssize_t w, Py_ssize_t c, u64 mod):
    cdef Py_ssize_t q = table.shape[1], s
    a_arr = np.array(table[0], dtype=np.uint64)
    b_arr = np.empty(q, dtype=np.uint64)
    cdef u64[::1] prev = a_arr
    cdef u64[::1] cur = b_arr
    cdef u64[::1] tmp
    cdef u64 total
    with nogil:
        for s in range(1, c + 1):
            _sub_shifted(cur, table[s], prev, w, mod)
            tmp = prev
            prev = cur
            cur = tmp
        total = _sum(prev, 0, q, mod)
    return int(total)
