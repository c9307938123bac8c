# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``; same names, same results."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def positions(rankings):
    cdef i64[:, ::1] r = np.ascontiguousarray(rankings, dtype=np.int64)
    cdef Py_ssize_t B = r.shape[0], m = r.shape[1], b, k
    out = np.empty((B, m), dtype=np.int64)
    cdef i64[:, ::1] pos = out
    for b in range(B):
        for k in range(m):
            pos[b, r[b, k]] = k
    return out


def margins(rankings, weights):
    cdef i64[:, ::1] r = np.ascontiguousarray(rankings, dtype=np.int64)
    cdef i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t B = r.shape[0], m = r.shape[1], b, i, j
    out = np.zeros((m, m), dtype=np.int64)
    cdef i64[:, ::1] M = out
    cdef i64 wb, hi
    for b in range(B):
        wb = w[b]
        for i in range(m):
            hi = r[b, i]
            for j in range(i + 1, m):
                M[hi, r[b, j]] += wb
    for i in range(m):
        for j in range(i + 1, m):
            hi = M[i, j] - M[j, i]
            M[i, j] = hi
            M[j, i] = -hi
    return out


def pair_counts(rankings, weights):
    cdef i64[:, ::1] r = np.ascontiguousarray(rankings, dtype=np.int64)
    cdef i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t B = r.shape[0], m = r.shape[1], b, i, j
    nonadj_arr = np.zeros((m, m), dtype=np.int64)
    swaps_arr = np.zeros((m, m), dtype=np.int64)
    cdef i64[:, ::1] nonadj = nonadj_arr
    cdef i64[:, ::1] swaps = swaps_arr
    cdef i64 wb, x, y
    for b in range(B):
        wb = w[b]
        for i in range(m):
            x = r[b, i]
            for j in range(i + 2, m):
                y = r[b, j]
                nonadj[x, y] += wb
                swaps[x, y] += wb * (j - i - 1)
    for i in range(m):
        for j in range(i + 1, m):
            nonadj[i, j] += nonadj[j, i]
            nonadj[j, i] = nonadj[i, j]
            swaps[i, j] += swaps[j, i]
            swaps[j, i] = swaps[i, j]
    return nonadj_arr, swaps_arr


def first_choice_counts(rankings, weights, alive):
    cdef i64[:, ::1] r = np.ascontiguousarray(rankings, dtype=np.int64)
    cdef i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef cnp.uint8_t[::1] live = np.ascontiguousarray(alive, dtype=np.uint8)
    cdef Py_ssize_t B = r.shape[0], m = r.shape[1], b, k
    out = np.zeros(live.shape[0], dtype=np.int64)
    cdef i64[::1] counts = out
    for b in range(B):
        for k in range(m):
            if live[r[b, k]]:
                counts[r[b, k]] += w[b]
                break
    return out


def widest_paths(margins):
    out = np.array(margins, dtype=np.int64, copy=True)
    cdef i64[:, ::1] S = out
    cdef Py_ssize_t m = S.shape[0], i, j, k
    cdef i64 via
    for k in range(m):
        for i in range(m):
            if i == k:
                continue
            for j in range(m):
                if j == k or j == i:
                    continue
                via = S[i, k] if S[i, k] < S[k, j] else S[k, j]
                if via > S[i, j]:
                    S[i, j] = via
    for i in range(m):
        S[i, i] = 0
    return out


def perfect_clone_flags(batch):
    cdef cnp.int8_t[:, :, ::1] r = np.ascontiguousarray(batch, dtype=np.int8)
    cdef Py_ssize_t P = r.shape[0], n = r.shape[1], m = r.shape[2], p, v, k, x, y
    cdef cnp.int8_t[64] pos
    cdef int gap
    cdef bint found
    if m > 64:
        raise ValueError("perfect_clone_flags supports at most 64 candidates")
    out = np.zeros(P, dtype=np.uint8)
    cdef cnp.uint8_t[::1] flags = out
    cdef cnp.uint8_t[64 * 64] adjacent
    for p in range(P):
        for x in range(m * m):
            adjacent[x] = 1
        for v in range(n):
            for k in range(m):
                pos[r[p, v, k]] = <cnp.int8_t>k
            for x in range(m):
                for y in range(x + 1, m):
                    gap = pos[x] - pos[y]
                    if gap != 1 and gap != -1:
                        adjacent[x * m + y] = 0
        found = False
        for x in range(m):
            for y in range(x + 1, m):
                if adjacent[x * m + y]:
                    found = True
        flags[p] = found
    return out.view(bool)
