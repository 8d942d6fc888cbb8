# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernel; same contract as ``_sweep_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def level_segments(tv_in, te_in, drank_in, long long n_vertices):
    cdef long long[:, :] tv = np.ascontiguousarray(tv_in, dtype=np.int64)
    cdef long long[:, :] te = np.ascontiguousarray(te_in, dtype=np.int64)
    cdef long long[:] drank = np.ascontiguousarray(drank_in, dtype=np.int64)
    cdef Py_ssize_t T = tv.shape[0]
    cdef Py_ssize_t t, total = 0, ns = 0, npt = 0
    cdef long long r[3]
    cdef long long v[3]
    cdef long long e[3]
    cdef long long items[5]
    cdef long long lo, hi, lev, r0, r1, x, y
    cdef int k, m
    for t in range(T):
        lo = min(drank[tv[t, 0]], drank[tv[t, 1]], drank[tv[t, 2]])
        hi = max(drank[tv[t, 0]], drank[tv[t, 1]], drank[tv[t, 2]])
        total += hi - lo + 1
    seg_l_arr = np.empty(total, dtype=np.int64)
    seg_a_arr = np.empty(total, dtype=np.int64)
    seg_b_arr = np.empty(total, dtype=np.int64)
    pt_l_arr = np.empty(total, dtype=np.int64)
    pt_i_arr = np.empty(total, dtype=np.int64)
    cdef long long[:] seg_l = seg_l_arr
    cdef long long[:] seg_a = seg_a_arr
    cdef long long[:] seg_b = seg_b_arr
    cdef long long[:] pt_l = pt_l_arr
    cdef long long[:] pt_i = pt_i_arr
    for t in range(T):
        for k in range(3):
            v[k] = tv[t, k]
            r[k] = drank[v[k]]
            e[k] = te[t, k]
        lo = min(r[0], r[1], r[2])
        hi = max(r[0], r[1], r[2])
        for lev in range(lo, hi + 1):
            m = 0
            for k in range(3):
                if r[k] == lev:
                    items[m] = v[k]
                    m += 1
            for k in range(3):
                r0 = r[k]
                r1 = r[(k + 1) % 3]
                if (r0 < lev < r1) or (r1 < lev < r0):
                    items[m] = n_vertices + e[k]
                    m += 1
            if m == 2:
                x = items[0]
                y = items[1]
                if x > y:
                    x, y = y, x
                seg_l[ns] = lev
                seg_a[ns] = x
                seg_b[ns] = y
                ns += 1
            elif m == 1:
                pt_l[npt] = lev
                pt_i[npt] = items[0]
                npt += 1
    return (seg_l_arr[:ns].copy(), seg_a_arr[:ns].copy(), seg_b_arr[:ns].copy(),
            pt_l_arr[:npt].copy(), pt_i_arr[:npt].copy())


cdef inline long long _find(long long[:] parent, long long x):
    cdef long long root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def union_find_labels(long long n, a_in, b_in):
    cdef long long[:] a = np.ascontiguousarray(a_in, dtype=np.int64)
    cdef long long[:] b = np.ascontiguousarray(b_in, dtype=np.int64)
    parent_arr = np.arange(n, dtype=np.int64)
    cdef long long[:] parent = parent_arr
    cdef Py_ssize_t i
    cdef long long rx, ry
    for i in range(a.shape[0]):
        rx = _find(parent, a[i])
        ry = _find(parent, b[i])
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
    for i in range(n):
        _find(parent, i)
    return parent_arr
