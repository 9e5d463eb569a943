# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled budget-DP row transition (hot kernel).

Contract mirrors `_dpkernel_py.transition_compact`; see that module for the
argument layout.  The per-budget max over bribe entries dominates the runtime
of large sweeps, so it runs as plain C loops over int32 buffers here.
"""

import numpy as np

BACKEND = "ext"


def transition_compact(prev, costs, rmap, int n_candidates):
    cdef int[:] prev_v = prev
    cdef long long[:] costs_v = costs
    cdef int[:, :] rmap_v = rmap
    cdef Py_ssize_t nb = prev_v.shape[0]
    cdef Py_ssize_t nj = costs_v.shape[0]

    out_arr = np.full(nb, -1, dtype=np.int32)
    cdef int[:] out = out_arr
    cdef Py_ssize_t j, b, start
    cdef long long c
    cdef int v

    for j in range(nj):
        c = costs_v[j]
        if c >= nb:
            continue
        start = <Py_ssize_t> c
        for b in range(start, nb):
            v = rmap_v[j, prev_v[b - start] + 1]
            if v > out[b]:
                out[b] = v

    mark_arr = np.zeros(n_candidates, dtype=np.int32)
    cdef int[:] mark = mark_arr
    for b in range(nb):
        v = out[b]
        if v >= 0:
            mark[v] = 1

    cdef int n_used = 0
    cdef Py_ssize_t r
    for r in range(n_candidates):
        if mark[r]:
            n_used += 1

    used_arr = np.empty(n_used, dtype=np.int32)
    lut_arr = np.full(n_candidates, -1, dtype=np.int32)
    cdef int[:] used = used_arr
    cdef int[:] lut = lut_arr
    cdef int pos = 0
    for r in range(n_candidates):
        if mark[r]:
            used[pos] = <int> r
            lut[r] = pos
            pos += 1

    for b in range(nb):
        v = out[b]
        if v >= 0:
            out[b] = lut[v]

    return out_arr, used_arr
