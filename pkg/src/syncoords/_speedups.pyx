# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: triangle bound smoothing and line-edge enumeration.

Contracts mirror syncoords._speedups_py; keep both in sync.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def smooth_bounds(double[::1] lo, double[::1] hi, cnp.int64_t[:, ::1] triples,
                  int max_sweeps=200):
    """Triangle-inequality bound smoothing over the given triples, in place."""
    cdef Py_ssize_t n_triples = triples.shape[0]
    cdef Py_ssize_t r, m
    cdef cnp.int64_t t, x, y
    cdef double new_hi, new_lo, other
    cdef int sweeps = 0
    cdef bint changed = True
    cdef cnp.int64_t[3] ts
    cdef cnp.int64_t[3] xs
    cdef cnp.int64_t[3] ys

    while changed and sweeps < max_sweeps:
        changed = False
        sweeps += 1
        for r in range(n_triples):
            # rotations: each entry of the triple takes the target role once
            ts[0] = triples[r, 2]; xs[0] = triples[r, 0]; ys[0] = triples[r, 1]
            ts[1] = triples[r, 0]; xs[1] = triples[r, 1]; ys[1] = triples[r, 2]
            ts[2] = triples[r, 1]; xs[2] = triples[r, 0]; ys[2] = triples[r, 2]
            for m in range(3):
                t = ts[m]; x = xs[m]; y = ys[m]
                new_hi = hi[x] + hi[y]
                if new_hi < hi[t]:
                    hi[t] = new_hi
                    changed = True
                new_lo = lo[x] - hi[y]
                other = lo[y] - hi[x]
                if other > new_lo:
                    new_lo = other
                if new_lo > lo[t]:
                    lo[t] = new_lo
                    changed = True
    return sweeps


def line_edges(cnp.int64_t[::1] src, cnp.int64_t[::1] dst, Py_ssize_t n_atoms,
               bint include_backtrack=False):
    """Adjacency of the directed line graph; ordered by from-edge, then to-edge."""
    cdef Py_ssize_t n_edges = src.shape[0]
    cdef Py_ssize_t e, f, pos, u, count
    cdef cnp.int64_t[::1] offsets = np.zeros(n_atoms + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] bucket = np.empty(n_edges, dtype=np.int64)
    cdef cnp.int64_t[::1] cursor = np.empty(n_atoms, dtype=np.int64)

    # counting sort of edges by source atom
    for e in range(n_edges):
        offsets[src[e] + 1] += 1
    for u in range(n_atoms):
        offsets[u + 1] += offsets[u]
    for u in range(n_atoms):
        cursor[u] = offsets[u]
    for e in range(n_edges):
        bucket[cursor[src[e]]] = e
        cursor[src[e]] += 1

    count = 0
    for e in range(n_edges):
        u = dst[e]
        for pos in range(offsets[u], offsets[u + 1]):
            f = bucket[pos]
            if include_backtrack or dst[f] != src[e]:
                count += 1

    frm_arr = np.empty(count, dtype=np.int64)
    to_arr = np.empty(count, dtype=np.int64)
    cdef cnp.int64_t[::1] frm = frm_arr
    cdef cnp.int64_t[::1] to = to_arr
    pos = 0
    for e in range(n_edges):
        u = dst[e]
        for f in range(offsets[u], offsets[u + 1]):
            if include_backtrack or dst[bucket[f]] != src[e]:
                frm[pos] = e
                to[pos] = bucket[f]
                pos += 1
    return frm_arr, to_arr
