"""Pure-Python implementations of the hot kernels.

Same contracts as the compiled module syncoords._speedups; used when the
extension is unavailable or when SYNCOORDS_PURE_PYTHON is set. Kept as plain
loops so the logic is obviously identical to the Cython source.
"""

from __future__ import annotations

import numpy as np


def smooth_bounds(lo, hi, triples, max_sweeps: int = 200) -> int:
    """Triangle-inequality bound smoothing over the given triples, in place.

    lo, hi: float64 arrays indexed by bounds-entry id.
    triples: (T, 3) int64 array; each row holds the entry ids of the pairs
        (i,j), (j,k), (i,k) of one atom triple whose three pairs all have
        entries. The smoothing rule is applied with each pair in the
        "opposite side" role.

    Upper bounds only shrink and lower bounds only grow, so the sweep
    reaches a fixpoint; returns the number of sweeps executed.
    """
    rows = [tuple(map(int, row)) for row in np.asarray(triples)]
    sweeps = 0
    changed = True
    while changed and sweeps < max_sweeps:
        changed = False
        sweeps += 1
        for e_ij, e_jk, e_ik in rows:
            for t, x, y in (
                (e_ik, e_ij, e_jk),
                (e_ij, e_jk, e_ik),
                (e_jk, e_ij, e_ik),
            ):
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


def line_edges(src, dst, n_atoms: int, include_backtrack: bool = False):
    """Adjacency of the directed line graph.

    src, dst: int64 arrays of the directed-edge endpoints of the molecular
    graph. Emits one line edge per pair (e, f) with dst[e] == src[f],
    omitting the backtracking pair dst[f] == src[e] unless requested.
    Output is ordered by e, then f; both arrays index into the directed
    edge list.
    """
    src = np.asarray(src)
    dst = np.asarray(dst)
    by_source: list[list[int]] = [[] for _ in range(n_atoms)]
    for f, u in enumerate(src):
        by_source[int(u)].append(f)
    frm: list[int] = []
    to: list[int] = []
    for e in range(len(src)):
        u = int(src[e])
        for f in by_source[int(dst[e])]:
            if not include_backtrack and int(dst[f]) == u:
                continue
            frm.append(e)
            to.append(f)
    return (
        np.asarray(frm, dtype=np.int64),
        np.asarray(to, dtype=np.int64),
    )
