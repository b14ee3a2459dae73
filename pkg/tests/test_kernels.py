"""Backend equivalence: the compiled kernels must match the pure-Python ones,
and both must match slow reference implementations written here."""

import numpy as np
import pytest

from syncoords import kernels

from conftest import kernel_backends

BACKENDS = kernel_backends()


def _reference_smooth(lo, hi, triples):
    """Slow fixpoint with fresh arrays; independent of both backends."""
    lo = lo.copy()
    hi = hi.copy()
    changed = True
    while changed:
        changed = False
        for e_ij, e_jk, e_ik in triples:
            for t, x, y in ((e_ik, e_ij, e_jk), (e_ij, e_jk, e_ik), (e_jk, e_ij, e_ik)):
                if hi[x] + hi[y] < hi[t]:
                    hi[t] = hi[x] + hi[y]
                    changed = True
                cand = max(lo[x] - hi[y], lo[y] - hi[x])
                if cand > lo[t]:
                    lo[t] = cand
                    changed = True
    return lo, hi


def _random_instance(rng, n_entries, n_triples):
    lo = rng.uniform(0.5, 2.0, size=n_entries)
    hi = lo + rng.uniform(0.0, 3.0, size=n_entries)
    triples = rng.integers(0, n_entries, size=(n_triples, 3)).astype(np.int64)
    return lo, hi, triples


@pytest.mark.parametrize("impl", BACKENDS)
def test_smooth_bounds_matches_reference(impl):
    rng = np.random.default_rng(0)
    for _ in range(25):
        lo, hi, triples = _random_instance(rng, int(rng.integers(3, 20)), int(rng.integers(1, 40)))
        ref_lo, ref_hi = _reference_smooth(lo, hi, triples)
        got_lo, got_hi = lo.copy(), hi.copy()
        impl.smooth_bounds(got_lo, got_hi, np.ascontiguousarray(triples))
        np.testing.assert_array_equal(got_lo, ref_lo)
        np.testing.assert_array_equal(got_hi, ref_hi)


def test_backends_agree_exactly():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    from syncoords import _speedups, _speedups_py

    rng = np.random.default_rng(1)
    for _ in range(25):
        lo, hi, triples = _random_instance(rng, 12, 30)
        lo_a, hi_a = lo.copy(), hi.copy()
        lo_b, hi_b = lo.copy(), hi.copy()
        _speedups.smooth_bounds(lo_a, hi_a, np.ascontiguousarray(triples))
        _speedups_py.smooth_bounds(lo_b, hi_b, np.ascontiguousarray(triples))
        np.testing.assert_array_equal(lo_a, lo_b)
        np.testing.assert_array_equal(hi_a, hi_b)


def _reference_line_edges(src, dst, include_backtrack):
    out = []
    n = len(src)
    for e in range(n):
        for f in range(n):
            if dst[e] == src[f] and (include_backtrack or dst[f] != src[e]):
                out.append((e, f))
    return out


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("include_backtrack", [False, True])
def test_line_edges_matches_reference(impl, include_backtrack):
    rng = np.random.default_rng(2)
    for _ in range(20):
        n_atoms = int(rng.integers(2, 12))
        pairs = set()
        for _ in range(int(rng.integers(1, 18))):
            a, b = map(int, rng.integers(0, n_atoms, size=2))
            if a != b:
                pairs.add((min(a, b), max(a, b)))
        src, dst = [], []
        for a, b in sorted(pairs):
            src += [a, b]
            dst += [b, a]
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        frm, to = impl.line_edges(src, dst, n_atoms, include_backtrack)
        assert list(zip(frm.tolist(), to.tolist())) == _reference_line_edges(
            src, dst, include_backtrack
        )


def test_dispatch_exposes_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert callable(kernels.smooth_bounds)
    assert callable(kernels.line_edges)
