"""Chemically informed distance bounds for 1- and 2-hop atom pairs.

Bonded pairs get the UFF natural bond length plus/minus 0.01 A. Two-hop
pairs get a law-of-cosines estimate from the ideal angle at the center atom
(hybridization table with a regular-polygon override inside rings), with a
tolerance of 0.04 A, or 0.08 A when an endpoint is heavier than aluminium.
Bounds are then tightened to a triangle-inequality fixpoint.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from . import kernels
from .molgraph import (
    Atom,
    BondOrder,
    Hybridization,
    MolecularGraph,
    SYMBOL_TO_NUMBER,
    SynCoordWarning,
    smallest_ring_through_path,
)

__all__ = [
    "BondParams",
    "BoundsMatrix",
    "AngleBounds",
    "load_bond_params",
    "equilibrium_bond_length",
    "bond_bounds",
    "estimate_angle",
    "triangle_third_side",
    "two_hop_bounds",
    "refine_triangle",
    "angle_bounds",
    "molecular_bounds",
]

BOND_TOLERANCE = 0.01
TWO_HOP_TOLERANCE = 0.04
TWO_HOP_TOLERANCE_HEAVY = 0.08
HEAVY_Z_THRESHOLD = 13  # strictly heavier than aluminium

TETRAHEDRAL_ANGLE = math.acos(-1.0 / 3.0)  # 109.471 degrees

_IDEAL_ANGLE = {
    Hybridization.SP: math.pi,
    Hybridization.SP2: 2.0 * math.pi / 3.0,
    Hybridization.SP3: TETRAHEDRAL_ANGLE,
    Hybridization.OTHER: TETRAHEDRAL_ANGLE,
}

_BOND_ORDER_VALUE = {
    BondOrder.SINGLE: 1.0,
    BondOrder.AROMATIC: 1.5,
    BondOrder.DOUBLE: 2.0,
    BondOrder.TRIPLE: 3.0,
}

# lambda in the UFF bond-order correction r_bo = -lambda (r_i + r_j) ln(n)
_UFF_LAMBDA = 0.1332


@dataclass(frozen=True)
class BondParams:
    """Per (element, hybridization) record: bond radius (A) and electronegativity."""

    radius: float
    chi: float


@lru_cache(maxsize=1)
def load_bond_params() -> dict[tuple[int, str], BondParams]:
    """Load the shipped parameter table, keyed by (atomic number, hybridization key).

    The default row is stored under key (0, "default").
    """
    table: dict[tuple[int, str], BondParams] = {}
    text = resources.files("syncoords.data").joinpath("uff_params.csv").read_text()
    rows = [r for r in text.splitlines() if r.strip() and not r.startswith("#")]
    for rec in csv.DictReader(rows):
        params = BondParams(float(rec["radius_angstrom"]), float(rec["chi"]))
        if rec["element"] == "*":
            table[(0, "default")] = params
        else:
            z = SYMBOL_TO_NUMBER[rec["element"]]
            table[(z, rec["hybridization"])] = params
    if (0, "default") not in table:
        raise RuntimeError("parameter table is missing the default row")
    return table


_FALLBACK_ORDER = ("sp3", "sp2", "sp", "other")


def _params_for(atom: Atom) -> BondParams:
    table = load_bond_params()
    key = (atom.element, atom.hybridization.value)
    if key in table:
        return table[key]
    for hyb in _FALLBACK_ORDER:
        if (atom.element, hyb) in table:
            return table[(atom.element, hyb)]
    warnings.warn(
        f"no bond parameters for element {atom.symbol}; using defaults",
        SynCoordWarning,
        stacklevel=3,
    )
    return table[(0, "default")]


def equilibrium_bond_length(a: Atom, b: Atom, order: BondOrder) -> float:
    """UFF natural bond length in Angstrom.

    r_ij = r_i + r_j + r_bo - r_en, with the bond-order correction
    r_bo = -0.1332 (r_i + r_j) ln(n) and the electronegativity correction
    r_en = r_i r_j (sqrt(chi_i) - sqrt(chi_j))^2 / (chi_i r_i + chi_j r_j).
    """
    pa, pb = _params_for(a), _params_for(b)
    r_sum = pa.radius + pb.radius
    r_bo = -_UFF_LAMBDA * r_sum * math.log(_BOND_ORDER_VALUE[order])
    chi_term = (math.sqrt(pa.chi) - math.sqrt(pb.chi)) ** 2
    r_en = pa.radius * pb.radius * chi_term / (pa.chi * pa.radius + pb.chi * pb.radius)
    return r_sum + r_bo - r_en


class BoundsMatrix:
    """Distance intervals for 1- and 2-hop atom pairs.

    entries maps the sorted pair (i, j) to (d_min, d_max) in Angstrom;
    hops records whether the pair is bonded (1) or a two-hop pair (2).
    """

    __slots__ = ("n_atoms", "entries", "hops")

    def __init__(self, n_atoms: int, entries=None, hops=None):
        self.n_atoms = n_atoms
        self.entries: dict[tuple[int, int], tuple[float, float]] = dict(entries or {})
        self.hops: dict[tuple[int, int], int] = dict(hops or {})

    @staticmethod
    def key(i: int, j: int) -> tuple[int, int]:
        return (i, j) if i < j else (j, i)

    def __contains__(self, pair) -> bool:
        return self.key(*pair) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, i: int, j: int) -> tuple[float, float]:
        return self.entries[self.key(i, j)]

    def center(self, i: int, j: int) -> float:
        lo, hi = self.get(i, j)
        return 0.5 * (lo + hi)

    def copy(self) -> "BoundsMatrix":
        return BoundsMatrix(self.n_atoms, self.entries, self.hops)

    def permuted(self, perm: list[int]) -> "BoundsMatrix":
        """Relabel atom indices: entry (i,j) moves to (perm[i], perm[j])."""
        entries = {
            self.key(perm[i], perm[j]): v for (i, j), v in self.entries.items()
        }
        hops = {self.key(perm[i], perm[j]): v for (i, j), v in self.hops.items()}
        return BoundsMatrix(self.n_atoms, entries, hops)


@dataclass(frozen=True)
class AngleBounds:
    """Realizable angle interval (radians) at the center of a bonded triplet."""

    alpha_min: float
    alpha_center: float
    alpha_max: float


def bond_bounds(g: MolecularGraph) -> BoundsMatrix:
    """1-hop entries: equilibrium length +/- 0.01 A per bond."""
    bm = BoundsMatrix(g.n_atoms)
    for bond in g.bonds:
        length = equilibrium_bond_length(g.atoms[bond.a], g.atoms[bond.b], bond.order)
        key = BoundsMatrix.key(bond.a, bond.b)
        bm.entries[key] = (length - BOND_TOLERANCE, length + BOND_TOLERANCE)
        bm.hops[key] = 1
    return bm


def estimate_angle(g: MolecularGraph, i: int, j: int, k: int) -> float:
    """Ideal angle (radians) at j for the bonded path i-j-k.

    Uses the hybridization table for the center atom; when the path lies in
    a ring of size m, the regular-polygon interior angle pi (m-2) / m takes
    precedence.
    """
    if not (g.has_bond(i, j) and g.has_bond(j, k)):
        raise ValueError(f"atoms {i}-{j}-{k} are not a bonded path")
    ring = smallest_ring_through_path(g, i, j, k)
    if ring is not None:
        return math.pi * (ring - 2) / ring
    return _IDEAL_ANGLE[g.atoms[j].hybridization]


def triangle_third_side(l_ij: float, l_jk: float, theta: float) -> float:
    """Law of cosines: side opposite the angle theta between sides of the given lengths."""
    return math.sqrt(l_ij * l_ij + l_jk * l_jk - 2.0 * l_ij * l_jk * math.cos(theta))


def two_hop_bounds(g: MolecularGraph, bm: BoundsMatrix) -> BoundsMatrix:
    """Add entries for all two-hop pairs, one law-of-cosines estimate per path.

    Multiple paths between the same pair intersect their intervals; an empty
    intersection falls back to the union hull with a warning.
    """
    out = bm.copy()
    candidates: dict[tuple[int, int], list[tuple[float, float]]] = {}
    for j in range(g.n_atoms):
        nbrs = g.neighbors(j)
        for ai in range(len(nbrs)):
            for bi in range(ai + 1, len(nbrs)):
                i, k = nbrs[ai], nbrs[bi]
                if g.has_bond(i, k):
                    continue  # covered by the tighter 1-hop entry
                d = triangle_third_side(
                    bm.center(i, j), bm.center(j, k), estimate_angle(g, i, j, k)
                )
                heavy = (
                    g.atoms[i].element > HEAVY_Z_THRESHOLD
                    or g.atoms[k].element > HEAVY_Z_THRESHOLD
                )
                tol = TWO_HOP_TOLERANCE_HEAVY if heavy else TWO_HOP_TOLERANCE
                candidates.setdefault(BoundsMatrix.key(i, k), []).append(
                    (d - tol, d + tol)
                )
    for key, intervals in candidates.items():
        lo = max(iv[0] for iv in intervals)
        hi = min(iv[1] for iv in intervals)
        if lo > hi:
            lo = min(iv[0] for iv in intervals)
            hi = max(iv[1] for iv in intervals)
            warnings.warn(
                f"conflicting two-hop paths for atom pair {key}; widened to the hull",
                SynCoordWarning,
                stacklevel=2,
            )
        out.entries[key] = (lo, hi)
        out.hops[key] = 2
    return out


def _entry_triples(bm: BoundsMatrix):
    """Entry-id arrays for every atom triple whose three pairs have entries."""
    keys = sorted(bm.entries)
    index = {key: e for e, key in enumerate(keys)}
    adj: dict[int, set[int]] = {}
    for i, j in keys:
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
    rows = []
    for i, j in keys:
        for k in sorted(adj[i] & adj[j]):
            if k > j:  # each unordered triple exactly once (i < j < k)
                rows.append(
                    (index[(i, j)], index[(j, k)], index[(i, k)])
                )
    triples = np.asarray(rows, dtype=np.int64).reshape(len(rows), 3)
    return keys, triples


def refine_triangle(bm: BoundsMatrix, full_matrix: bool = False) -> BoundsMatrix:
    """Tighten bounds to the triangle-inequality fixpoint.

    Smoothing is restricted to triples whose three pairs all have entries;
    full_matrix=True runs a classical dense smoothing pass over all atom
    triples instead (comparison only, equivalent on 1-/2-hop entries).
    Entries left inconsistent (lower > upper) are reset to their input
    values with a warning.
    """
    if full_matrix:
        return _refine_dense(bm)
    keys, triples = _entry_triples(bm)
    lo = np.array([bm.entries[k][0] for k in keys], dtype=np.float64)
    hi = np.array([bm.entries[k][1] for k in keys], dtype=np.float64)
    if len(triples):
        kernels.smooth_bounds(lo, hi, triples)
    out = BoundsMatrix(bm.n_atoms, hops=bm.hops)
    for e, key in enumerate(keys):
        if lo[e] > hi[e]:
            warnings.warn(
                f"inconsistent bounds for atom pair {key} after refinement; entry reset",
                SynCoordWarning,
                stacklevel=2,
            )
            out.entries[key] = bm.entries[key]
        else:
            out.entries[key] = (float(lo[e]), float(hi[e]))
    return out


def _refine_dense(bm: BoundsMatrix) -> BoundsMatrix:
    n = bm.n_atoms
    hi = np.full((n, n), np.inf)
    lo = np.zeros((n, n))
    np.fill_diagonal(hi, 0.0)
    for (i, j), (l, u) in bm.entries.items():
        lo[i, j] = lo[j, i] = l
        hi[i, j] = hi[j, i] = u
    for k in range(n):
        via = hi[:, k, None] + hi[None, k, :]
        np.minimum(hi, via, out=hi)
        np.maximum(lo, lo[:, k, None] - hi[None, k, :], out=lo)
        np.maximum(lo, lo[None, k, :] - hi[:, k, None], out=lo)
    out = BoundsMatrix(n, hops=bm.hops)
    for key in bm.entries:
        i, j = key
        if lo[i, j] > hi[i, j]:
            warnings.warn(
                f"inconsistent bounds for atom pair {key} after refinement; entry reset",
                SynCoordWarning,
                stacklevel=3,
            )
            out.entries[key] = bm.entries[key]
        else:
            out.entries[key] = (float(lo[i, j]), float(hi[i, j]))
    return out


def _clamped_arccos(x: float) -> float:
    if x > 1.0 or x < -1.0:
        if abs(x) - 1.0 > 1e-6:
            warnings.warn(
                f"arccos argument {x:.6f} clamped to [-1, 1]",
                SynCoordWarning,
                stacklevel=3,
            )
        x = max(-1.0, min(1.0, x))
    return math.acos(x)


def _triplet_angle(d_ij: float, d_jk: float, d_ik: float) -> float:
    return _clamped_arccos(
        (d_ij * d_ij + d_jk * d_jk - d_ik * d_ik) / (2.0 * d_ij * d_jk)
    )


def angle_bounds(bm: BoundsMatrix, i: int, j: int, k: int) -> AngleBounds:
    """Realizable angle interval at j from the distance intervals.

    The widest angle pairs the shortest flanking distances with the longest
    far distance; the narrowest does the opposite; the center angle uses
    interval midpoints throughout.
    """
    try:
        lo_ij, hi_ij = bm.get(i, j)
        lo_jk, hi_jk = bm.get(j, k)
        lo_ik, hi_ik = bm.get(i, k)
    except KeyError as exc:
        raise ValueError(
            f"triplet ({i},{j},{k}) without 2-hop bound for the outer pair"
        ) from exc
    alpha_max = _triplet_angle(lo_ij, lo_jk, hi_ik)
    alpha_min = _triplet_angle(hi_ij, hi_jk, lo_ik)
    alpha_center = _triplet_angle(
        0.5 * (lo_ij + hi_ij), 0.5 * (lo_jk + hi_jk), 0.5 * (lo_ik + hi_ik)
    )
    return AngleBounds(alpha_min=alpha_min, alpha_center=alpha_center, alpha_max=alpha_max)


def molecular_bounds(g: MolecularGraph, full_matrix: bool = False) -> BoundsMatrix:
    """Full pipeline: bond bounds, two-hop bounds, triangle refinement."""
    return refine_triangle(two_hop_bounds(g, bond_bounds(g)), full_matrix=full_matrix)
