"""Property suite behind `syncoords validate` (also reused by the tests).

Each check runs over a list of molecules and reports one aggregated
pass/fail result; failures carry the first offending molecule and value so
regressions are reproducible from the report alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bounds import angle_bounds, molecular_bounds
from .featurize import FeaturizeConfig
from .linegraph import DirectedLineGraph, attach_payloads, build_line_graph
from .molgraph import MolecularGraph
from .pprdist import (
    SpprConfig,
    series_terms_for_tolerance,
    sppr,
    sppr_matrix,
    sppr_series_oracle,
)
from .refnet import RefNetConfig, forward

__all__ = ["CheckResult", "run_suite", "brute_force_line_graph"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def brute_force_line_graph(g: MolecularGraph, include_backtrack: bool = False):
    """O(E^2) reference construction of the directed line graph."""
    directed = []
    for bond in g.bonds:
        directed.append((bond.a, bond.b))
        directed.append((bond.b, bond.a))
    edges = [
        (e, f)
        for e, (u, v) in enumerate(directed)
        for f, (x, w) in enumerate(directed)
        if v == x and (include_backtrack or w != u)
    ]
    return directed, edges


def _reversed_line_graph(g: MolecularGraph, include_backtrack: bool) -> DirectedLineGraph:
    """Line graph with the opposite per-bond direction enumeration."""
    nodes = np.empty((2 * g.n_bonds, 2), dtype=np.int64)
    node_bond = np.empty(2 * g.n_bonds, dtype=np.int64)
    for b, bond in enumerate(g.bonds):
        nodes[2 * b] = (bond.b, bond.a)
        nodes[2 * b + 1] = (bond.a, bond.b)
        node_bond[2 * b : 2 * b + 2] = b
    if g.n_bonds:
        frm, to = kernels.line_edges(
            np.ascontiguousarray(nodes[:, 0]),
            np.ascontiguousarray(nodes[:, 1]),
            g.n_atoms,
            include_backtrack,
        )
        edges = np.stack([frm, to], axis=1)
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return DirectedLineGraph(
        nodes=nodes, node_bond=node_bond, edges=edges,
        include_backtrack=include_backtrack,
    )


def _featurized(g, source, feat_cfg, lg=None):
    bm = molecular_bounds(g) if source in ("bounds", "both") else None
    res = sppr(g) if source in ("sppr", "both") else None
    if lg is None:
        lg = build_line_graph(g)
    return attach_payloads(lg, g, source, feat_cfg, bounds_matrix=bm, sppr_result=res)


def check_metric_axioms(molecules, alpha: float = 0.15) -> CheckResult:
    for name, g in molecules:
        d = sppr(g, SpprConfig(alpha=alpha)).dist
        if np.abs(np.diag(d)).max() > 1e-12:
            return CheckResult("metric_axioms", False, f"{name}: nonzero self-distance")
        if np.abs(d - d.T).max() > 1e-12:
            return CheckResult("metric_axioms", False, f"{name}: asymmetry")
        slack = (d[:, None, :] - (d[:, :, None] + d[None, :, :])).max()
        if slack > 1e-9:
            return CheckResult(
                "metric_axioms", False, f"{name}: triangle violation {slack:.2e}"
            )
    return CheckResult("metric_axioms", True, f"{len(molecules)} molecules")


def check_oracle_equivalence(molecules, alpha: float = 0.15) -> CheckResult:
    terms = series_terms_for_tolerance(alpha, tol=1e-9)
    worst = 0.0
    for name, g in molecules:
        cfg = SpprConfig(alpha=alpha)
        gap = np.abs(sppr_matrix(g, cfg) - sppr_series_oracle(g, cfg, terms)).max()
        worst = max(worst, gap)
        if gap > 1e-8:
            return CheckResult(
                "oracle_equivalence", False, f"{name}: max entry gap {gap:.2e}"
            )
    return CheckResult("oracle_equivalence", True, f"max entry gap {worst:.2e}")


def check_bounds_invariants(molecules) -> CheckResult:
    for name, g in molecules:
        bm = molecular_bounds(g)
        for (i, j), (lo, hi) in bm.entries.items():
            if not 0.0 < lo <= hi:
                return CheckResult(
                    "bounds_invariants", False, f"{name}: bad interval ({i},{j})"
                )
            if bm.hops[(i, j)] == 1 and abs((hi - lo) - 0.02) > 1e-12:
                return CheckResult(
                    "bounds_invariants", False, f"{name}: 1-hop width != 0.02 at ({i},{j})"
                )
        pairs = set(bm.entries)
        for i, j in pairs:
            for k in range(g.n_atoms):
                if k in (i, j):
                    continue
                a = bm.entries.get(bm.key(i, k))
                b = bm.entries.get(bm.key(j, k))
                if a is None or b is None:
                    continue
                lo_ij, hi_ij = bm.entries[(i, j)]
                if hi_ij > a[1] + b[1] + 1e-9:
                    return CheckResult(
                        "bounds_invariants", False,
                        f"{name}: upper smoothing violated ({i},{j}) via {k}",
                    )
                if lo_ij < max(a[0] - b[1], b[0] - a[1], 0.0) - 1e-9:
                    return CheckResult(
                        "bounds_invariants", False,
                        f"{name}: lower smoothing violated ({i},{j}) via {k}",
                    )
    return CheckResult("bounds_invariants", True, f"{len(molecules)} molecules")


def _iter_triplets(g: MolecularGraph):
    for j in range(g.n_atoms):
        nbrs = g.neighbors(j)
        for ai in range(len(nbrs)):
            for bi in range(ai + 1, len(nbrs)):
                yield nbrs[ai], j, nbrs[bi]


def check_angle_ordering(molecules) -> CheckResult:
    for name, g in molecules:
        bm = molecular_bounds(g)
        for i, j, k in _iter_triplets(g):
            ab = angle_bounds(bm, i, j, k)
            if not (ab.alpha_min <= ab.alpha_center + 1e-9
                    and ab.alpha_center <= ab.alpha_max + 1e-9):
                return CheckResult(
                    "angle_ordering", False,
                    f"{name}: disordered angles at ({i},{j},{k})",
                )
            rev = angle_bounds(bm, k, j, i)
            if ab != rev:
                return CheckResult(
                    "angle_ordering", False, f"{name}: asymmetry at ({i},{j},{k})"
                )
    return CheckResult("angle_ordering", True, f"{len(molecules)} molecules")


def check_line_graph_counts(molecules) -> CheckResult:
    for name, g in molecules:
        lg = build_line_graph(g)
        directed, ref_edges = brute_force_line_graph(g)
        if lg.nodes.tolist() != [list(p) for p in directed]:
            return CheckResult("line_graph_counts", False, f"{name}: node mismatch")
        if lg.edges.tolist() != [list(p) for p in ref_edges]:
            return CheckResult("line_graph_counts", False, f"{name}: edge mismatch")
        if lg.n_nodes != 2 * g.n_bonds:
            return CheckResult("line_graph_counts", False, f"{name}: |V_L| != 2|E|")
        expected = sum(g.degree(v) * (g.degree(v) - 1) for v in range(g.n_atoms))
        if lg.n_edges != expected:
            return CheckResult(
                "line_graph_counts", False, f"{name}: |E_L| != sum deg(deg-1)"
            )
    return CheckResult("line_graph_counts", True, f"{len(molecules)} molecules")


def _pooled(g, source, feat_cfg, net_cfg, lg=None):
    return forward(_featurized(g, source, feat_cfg, lg=lg), net_cfg).pooled


def _rel_gap(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.abs(a).max()), float(np.abs(b).max()), 1e-30)
    return float(np.abs(a - b).max()) / scale


def check_refnet_permutation(
    molecules, seed: int = 0, n_perms: int = 2, sources=("bounds", "sppr", "both")
) -> CheckResult:
    rng = np.random.default_rng(seed)
    feat_cfg = FeaturizeConfig()
    net_cfg = RefNetConfig(seed=seed)
    for name, g in molecules:
        for source in sources:
            base = _pooled(g, source, feat_cfg, net_cfg)
            for _ in range(n_perms):
                perm = rng.permutation(g.n_atoms).tolist()
                gap = _rel_gap(base, _pooled(g.permuted(perm), source, feat_cfg, net_cfg))
                if gap > 1e-6:
                    return CheckResult(
                        "refnet_permutation", False,
                        f"{name}/{source}: relative gap {gap:.2e}",
                    )
    return CheckResult("refnet_permutation", True, f"{len(molecules)} molecules")


def check_refnet_reversal(molecules, seed: int = 0) -> CheckResult:
    feat_cfg = FeaturizeConfig()
    net_cfg = RefNetConfig(seed=seed)
    for name, g in molecules:
        base = _pooled(g, "both", feat_cfg, net_cfg)
        flipped = _pooled(g, "both", feat_cfg, net_cfg,
                          lg=_reversed_line_graph(g, include_backtrack=False))
        gap = _rel_gap(base, flipped)
        if gap > 1e-6:
            return CheckResult(
                "refnet_reversal", False, f"{name}: relative gap {gap:.2e}"
            )
    return CheckResult("refnet_reversal", True, f"{len(molecules)} molecules")


def check_refnet_sensitivity(molecules, seed: int = 0) -> CheckResult:
    """Perturbing one input distance by 10% must move the pooled output."""
    feat_cfg = FeaturizeConfig()
    net_cfg = RefNetConfig(seed=seed)
    for name, g in molecules:
        if g.n_bonds == 0:
            continue
        bm = molecular_bounds(g)
        res = sppr(g)
        lg = build_line_graph(g)
        base = forward(
            attach_payloads(lg, g, "both", feat_cfg, bounds_matrix=bm, sppr_result=res),
            net_cfg,
        ).pooled
        key = sorted(bm.entries)[0]
        lo, hi = bm.entries[key]
        perturbed = bm.copy()
        perturbed.entries[key] = (1.1 * lo, 1.1 * hi)
        moved = forward(
            attach_payloads(lg, g, "both", feat_cfg, bounds_matrix=perturbed,
                            sppr_result=res),
            net_cfg,
        ).pooled
        if _rel_gap(base, moved) < 1e-9:
            return CheckResult(
                "refnet_sensitivity", False, f"{name}: pooled output did not move"
            )
    return CheckResult("refnet_sensitivity", True, f"{len(molecules)} molecules")


def run_suite(molecules, alpha: float = 0.15, seed: int = 0) -> list[CheckResult]:
    """All checks over (name, graph) pairs; order is fixed for reporting."""
    return [
        check_metric_axioms(molecules, alpha=alpha),
        check_oracle_equivalence(molecules, alpha=alpha),
        check_bounds_invariants(molecules),
        check_angle_ordering(molecules),
        check_line_graph_counts(molecules),
        check_refnet_permutation(molecules, seed=seed),
        check_refnet_reversal(molecules, seed=seed),
        check_refnet_sensitivity(molecules, seed=seed),
    ]
