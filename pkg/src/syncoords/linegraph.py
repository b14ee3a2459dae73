"""Directed line graph of a molecular graph, with feature payloads.

Every bond splits into two directed edges; these become the line-graph
nodes, and two nodes connect when the edges meet head-to-tail. Node payloads
carry endpoint-atom one-hots, the bond-order one-hot, and the distance basis
blocks of the selected coordinate sources; edge payloads carry the angle
basis blocks for the atom triplet the two edges span.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bounds import BoundsMatrix, angle_bounds
from .featurize import (
    FeaturizeConfig,
    angle_block_layout,
    bounds_angle_block,
    bounds_distance_block,
    distance_block_layout,
    sppr_angle_block,
    sppr_distance_block,
)
from .molgraph import Hybridization, MolecularGraph, SYMBOL_TO_NUMBER, SynCoordWarning
from .pprdist import SpprResult

__all__ = [
    "DirectedLineGraph",
    "FeaturizedLineGraph",
    "SOURCE_CHOICES",
    "build_line_graph",
    "attach_payloads",
    "atom_feature_matrix",
    "payload_layout",
    "ATOM_FEATURE_WIDTH",
    "BOND_FEATURE_WIDTH",
]

SOURCE_CHOICES = ("bounds", "sppr", "both")

# One-hot vocabularies for the graph-derived feature blocks.
_ELEMENT_VOCAB = tuple(SYMBOL_TO_NUMBER[s] for s in
                       ("B", "C", "N", "O", "F", "P", "S", "Cl", "Br", "I"))
_HYB_ORDER = (Hybridization.SP, Hybridization.SP2, Hybridization.SP3,
              Hybridization.OTHER)

ATOM_FEATURE_WIDTH = len(_ELEMENT_VOCAB) + 1 + 1 + len(_HYB_ORDER) + 3
BOND_FEATURE_WIDTH = 4


@dataclass(frozen=True)
class DirectedLineGraph:
    """Topology only: line nodes are directed edges (u, v) of the source graph."""

    nodes: np.ndarray = field(repr=False)  # (L, 2) int64: (u, v) per line node
    node_bond: np.ndarray = field(repr=False)  # (L,) int64: source bond index
    edges: np.ndarray = field(repr=False)  # (M, 2) int64: line-node index pairs
    include_backtrack: bool = False

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class FeaturizedLineGraph:
    line_graph: DirectedLineGraph
    node_features: np.ndarray = field(repr=False)
    edge_features: np.ndarray = field(repr=False)
    node_layout: tuple
    edge_layout: tuple
    sources: tuple


def build_line_graph(
    g: MolecularGraph, include_backtrack: bool = False
) -> DirectedLineGraph:
    """Topology of the directed line graph.

    Line nodes are enumerated per bond, forward direction first. Line edges
    join (u,v) to (v,w); the backtracking edge w == u is omitted unless
    requested.
    """
    n_bonds = g.n_bonds
    nodes = np.empty((2 * n_bonds, 2), dtype=np.int64)
    node_bond = np.empty(2 * n_bonds, dtype=np.int64)
    for b, bond in enumerate(g.bonds):
        nodes[2 * b] = (bond.a, bond.b)
        nodes[2 * b + 1] = (bond.b, bond.a)
        node_bond[2 * b : 2 * b + 2] = b
    if n_bonds:
        frm, to = kernels.line_edges(
            np.ascontiguousarray(nodes[:, 0]),
            np.ascontiguousarray(nodes[:, 1]),
            g.n_atoms,
            include_backtrack,
        )
        edges = np.stack([frm, to], axis=1)
    else:
        warnings.warn(
            "molecule has no bonds; line graph is empty",
            SynCoordWarning,
            stacklevel=2,
        )
        edges = np.empty((0, 2), dtype=np.int64)
    return DirectedLineGraph(
        nodes=nodes, node_bond=node_bond, edges=edges,
        include_backtrack=include_backtrack,
    )


def atom_feature_matrix(g: MolecularGraph) -> np.ndarray:
    """(N, ATOM_FEATURE_WIDTH) one-hot block per atom.

    Layout: element one-hot over the organic vocabulary plus an
    other-element slot, aromatic flag, hybridization one-hot, charge-sign
    one-hot (negative / neutral / positive).
    """
    n_el = len(_ELEMENT_VOCAB)
    feats = np.zeros((g.n_atoms, ATOM_FEATURE_WIDTH))
    el_slot = {z: i for i, z in enumerate(_ELEMENT_VOCAB)}
    hyb_slot = {h: i for i, h in enumerate(_HYB_ORDER)}
    for atom in g.atoms:
        row = feats[atom.index]
        row[el_slot.get(atom.element, n_el)] = 1.0
        row[n_el + 1] = 1.0 if atom.aromatic else 0.0
        row[n_el + 2 + hyb_slot[atom.hybridization]] = 1.0
        charge_slot = 0 if atom.formal_charge < 0 else (2 if atom.formal_charge > 0 else 1)
        row[n_el + 2 + len(_HYB_ORDER) + charge_slot] = 1.0
    return feats


def _bond_feature_matrix(g: MolecularGraph) -> np.ndarray:
    order_slot = {"single": 0, "double": 1, "triple": 2, "aromatic": 3}
    feats = np.zeros((g.n_bonds, BOND_FEATURE_WIDTH))
    for b, bond in enumerate(g.bonds):
        feats[b, order_slot[bond.order.value]] = 1.0
    return feats


def payload_layout(cfg: FeaturizeConfig, sources: tuple) -> dict:
    """Ordered (block name, source, width) rows for node and edge payloads."""
    node = [
        ("atom_u", "graph", ATOM_FEATURE_WIDTH),
        ("atom_v", "graph", ATOM_FEATURE_WIDTH),
        ("bond_order", "graph", BOND_FEATURE_WIDTH),
        *distance_block_layout(cfg, sources),
    ]
    edge = angle_block_layout(cfg, sources)
    return {"node": node, "edge": edge}


def _normalize_sources(source: str) -> tuple:
    if source not in SOURCE_CHOICES:
        raise ValueError(f"source must be one of {SOURCE_CHOICES}, got {source!r}")
    return ("bounds", "sppr") if source == "both" else (source,)


def _bounds_angle_rows(
    lg: DirectedLineGraph, bm: BoundsMatrix
) -> np.ndarray:
    rows = np.zeros((lg.n_edges, 3))
    nodes = lg.nodes
    for e, (a, b) in enumerate(lg.edges):
        u, v = nodes[a]
        w = nodes[b][1]
        if w == u:  # backtracking edge: the angle degenerates to zero
            continue
        ab = angle_bounds(bm, int(u), int(v), int(w))
        rows[e] = (ab.alpha_min, ab.alpha_center, ab.alpha_max)
    return rows


def _sppr_angle_rows(lg: DirectedLineGraph, dist: np.ndarray) -> np.ndarray:
    if lg.n_edges == 0:
        return np.zeros(0)
    u = lg.nodes[lg.edges[:, 0], 0]
    v = lg.nodes[lg.edges[:, 0], 1]
    w = lg.nodes[lg.edges[:, 1], 1]
    d_uv = dist[u, v]
    d_vw = dist[v, w]
    d_uw = dist[u, w]
    arg = (d_uv**2 + d_vw**2 - d_uw**2) / (2.0 * d_uv * d_vw)
    return np.arccos(np.clip(arg, -1.0, 1.0))


def attach_payloads(
    lg: DirectedLineGraph,
    g: MolecularGraph,
    source: str,
    cfg: FeaturizeConfig = FeaturizeConfig(),
    bounds_matrix: BoundsMatrix | None = None,
    sppr_result: SpprResult | None = None,
) -> FeaturizedLineGraph:
    """Assemble node and edge feature matrices from the requested sources.

    Concatenation order is fixed: graph one-hots, then the bounds block,
    then the kernel-distance block.
    """
    sources = _normalize_sources(source)
    if "bounds" in sources and bounds_matrix is None:
        raise ValueError("source 'bounds' requested but no bounds data provided")
    if "sppr" in sources and sppr_result is None:
        raise ValueError("source 'sppr' requested but no kernel-distance data provided")

    atom_feats = atom_feature_matrix(g)
    bond_feats = _bond_feature_matrix(g)
    u_idx = lg.nodes[:, 0]
    v_idx = lg.nodes[:, 1]
    node_blocks = [atom_feats[u_idx], atom_feats[v_idx], bond_feats[lg.node_bond]]
    edge_blocks = []

    if "bounds" in sources:
        lo = np.array([bounds_matrix.get(int(u), int(v))[0]
                       for u, v in lg.nodes]).reshape(lg.n_nodes)
        hi = np.array([bounds_matrix.get(int(u), int(v))[1]
                       for u, v in lg.nodes]).reshape(lg.n_nodes)
        node_blocks.append(bounds_distance_block(lo, hi, cfg))
        edge_blocks.append(bounds_angle_block(_bounds_angle_rows(lg, bounds_matrix), cfg))
    if "sppr" in sources:
        d = sppr_result.dist[u_idx, v_idx] if lg.n_nodes else np.zeros(0)
        node_blocks.append(sppr_distance_block(d, cfg))
        edge_blocks.append(sppr_angle_block(_sppr_angle_rows(lg, sppr_result.dist), cfg))

    layout = payload_layout(cfg, sources)
    node_w = sum(w for _, _, w in layout["node"])
    edge_w = sum(w for _, _, w in layout["edge"])
    node_features = (
        np.concatenate(node_blocks, axis=1) if lg.n_nodes
        else np.zeros((0, node_w))
    )
    edge_features = (
        np.concatenate([b.reshape(lg.n_edges, -1) for b in edge_blocks], axis=1)
        if lg.n_edges else np.zeros((0, edge_w))
    )
    return FeaturizedLineGraph(
        line_graph=lg,
        node_features=node_features,
        edge_features=edge_features,
        node_layout=tuple(layout["node"]),
        edge_layout=tuple(layout["edge"]),
        sources=sources,
    )
