"""Deterministic reference message-passing forward pass on the line graph.

Not a trainable model: weights come from a seeded generator and the pass
exists to validate the featurization plumbing through invariance checks
(permutation, reversal, sensitivity). Messages flow along line edges, are
sum-aggregated over in-neighbors, and the readout is a mean over line nodes.
The angle payload enters through a global bottleneck projection followed by
a per-layer projection, mirroring how a downstream model would embed it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linegraph import FeaturizedLineGraph

__all__ = ["RefNetConfig", "RefNetOutput", "forward"]


@dataclass(frozen=True)
class RefNetConfig:
    hidden: int = 32
    layers: int = 3
    seed: int = 0
    bottleneck: int = 4

    def __post_init__(self):
        if self.hidden < 1:
            raise ValueError("hidden must be >= 1")
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.bottleneck < 1:
            raise ValueError("bottleneck must be >= 1")


@dataclass(frozen=True)
class RefNetOutput:
    pooled: np.ndarray = field(repr=False)
    per_node: np.ndarray = field(repr=False)


def _linear(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    bound = 1.0 / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=(fan_in, fan_out))


def _silu(x: np.ndarray) -> np.ndarray:
    return x / (1.0 + np.exp(-x))


def _draw_weights(cfg: RefNetConfig, node_width: int, edge_width: int) -> dict:
    """Weights depend only on the config and payload widths, never on the graph."""
    rng = np.random.default_rng(cfg.seed)
    h = cfg.hidden
    weights = {
        "embed": _linear(rng, node_width, h),
        "angle_global": _linear(rng, max(edge_width, 1), cfg.bottleneck),
    }
    for layer in range(cfg.layers):
        weights[f"angle_{layer}"] = _linear(rng, cfg.bottleneck, h)
        weights[f"msg_{layer}"] = _linear(rng, 3 * h, h)
        weights[f"update_{layer}"] = _linear(rng, 2 * h, h)
    return weights


def forward(flg: FeaturizedLineGraph, cfg: RefNetConfig = RefNetConfig()) -> RefNetOutput:
    """Run the seeded forward pass; pooled output is the line-node mean.

    A molecule without bonds has an empty line graph and pools to the zero
    vector.
    """
    lg = flg.line_graph
    node_width = flg.node_features.shape[1]
    edge_width = flg.edge_features.shape[1]
    expected_node = sum(w for _, _, w in flg.node_layout)
    expected_edge = sum(w for _, _, w in flg.edge_layout)
    if node_width != expected_node or edge_width != expected_edge:
        raise ValueError(
            f"payload widths ({node_width}, {edge_width}) do not match the layout "
            f"({expected_node}, {expected_edge})"
        )
    weights = _draw_weights(cfg, node_width, max(edge_width, 1))

    if lg.n_nodes == 0:
        return RefNetOutput(
            pooled=np.zeros(cfg.hidden), per_node=np.zeros((0, cfg.hidden))
        )

    h = flg.node_features @ weights["embed"]
    src = lg.edges[:, 0] if lg.n_edges else np.zeros(0, dtype=np.int64)
    dst = lg.edges[:, 1] if lg.n_edges else np.zeros(0, dtype=np.int64)
    angle_bottleneck = (
        flg.edge_features @ weights["angle_global"]
        if lg.n_edges
        else np.zeros((0, cfg.bottleneck))
    )

    for layer in range(cfg.layers):
        agg = np.zeros_like(h)
        if lg.n_edges:
            edge_emb = angle_bottleneck @ weights[f"angle_{layer}"]
            msg_in = np.concatenate([h[dst], h[src], edge_emb], axis=1)
            messages = msg_in @ weights[f"msg_{layer}"]
            np.add.at(agg, dst, messages)
        h = _silu(np.concatenate([h, agg], axis=1) @ weights[f"update_{layer}"])

    return RefNetOutput(pooled=h.mean(axis=0), per_node=h)
