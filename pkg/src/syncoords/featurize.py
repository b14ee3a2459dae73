"""Basis expansions of distances and angles.

Distances map to Gaussian radial basis functions with centers spread
uniformly from 0 to a fixed maximum and width equal to the center spacing;
angles map to cosine bases cos(n * angle). Total basis sizes follow the
defaults of 16 (distance) and 18 (angle); sources with several components
(min/max distance, selected angle components) split the total evenly so the
overall width stays constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bounds import AngleBounds

__all__ = [
    "AngleMode",
    "FeaturizeConfig",
    "rbf",
    "abf",
    "bounds_distance_block",
    "sppr_distance_block",
    "bounds_angle_block",
    "sppr_angle_block",
    "distance_block_layout",
    "angle_block_layout",
]

# Covers every 1-/2-hop molecular distance with margin.
DEFAULT_D_MAX_BOUNDS = 5.0
# Analytic maximum sqrt(2 alpha) <= sqrt(2) of the kernel distance, plus 10%.
DEFAULT_D_MAX_SPPR = math.sqrt(2.0) * 1.1


class AngleMode(Enum):
    CENTER = "center"
    MIN = "min"
    MAX = "max"
    MIN_MAX = "min_max"
    CENTER_MIN_MAX = "center_min_max"

    @property
    def components(self) -> tuple[str, ...]:
        """Selected angle-interval components, in fixed (center, min, max) order."""
        return {
            AngleMode.CENTER: ("center",),
            AngleMode.MIN: ("min",),
            AngleMode.MAX: ("max",),
            AngleMode.MIN_MAX: ("min", "max"),
            AngleMode.CENTER_MIN_MAX: ("center", "min", "max"),
        }[self]


@dataclass(frozen=True)
class FeaturizeConfig:
    n_rbf: int = 16
    n_abf: int = 18
    angle_mode: AngleMode = AngleMode.CENTER_MIN_MAX
    d_max_bounds: float = DEFAULT_D_MAX_BOUNDS
    d_max_sppr: float = DEFAULT_D_MAX_SPPR

    def __post_init__(self):
        if self.n_rbf < 2:
            raise ValueError("n_rbf must be >= 2")
        if self.n_abf < 1:
            raise ValueError("n_abf must be >= 1")
        k = len(self.angle_mode.components)
        if self.n_abf % k:
            raise ValueError(
                f"n_abf={self.n_abf} not divisible by the {k} components of "
                f"angle mode {self.angle_mode.value}"
            )
        if self.d_max_bounds <= 0 or self.d_max_sppr <= 0:
            raise ValueError("basis maxima must be positive")


def rbf(d, n: int, d_max: float) -> np.ndarray:
    """Gaussian radial basis: exp(-(d - c_n)^2 / (2 sigma^2)).

    Centers are linspace(0, d_max, n); sigma is the spacing between
    neighboring centers. Accepts a scalar or an array of distances (the
    basis axis is appended last).
    """
    centers = np.linspace(0.0, d_max, n)
    sigma = centers[1] - centers[0]
    d = np.asarray(d, dtype=np.float64)
    z = (d[..., None] - centers) / sigma
    return np.exp(-0.5 * z * z)


def abf(angle, n: int) -> np.ndarray:
    """Cosine angular basis: cos(k * angle) for k = 0..n-1."""
    angle = np.asarray(angle, dtype=np.float64)
    return np.cos(angle[..., None] * np.arange(n))


def bounds_distance_block(lo, hi, cfg: FeaturizeConfig) -> np.ndarray:
    """Minimum- and maximum-distance bases, each n_rbf/2 wide."""
    if cfg.n_rbf % 2:
        raise ValueError("bounds distance features need an even n_rbf (min/max split)")
    half = cfg.n_rbf // 2
    return np.concatenate(
        [rbf(lo, half, cfg.d_max_bounds), rbf(hi, half, cfg.d_max_bounds)], axis=-1
    )


def sppr_distance_block(d, cfg: FeaturizeConfig) -> np.ndarray:
    return rbf(d, cfg.n_rbf, cfg.d_max_sppr)


def bounds_angle_block(ab: AngleBounds | np.ndarray, cfg: FeaturizeConfig) -> np.ndarray:
    """Selected angle components, n_abf/k wide each, in (center, min, max) order.

    Accepts one AngleBounds or an (..., 3) array of (min, center, max) rows.
    """
    comps = cfg.angle_mode.components
    width = cfg.n_abf // len(comps)
    if isinstance(ab, AngleBounds):
        values = {"min": ab.alpha_min, "center": ab.alpha_center, "max": ab.alpha_max}
    else:
        arr = np.asarray(ab, dtype=np.float64)
        values = {"min": arr[..., 0], "center": arr[..., 1], "max": arr[..., 2]}
    return np.concatenate([abf(values[c], width) for c in comps], axis=-1)


def sppr_angle_block(angle, cfg: FeaturizeConfig) -> np.ndarray:
    return abf(angle, cfg.n_abf)


def distance_block_layout(cfg: FeaturizeConfig, sources) -> list[tuple[str, str, int]]:
    """(block name, source, width) rows for the distance features, in order."""
    layout = []
    if "bounds" in sources:
        half = cfg.n_rbf // 2
        layout.append(("rbf_dmin", "bounds", half))
        layout.append(("rbf_dmax", "bounds", half))
    if "sppr" in sources:
        layout.append(("rbf_d", "sppr", cfg.n_rbf))
    return layout


def angle_block_layout(cfg: FeaturizeConfig, sources) -> list[tuple[str, str, int]]:
    """(block name, source, width) rows for the angle features, in order."""
    layout = []
    if "bounds" in sources:
        width = cfg.n_abf // len(cfg.angle_mode.components)
        for comp in cfg.angle_mode.components:
            layout.append((f"abf_{comp}", "bounds", width))
    if "sppr" in sources:
        layout.append(("abf", "sppr", cfg.n_abf))
    return layout
