import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncoords.bounds import AngleBounds
from syncoords.featurize import (
    AngleMode,
    FeaturizeConfig,
    abf,
    angle_block_layout,
    bounds_angle_block,
    bounds_distance_block,
    distance_block_layout,
    rbf,
    sppr_distance_block,
)


def test_rbf_peaks_at_centers():
    out = rbf(2.0, 4, 3.0)  # centers 0, 1, 2, 3
    assert out[2] == pytest.approx(1.0, abs=1e-15)
    assert rbf(0.0, 4, 3.0)[0] == pytest.approx(1.0, abs=1e-15)


def test_rbf_halfway_values():
    out = rbf(1.5, 4, 3.0)
    expected = [math.exp(-1.125), math.exp(-0.125), math.exp(-0.125), math.exp(-1.125)]
    np.testing.assert_allclose(out, expected, atol=1e-12)


def test_rbf_vectorized_matches_scalar():
    ds = np.array([0.0, 0.7, 1.5, 4.2])
    batch = rbf(ds, 16, 5.0)
    for row, d in zip(batch, ds):
        np.testing.assert_array_equal(row, rbf(float(d), 16, 5.0))


def test_abf_values():
    assert abf(1.234, 1)[0] == pytest.approx(1.0, abs=1e-15)
    assert abf(math.pi, 2)[1] == pytest.approx(-1.0, abs=1e-12)
    np.testing.assert_allclose(
        abf(math.pi / 3, 3), [1.0, 0.5, -0.5], atol=1e-12
    )


def test_block_widths_follow_config():
    cfg = FeaturizeConfig()
    assert bounds_distance_block(1.0, 1.1, cfg).shape == (16,)
    assert sppr_distance_block(0.4, cfg).shape == (16,)
    ab = AngleBounds(1.0, 1.1, 1.2)
    assert bounds_angle_block(ab, cfg).shape == (18,)

    assert [w for _, _, w in distance_block_layout(cfg, ("bounds",))] == [8, 8]
    assert [w for _, _, w in distance_block_layout(cfg, ("bounds", "sppr"))] == [8, 8, 16]
    assert [w for _, _, w in angle_block_layout(cfg, ("bounds",))] == [6, 6, 6]

    two = FeaturizeConfig(angle_mode=AngleMode.MIN_MAX)
    assert [w for _, _, w in angle_block_layout(two, ("bounds",))] == [9, 9]


def test_angle_component_order_is_center_min_max():
    cfg = FeaturizeConfig()
    ab = AngleBounds(alpha_min=0.3, alpha_center=0.7, alpha_max=1.2)
    out = bounds_angle_block(ab, cfg)
    np.testing.assert_array_equal(out[:6], abf(0.7, 6))
    np.testing.assert_array_equal(out[6:12], abf(0.3, 6))
    np.testing.assert_array_equal(out[12:], abf(1.2, 6))


def test_zero_width_bounds_identical_halves():
    cfg = FeaturizeConfig()
    out = bounds_distance_block(1.4, 1.4, cfg)
    np.testing.assert_array_equal(out[:8], out[8:])


def test_config_validation():
    with pytest.raises(ValueError, match="n_rbf"):
        FeaturizeConfig(n_rbf=1)
    with pytest.raises(ValueError, match="n_abf"):
        FeaturizeConfig(n_abf=0)
    with pytest.raises(ValueError, match="divisible"):
        FeaturizeConfig(n_abf=16, angle_mode=AngleMode.CENTER_MIN_MAX)
    FeaturizeConfig(n_abf=16, angle_mode=AngleMode.MIN_MAX)  # 16 = 8 + 8 is fine
    with pytest.raises(ValueError, match="even"):
        bounds_distance_block(1.0, 1.1, FeaturizeConfig(n_rbf=7, n_abf=18))


def test_rbf_monotone_away_from_center():
    cfg_n, d_max = 8, 5.0
    centers = np.linspace(0, d_max, cfg_n)
    for k, c in enumerate(centers):
        offsets = np.linspace(0.01, 2.0, 40)
        left = rbf(c - offsets, cfg_n, d_max)[:, k]
        right = rbf(c + offsets, cfg_n, d_max)[:, k]
        assert np.all(np.diff(left) < 0) or np.all(np.diff(left) == 0)
        assert np.all(np.diff(right) < 0)
        assert np.all(left <= 1.0) and np.all(right <= 1.0)


@settings(max_examples=60, deadline=None)
@given(
    d=st.floats(min_value=0.0, max_value=50.0),
    n=st.integers(min_value=2, max_value=32),
)
def test_rbf_range_property(d, n):
    # far tails may underflow float64 to +0; the value is never negative or > 1
    out = rbf(d, n, 5.0)
    assert np.all(out >= 0.0) and np.all(out <= 1.0)


@settings(max_examples=60, deadline=None)
@given(d=st.floats(min_value=0.0, max_value=5.0))
def test_rbf_strictly_positive_at_default_width(d):
    assert np.all(rbf(d, 16, 5.0) > 0.0)


@settings(max_examples=60, deadline=None)
@given(
    angle=st.floats(min_value=0.0, max_value=math.pi),
    n=st.integers(min_value=1, max_value=32),
)
def test_abf_range_property(angle, n):
    out = abf(angle, n)
    assert out[0] == 1.0
    assert np.all(np.abs(out) <= 1.0)


def test_featurization_bit_stable():
    cfg = FeaturizeConfig()
    a = bounds_distance_block(1.23456, 1.34567, cfg)
    b = bounds_distance_block(1.23456, 1.34567, cfg)
    assert a.tobytes() == b.tobytes()
