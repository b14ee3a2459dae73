import dataclasses

import numpy as np
import pytest

from syncoords.bounds import molecular_bounds
from syncoords.featurize import FeaturizeConfig
from syncoords.linegraph import attach_payloads, build_line_graph
from syncoords.pprdist import sppr
from syncoords.refnet import RefNetConfig, forward
from syncoords.smiles import parse_smiles
from syncoords.validate import _reversed_line_graph


def _flg(g, source="both", lg=None):
    return attach_payloads(
        lg if lg is not None else build_line_graph(g),
        g,
        source,
        FeaturizeConfig(),
        bounds_matrix=molecular_bounds(g) if source in ("bounds", "both") else None,
        sppr_result=sppr(g) if source in ("sppr", "both") else None,
    )


def _rel_gap(a, b):
    scale = max(np.abs(a).max(), np.abs(b).max(), 1e-30)
    return np.abs(a - b).max() / scale


def test_deterministic_given_seed():
    g = parse_smiles("CC(=O)Oc1ccccc1C(=O)O")
    flg = _flg(g)
    out1 = forward(flg, RefNetConfig(seed=42))
    out2 = forward(_flg(g), RefNetConfig(seed=42))
    assert out1.pooled.tobytes() == out2.pooled.tobytes()
    assert out1.per_node.tobytes() == out2.per_node.tobytes()


def test_seed_changes_output():
    flg = _flg(parse_smiles("CCO"))
    a = forward(flg, RefNetConfig(seed=0)).pooled
    b = forward(flg, RefNetConfig(seed=1)).pooled
    assert not np.allclose(a, b)


def test_output_shapes():
    g = parse_smiles("CCO")
    cfg = RefNetConfig(hidden=32, layers=3, seed=0)
    out = forward(_flg(g), cfg)
    assert out.pooled.shape == (32,)
    assert out.per_node.shape == (4, 32)
    assert np.all(np.isfinite(out.pooled))


@pytest.mark.parametrize("source", ["bounds", "sppr", "both"])
def test_permutation_invariance(source):
    g = parse_smiles("CC(C)Cc1ccc(cc1)C(C)C(=O)O")
    rng = np.random.default_rng(5)
    cfg = RefNetConfig(seed=9)
    base = forward(_flg(g, source), cfg).pooled
    for _ in range(3):
        perm = rng.permutation(g.n_atoms).tolist()
        moved = forward(_flg(g.permuted(perm), source), cfg).pooled
        assert _rel_gap(base, moved) < 1e-6


def test_reversal_invariance():
    g = parse_smiles("CC(=O)Oc1ccccc1C(=O)O")
    cfg = RefNetConfig(seed=3)
    base = forward(_flg(g), cfg).pooled
    flipped = forward(_flg(g, lg=_reversed_line_graph(g, False)), cfg).pooled
    assert _rel_gap(base, flipped) < 1e-6


def test_bond_free_molecule_pools_to_zero():
    with pytest.warns(Warning):
        out = forward(_flg(parse_smiles("C")), RefNetConfig())
    assert np.array_equal(out.pooled, np.zeros(32))
    assert out.per_node.shape == (0, 32)


def test_distance_sensitivity():
    g = parse_smiles("CCO")
    cfg = RefNetConfig(seed=0)
    bm = molecular_bounds(g)
    res = sppr(g)
    lg = build_line_graph(g)
    base = forward(
        attach_payloads(lg, g, "both", FeaturizeConfig(), bounds_matrix=bm,
                        sppr_result=res),
        cfg,
    ).pooled
    key = sorted(bm.entries)[0]
    lo, hi = bm.entries[key]
    bm.entries[key] = (1.1 * lo, 1.1 * hi)
    moved = forward(
        attach_payloads(lg, g, "both", FeaturizeConfig(), bounds_matrix=bm,
                        sppr_result=res),
        cfg,
    ).pooled
    assert _rel_gap(base, moved) > 1e-9


def test_width_mismatch_rejected():
    g = parse_smiles("CCO")
    flg = _flg(g)
    broken = dataclasses.replace(flg, node_features=flg.node_features[:, :-1])
    with pytest.raises(ValueError, match="widths"):
        forward(broken, RefNetConfig())


def test_config_validation():
    with pytest.raises(ValueError):
        RefNetConfig(hidden=0)
    with pytest.raises(ValueError):
        RefNetConfig(layers=0)
