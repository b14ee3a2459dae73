import json

import numpy as np
import pytest

from syncoords import cli
from syncoords.bounds import AngleBounds


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _records(out: str):
    return [json.loads(line) for line in out.splitlines() if line]


def test_featurize_ethanol_defaults(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("# comment line\nCCO\n")
    code, out, err = _run(capsys, "featurize", str(src))
    assert code == 0
    records = _records(out)
    assert len(records) == 1
    rec = records[0]
    assert rec["status"] == "ok"
    assert rec["input"] == "CCO"
    assert len(rec["line_graph"]["nodes"]) == 4
    assert len(rec["line_graph"]["edges"]) == 2
    node_w = sum(w for _, _, w in rec["features"]["node_layout"])
    assert all(len(row) == node_w for row in rec["features"]["node"])
    edge_w = sum(w for _, _, w in rec["features"]["edge_layout"])
    assert all(len(row) == edge_w for row in rec["features"]["edge"])
    assert rec["manifest"]["config"]["alpha"] == 0.15
    assert rec["manifest"]["config"]["coords"] == "both"
    assert "1 molecules, 0 errors" in err


def test_featurize_deterministic_bytes(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\nc1ccccc1\nCC(=O)O\n")
    out1 = tmp_path / "a.jsonl"
    out2 = tmp_path / "b.jsonl"
    assert cli.main(["featurize", str(src), "-o", str(out1)]) == 0
    capsys.readouterr()
    assert cli.main(["featurize", str(src), "-o", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_featurize_empty_input(tmp_path, capsys):
    src = tmp_path / "empty.smi"
    src.write_text("# nothing here\n\n")
    code, out, _ = _run(capsys, "featurize", str(src))
    assert code == 0
    assert out == ""


def test_featurize_error_handling(tmp_path, capsys):
    src = tmp_path / "bad.smi"
    src.write_text("CCO\nC(\nCC\n")
    code, out, _ = _run(capsys, "featurize", str(src))
    assert code == 1
    records = _records(out)
    assert len(records) == 3
    assert records[1]["status"] == "error"
    assert records[1]["index"] == 1
    assert "parenthesis" in records[1]["error"]
    assert records[0]["status"] == "ok" and records[2]["status"] == "ok"

    code, _, _ = _run(capsys, "featurize", str(src), "--keep-going")
    assert code == 0


def test_featurize_warning_status(tmp_path, capsys):
    src = tmp_path / "warn.smi"
    src.write_text("F/C=C/F\n")
    code, out, _ = _run(capsys, "featurize", str(src))
    assert code == 0
    rec = _records(out)[0]
    assert rec["status"] == "warnings"
    assert any("stereo" in w for w in rec["warnings"])


def test_featurize_coords_selection(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\n")
    code, out, _ = _run(capsys, "featurize", str(src), "--coords", "ppr")
    rec = _records(out)[0]
    assert code == 0
    assert "bounds" not in rec
    assert {src_ for _, src_, _ in map(tuple, rec["features"]["node_layout"])} == {
        "graph", "sppr"
    }


def test_emit_dist_matrix_gating(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\n")
    _, out, _ = _run(capsys, "featurize", str(src))
    assert "pi" not in _records(out)[0]["sppr"]

    _, out, _ = _run(capsys, "featurize", str(src), "--emit-dist-matrix")
    rec = _records(out)[0]
    pi = np.asarray(rec["sppr"]["pi"])
    dist = np.asarray(rec["sppr"]["dist"])
    assert pi.shape == (3, 3) and dist.shape == (3, 3)
    assert dist[0, 0] == 0.0


def test_binary_sidecar_roundtrip(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\nc1ccccc1\n")
    out_path = tmp_path / "out.jsonl"
    code = cli.main([
        "featurize", str(src), "-o", str(out_path), "--format", "json+bin",
        "--emit-dist-matrix",
    ])
    capsys.readouterr()
    assert code == 0
    blob = (tmp_path / "out.jsonl.bin").read_bytes()
    for line in out_path.read_text().splitlines():
        rec = json.loads(line)
        for name, meta in rec["tensors"].items():
            size = int(np.prod(meta["shape"])) * 4
            raw = blob[meta["offset"] : meta["offset"] + size]
            arr = np.frombuffer(raw, dtype="<f4").reshape(meta["shape"])
            key = {"node_features": ("features", "node"),
                   "edge_features": ("features", "edge"),
                   "sppr_pi": ("sppr", "pi"),
                   "sppr_dist": ("sppr", "dist")}[name]
            canonical = np.asarray(rec[key[0]][key[1]], dtype=np.float64)
            np.testing.assert_allclose(arr, canonical, atol=1e-6)


def test_sidecar_requires_output_file(capsys, tmp_path):
    src = tmp_path / "in.smi"
    src.write_text("CCO\n")
    code, _, err = _run(capsys, "featurize", str(src), "--format", "json+bin")
    assert code == 2
    assert "requires -o" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["featurize", "--coords", "bogus"])
    assert exc.value.code == 2


def test_validate_small_corpus(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\nc1ccccc1\nCC(=O)O\nC1CC1\n")
    code, out, _ = _run(capsys, "validate", str(src))
    assert code == 0
    lines = [json.loads(l) for l in out.splitlines()]
    names = {l["check"] for l in lines if "check" in l}
    assert {"metric_axioms", "oracle_equivalence", "bounds_invariants",
            "angle_ordering", "line_graph_counts", "refnet_permutation"} <= names
    assert all(l["passed"] for l in lines if "check" in l)
    assert lines[-1]["summary"]["failures"] == 0


def test_validate_alpha_one(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\nCC\n")
    code, out, _ = _run(capsys, "validate", str(src), "--alpha", "1.0")
    assert code == 0


def test_validate_detects_forced_bug(tmp_path, capsys, monkeypatch):
    import syncoords.validate as validate_mod

    def corrupt(bm, i, j, k):
        return AngleBounds(alpha_min=2.0, alpha_center=1.0, alpha_max=0.5)

    monkeypatch.setattr(validate_mod, "angle_bounds", corrupt)
    src = tmp_path / "in.smi"
    src.write_text("CCO\n")
    code, out, _ = _run(capsys, "validate", str(src))
    assert code == 1
    lines = [json.loads(l) for l in out.splitlines() if l]
    failed = [l for l in lines if "check" in l and not l["passed"]]
    assert any(l["check"] == "angle_ordering" for l in failed)


def test_env_config_defaults(tmp_path, capsys, monkeypatch):
    cfg_path = tmp_path / "defaults.json"
    cfg_path.write_text(json.dumps({"alpha": 0.5, "coords": "ppr"}))
    monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(cfg_path))
    src = tmp_path / "in.smi"
    src.write_text("CCO\n")
    code, out, _ = _run(capsys, "featurize", str(src))
    assert code == 0
    rec = _records(out)[0]
    assert rec["manifest"]["config"]["alpha"] == 0.5
    assert rec["manifest"]["config"]["coords"] == "ppr"
    assert rec["sppr"]["alpha"] == 0.5


def test_env_config_rejects_unknown_keys(tmp_path, monkeypatch):
    cfg_path = tmp_path / "defaults.json"
    cfg_path.write_text(json.dumps({"bogus": 1}))
    monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(cfg_path))
    with pytest.raises(SystemExit, match="unknown keys"):
        cli.main(["featurize", "nonexistent.smi"])


def test_parallel_output_matches_serial(tmp_path, capsys):
    src = tmp_path / "in.smi"
    src.write_text("CCO\nc1ccccc1\nCC(=O)O\nC1CC1\nCSC\nCCl\n")
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    assert cli.main(["featurize", str(src), "-o", str(serial)]) == 0
    assert cli.main(["featurize", str(src), "-o", str(parallel), "--jobs", "2"]) == 0
    capsys.readouterr()
    assert serial.read_bytes() == parallel.read_bytes()
