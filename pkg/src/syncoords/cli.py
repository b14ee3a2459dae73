"""Command-line driver.

syncoords featurize: read molecules (SMILES lines or one-line JSON
documents), emit one JSON record per molecule as a JSON-Lines stream,
optionally with a raw float32 tensor sidecar for bulk consumers.

syncoords validate: run the property suite over the inputs (or the shipped
corpus) and print one machine-readable result line per check.

Exit codes: 0 ok, 1 molecule or check failures, 2 usage errors.
SYNCOORDS_CONFIG may point to a JSON file with default flag values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from importlib import resources

import numpy as np

from . import __version__
from .featurize import DEFAULT_D_MAX_BOUNDS, DEFAULT_D_MAX_SPPR
from .molgraph import MoleculeError
from .pipeline import RunConfig, build_record, parse_input
from .validate import run_suite

CONFIG_ENV_VAR = "SYNCOORDS_CONFIG"

_CONFIG_KEYS = (
    "alpha", "coords", "n_rbf", "n_abf", "angle_mode", "d_max_bounds",
    "d_max_sppr", "include_backtrack", "seed", "emit_dist_matrix",
)


def _env_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    unknown = set(raw) - set(_CONFIG_KEYS)
    if unknown:
        raise SystemExit(f"unknown keys in {path}: {sorted(unknown)}")
    return raw


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float, default=0.15,
                   help="teleport probability of the kernel distance (default 0.15)")
    p.add_argument("--coords", choices=("bounds", "ppr", "both"), default="both",
                   help="which synthetic coordinates to compute (default both)")
    p.add_argument("--n-rbf", type=int, default=16,
                   help="total radial basis size (default 16)")
    p.add_argument("--n-abf", type=int, default=18,
                   help="total angular basis size (default 18)")
    p.add_argument("--angle-mode", default="center_min_max",
                   choices=("center", "min", "max", "min_max", "center_min_max"),
                   help="angle-interval components used for bounds angles")
    p.add_argument("--d-max-bounds", type=float, default=DEFAULT_D_MAX_BOUNDS,
                   help=argparse.SUPPRESS)
    p.add_argument("--d-max-sppr", type=float, default=DEFAULT_D_MAX_SPPR,
                   help=argparse.SUPPRESS)
    p.add_argument("--include-backtrack", action="store_true",
                   help="keep backtracking line edges (w == u)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the reference-network weights")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncoords",
        description="Synthetic coordinates and line-graph featurization for molecular graphs.",
    )
    parser.add_argument("--version", action="version", version=f"syncoords {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    feat = sub.add_parser("featurize", help="featurize molecules to JSON-Lines")
    feat.add_argument("inputs", nargs="*", default=["-"],
                      help="input files of SMILES lines / JSON documents ('-' = stdin)")
    feat.add_argument("-o", "--output", default="-", help="output path ('-' = stdout)")
    feat.add_argument("--format", choices=("json", "json+bin"), default="json",
                      help="add a raw little-endian float32 tensor sidecar")
    feat.add_argument("--keep-going", action="store_true",
                      help="exit 0 even when molecules fail")
    feat.add_argument("--emit-dist-matrix", nargs="?", const="auto", default="off",
                      choices=("auto", "force"),
                      help="embed the kernel matrices (auto: only up to 512 atoms)")
    feat.add_argument("--jobs", type=int, default=1,
                      help="worker processes (default 1)")
    _add_config_flags(feat)

    val = sub.add_parser("validate", help="run the property suite")
    val.add_argument("inputs", nargs="*", default=[],
                     help="input files (default: the shipped corpus)")
    _add_config_flags(val)

    for p in (feat, val):
        defaults = {k: v for k, v in _env_defaults().items()
                    if any(a.dest == k for a in p._actions)}
        p.set_defaults(**defaults)
    return parser


def _read_inputs(paths) -> list[str]:
    lines: list[str] = []
    for path in paths:
        if path == "-":
            content = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                content = fh.read()
        for raw in content.splitlines():
            line = raw.strip()
            if line and not line.startswith("#"):
                lines.append(line)
    return lines


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        alpha=args.alpha,
        coords=args.coords,
        n_rbf=args.n_rbf,
        n_abf=args.n_abf,
        angle_mode=args.angle_mode,
        d_max_bounds=args.d_max_bounds,
        d_max_sppr=args.d_max_sppr,
        include_backtrack=args.include_backtrack,
        seed=args.seed,
        emit_dist_matrix=getattr(args, "emit_dist_matrix", "off"),
    )


def _to_float32_bytes(rows) -> tuple[bytes, list[int]]:
    arr = np.asarray(rows, dtype="<f4")
    return arr.tobytes(order="C"), list(arr.shape)


def _extract_tensors(record: dict, offset: int) -> tuple[dict, bytes, int]:
    """Tensor manifest + raw bytes for one record; JSON stays canonical."""
    manifest = {}
    blob = b""
    named = [
        ("node_features", record.get("features", {}).get("node")),
        ("edge_features", record.get("features", {}).get("edge")),
        ("sppr_pi", record.get("sppr", {}).get("pi")),
        ("sppr_dist", record.get("sppr", {}).get("dist")),
    ]
    for name, rows in named:
        if rows is None:
            continue
        data, shape = _to_float32_bytes(rows)
        manifest[name] = {
            "offset": offset + len(blob),
            "shape": shape,
            "dtype": "<f4",
            "order": "C",
        }
        blob += data
    return manifest, blob, offset + len(blob)


def _cmd_featurize(args: argparse.Namespace) -> int:
    try:
        cfg = _run_config(args)
        texts = _read_inputs(args.inputs)
    except (OSError, ValueError) as exc:
        print(f"syncoords: {exc}", file=sys.stderr)
        return 2
    if args.format == "json+bin" and args.output == "-":
        print("syncoords: --format json+bin requires -o FILE", file=sys.stderr)
        return 2

    worker = partial(build_record, cfg=cfg)
    if args.jobs > 1 and len(texts) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(worker, range(len(texts)), texts, chunksize=8))
    else:
        records = [worker(i, text) for i, text in enumerate(texts)]

    sidecar = b""
    if args.format == "json+bin":
        offset = 0
        for record in records:
            manifest, blob, offset = _extract_tensors(record, offset)
            record["tensors"] = manifest
            sidecar += blob

    payload = "".join(
        json.dumps(record, ensure_ascii=True, separators=(",", ":")) + "\n"
        for record in records
    )
    if args.output == "-":
        sys.stdout.write(payload)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
        if args.format == "json+bin":
            with open(args.output + ".bin", "wb") as fh:
                fh.write(sidecar)

    n_errors = sum(1 for r in records if r["status"] == "error")
    print(
        f"syncoords: {len(records)} molecules, {n_errors} errors",
        file=sys.stderr,
    )
    if n_errors and not args.keep_going:
        return 1
    return 0


def _load_corpus_lines() -> list[str]:
    text = resources.files("syncoords.data").joinpath("corpus.smi").read_text()
    return [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]


def _cmd_validate(args: argparse.Namespace) -> int:
    texts = _read_inputs(args.inputs) if args.inputs else _load_corpus_lines()
    molecules = []
    failures = 0
    for i, text in enumerate(texts):
        try:
            molecules.append((f"input[{i}]", parse_input(text)))
        except MoleculeError as exc:
            print(json.dumps({"check": "parse", "passed": False,
                              "detail": f"input[{i}]: {exc}"}))
            failures += 1
    results = run_suite(molecules, alpha=args.alpha, seed=args.seed)
    for res in results:
        print(json.dumps({"check": res.name, "passed": res.passed,
                          "detail": res.detail}))
        failures += 0 if res.passed else 1
    print(json.dumps({"summary": {"checks": len(results), "failures": failures,
                                  "molecules": len(molecules)}}))
    return 1 if failures else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "featurize":
        return _cmd_featurize(args)
    return _cmd_validate(args)


if __name__ == "__main__":
    sys.exit(main())
