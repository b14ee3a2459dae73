#!/usr/bin/env python3
"""Standalone oracle for natural bond lengths; regenerates the golden file.

Reads the shipped parameter CSV directly and evaluates the published UFF
natural-bond-length formula without importing the package, so the golden
values stay independent of the implementation under test.

    python scripts/gen_uff_golden.py > tests/data/uff_golden.json
"""

import csv
import json
import math
import pathlib

PARAMS = pathlib.Path(__file__).resolve().parents[1] / "src/syncoords/data/uff_params.csv"

ORDER_VALUE = {"single": 1.0, "aromatic": 1.5, "double": 2.0, "triple": 3.0}

CASES = [
    ("C", "sp3", "C", "sp3", "single"),
    ("C", "sp2", "C", "sp2", "aromatic"),
    ("C", "sp2", "C", "sp2", "double"),
    ("C", "sp", "C", "sp", "triple"),
    ("C", "sp3", "O", "sp3", "single"),
    ("C", "sp3", "N", "sp3", "single"),
    ("C", "sp2", "O", "sp2", "double"),
    ("C", "sp2", "N", "sp2", "aromatic"),
    ("C", "sp", "N", "sp", "triple"),
    ("C", "sp3", "Cl", "other", "single"),
    ("C", "sp3", "Br", "other", "single"),
    ("C", "sp3", "I", "other", "single"),
    ("C", "sp3", "S", "sp3", "single"),
    ("C", "sp2", "S", "sp2", "aromatic"),
    ("C", "sp3", "F", "other", "single"),
    ("O", "sp3", "P", "sp3", "single"),
    ("O", "sp2", "S", "sp3", "double"),
    ("O", "sp3", "S", "sp3", "single"),
    ("C", "sp3", "P", "sp3", "single"),
    ("N", "sp3", "C", "sp3", "single"),  # argument order must not matter
]


def load_params():
    table = {}
    rows = [
        r for r in PARAMS.read_text().splitlines()
        if r.strip() and not r.startswith("#")
    ]
    for rec in csv.DictReader(rows):
        table[(rec["element"], rec["hybridization"])] = (
            float(rec["radius_angstrom"]),
            float(rec["chi"]),
        )
    return table


def natural_length(table, el_a, hyb_a, el_b, hyb_b, order):
    r_i, chi_i = table[(el_a, hyb_a)]
    r_j, chi_j = table[(el_b, hyb_b)]
    r_bo = -0.1332 * (r_i + r_j) * math.log(ORDER_VALUE[order])
    r_en = (
        r_i * r_j * (math.sqrt(chi_i) - math.sqrt(chi_j)) ** 2
        / (chi_i * r_i + chi_j * r_j)
    )
    return r_i + r_j + r_bo - r_en


def main():
    table = load_params()
    golden = [
        {
            "a": [el_a, hyb_a],
            "b": [el_b, hyb_b],
            "order": order,
            "length": natural_length(table, el_a, hyb_a, el_b, hyb_b, order),
        }
        for el_a, hyb_a, el_b, hyb_b, order in CASES
    ]
    print(json.dumps(golden, indent=2))


if __name__ == "__main__":
    main()
