"""Molecular graph types, JSON input format, ring perception and hybridization.

The graph is heavy-atom only: implicit hydrogens are never materialized as
nodes. All types are immutable after construction, so molecules can be
processed concurrently without coordination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional

__all__ = [
    "Hybridization",
    "BondOrder",
    "Atom",
    "Bond",
    "MolecularGraph",
    "MoleculeError",
    "SynCoordWarning",
    "ELEMENT_SYMBOLS",
    "SYMBOL_TO_NUMBER",
    "parse_json",
    "to_json",
    "infer_hybridization",
    "annotate",
]


class MoleculeError(ValueError):
    """Raised for malformed molecular input (syntax or schema violations)."""


class SynCoordWarning(UserWarning):
    """Non-fatal issues: ignored stereo marks, default parameters, clamping."""


class Hybridization(Enum):
    SP = "sp"
    SP2 = "sp2"
    SP3 = "sp3"
    OTHER = "other"


class BondOrder(Enum):
    SINGLE = "single"
    DOUBLE = "double"
    TRIPLE = "triple"
    AROMATIC = "aromatic"


# Periodic table, index = atomic number - 1.
ELEMENT_SYMBOLS = (
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne",
    "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr",
    "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn",
    "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb",
    "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm",
    "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds",
    "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
)

SYMBOL_TO_NUMBER = {s: i + 1 for i, s in enumerate(ELEMENT_SYMBOLS)}


@dataclass(frozen=True)
class Atom:
    index: int
    element: int
    formal_charge: int = 0
    aromatic: bool = False
    in_ring: bool = False
    smallest_ring_size: Optional[int] = None
    hybridization: Hybridization = Hybridization.OTHER

    @property
    def symbol(self) -> str:
        return ELEMENT_SYMBOLS[self.element - 1]


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: BondOrder = BondOrder.SINGLE

    @property
    def pair(self) -> tuple[int, int]:
        """Endpoints as a sorted (unordered) pair."""
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)


class MolecularGraph:
    """Simple undirected heavy-atom graph with typed bonds.

    Construction validates the structural invariants (dense 0..N-1 indices,
    distinct in-range endpoints, no duplicate bonds). Isolated atoms are
    allowed. Instances are immutable.
    """

    __slots__ = ("atoms", "bonds", "_neighbors")

    def __init__(self, atoms: Iterable[Atom], bonds: Iterable[Bond]):
        atoms = tuple(atoms)
        bonds = tuple(bonds)
        n = len(atoms)
        if n < 1:
            raise MoleculeError("molecule must contain at least one atom")
        for i, atom in enumerate(atoms):
            if atom.index != i:
                raise MoleculeError(
                    f"atom indices must be dense 0..{n - 1}: got {atom.index} at position {i}"
                )
            if not 1 <= atom.element <= 118:
                raise MoleculeError(f"atom {i}: element {atom.element} out of range 1-118")
            if atom.in_ring != (atom.smallest_ring_size is not None):
                raise MoleculeError(
                    f"atom {i}: smallest_ring_size must be present iff in_ring"
                )
            if atom.smallest_ring_size is not None and atom.smallest_ring_size < 3:
                raise MoleculeError(f"atom {i}: ring size {atom.smallest_ring_size} < 3")
        seen = set()
        for bond in bonds:
            if bond.a == bond.b:
                raise MoleculeError(f"self-loop bond on atom {bond.a}")
            if not (0 <= bond.a < n and 0 <= bond.b < n):
                raise MoleculeError(f"bond ({bond.a},{bond.b}) index out of range")
            if bond.pair in seen:
                raise MoleculeError(f"duplicate bond {bond.pair}")
            seen.add(bond.pair)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "bonds", bonds)
        nbrs: tuple[list[int], ...] = tuple([] for _ in range(n))
        for bond in bonds:
            nbrs[bond.a].append(bond.b)
            nbrs[bond.b].append(bond.a)
        object.__setattr__(self, "_neighbors", tuple(tuple(x) for x in nbrs))

    def __setattr__(self, name, value):
        raise AttributeError("MolecularGraph is immutable")

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._neighbors[i]

    def degree(self, i: int) -> int:
        return len(self._neighbors[i])

    def bond_between(self, i: int, j: int) -> Optional[Bond]:
        for bond in self.bonds:
            if bond.pair == ((i, j) if i < j else (j, i)):
                return bond
        return None

    def has_bond(self, i: int, j: int) -> bool:
        return j in self._neighbors[i]

    def permuted(self, perm: list[int]) -> "MolecularGraph":
        """Relabel atoms: new index of old atom i is perm[i]."""
        n = self.n_atoms
        if sorted(perm) != list(range(n)):
            raise ValueError("perm must be a permutation of 0..N-1")
        new_atoms = [None] * n
        for atom in self.atoms:
            new_atoms[perm[atom.index]] = replace(atom, index=perm[atom.index])
        new_bonds = [replace(b, a=perm[b.a], b=perm[b.b]) for b in self.bonds]
        return MolecularGraph(new_atoms, new_bonds)


# ---------------------------------------------------------------------------
# Ring perception
# ---------------------------------------------------------------------------

def _shortest_path_avoiding(
    neighbors, start: int, goal: int, skip_edge=None, skip_node=None
) -> Optional[int]:
    """BFS path length (edge count) from start to goal, or None.

    skip_edge: undirected edge (as sorted pair) that must not be traversed.
    skip_node: node that must not be visited.
    """
    if start == goal:
        return 0
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in neighbors[u]:
                if v == skip_node or v in dist:
                    continue
                if skip_edge is not None and (min(u, v), max(u, v)) == skip_edge:
                    continue
                dist[v] = dist[u] + 1
                if v == goal:
                    return dist[v]
                nxt.append(v)
        frontier = nxt
    return None


def smallest_ring_through_edge(g: MolecularGraph, a: int, b: int) -> Optional[int]:
    """Size of the smallest ring containing bond (a,b), or None for acyclic bonds."""
    path = _shortest_path_avoiding(
        g._neighbors, a, b, skip_edge=(min(a, b), max(a, b))
    )
    return None if path is None else path + 1


def smallest_ring_through_path(g: MolecularGraph, i: int, j: int, k: int) -> Optional[int]:
    """Size of the smallest ring containing the bonded path i-j-k, or None."""
    path = _shortest_path_avoiding(g._neighbors, i, k, skip_node=j)
    return None if path is None else path + 2


# ---------------------------------------------------------------------------
# Derived annotations
# ---------------------------------------------------------------------------

# Elements eligible for the sp3 default in the hybridization rule.
_SP3_DEFAULT = frozenset(
    SYMBOL_TO_NUMBER[s] for s in ("C", "N", "O", "S", "P", "B")
)


def _infer_one(atom: Atom, bonds_at: list[Bond]) -> Hybridization:
    n_triple = sum(1 for b in bonds_at if b.order is BondOrder.TRIPLE)
    n_double = sum(1 for b in bonds_at if b.order is BondOrder.DOUBLE)
    if n_triple >= 1 or n_double >= 2:
        return Hybridization.SP
    if atom.aromatic or n_double >= 1:
        return Hybridization.SP2
    if atom.element in _SP3_DEFAULT and bonds_at:
        return Hybridization.SP3
    return Hybridization.OTHER


def infer_hybridization(g: MolecularGraph) -> MolecularGraph:
    """Assign hybridization from bond orders (coarse bond-order rule).

    sp for a triple bond or two double bonds; sp2 for aromatic atoms or one
    double bond; sp3 otherwise for B/C/N/O/P/S; OTHER for halogens, other
    elements and degree-0 atoms.
    """
    by_atom: list[list[Bond]] = [[] for _ in range(g.n_atoms)]
    for bond in g.bonds:
        by_atom[bond.a].append(bond)
        by_atom[bond.b].append(bond)
    atoms = [
        replace(atom, hybridization=_infer_one(atom, by_atom[atom.index]))
        for atom in g.atoms
    ]
    return MolecularGraph(atoms, g.bonds)


def perceive_rings(g: MolecularGraph) -> MolecularGraph:
    """Mark ring membership and the smallest ring size per atom (BFS per edge)."""
    ring_size_at: dict[int, int] = {}
    for bond in g.bonds:
        size = smallest_ring_through_edge(g, bond.a, bond.b)
        if size is None:
            continue
        for idx in (bond.a, bond.b):
            prev = ring_size_at.get(idx)
            if prev is None or size < prev:
                ring_size_at[idx] = size
    atoms = [
        replace(
            atom,
            in_ring=atom.index in ring_size_at,
            smallest_ring_size=ring_size_at.get(atom.index),
        )
        for atom in g.atoms
    ]
    return MolecularGraph(atoms, g.bonds)


def annotate(g: MolecularGraph) -> MolecularGraph:
    """Ring perception followed by hybridization inference."""
    return infer_hybridization(perceive_rings(g))


# ---------------------------------------------------------------------------
# Canonical JSON format
# ---------------------------------------------------------------------------

_ORDER_NAMES = {o.value: o for o in BondOrder}
_HYB_NAMES = {h.value: h for h in Hybridization}


def _require(cond: bool, msg: str):
    if not cond:
        raise MoleculeError(msg)


def parse_json(text: str | dict) -> MolecularGraph:
    """Parse the canonical JSON molecule document.

    Schema: {"atoms":[{"element":int,"charge":int?,"aromatic":bool?,
    "hybridization":str?,"ring_size":int|null?}],
    "bonds":[{"a":int,"b":int,"order":"single|double|triple|aromatic"}]}

    Hybridization and ring fields are recomputed where absent and accepted
    verbatim where present (ring_size null or 0 means explicitly not in a
    ring; an integer >= 3 is the smallest ring size).
    """
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MoleculeError(f"invalid JSON: {exc}") from exc
    else:
        doc = text
    _require(isinstance(doc, dict), "document must be a JSON object")
    _require("atoms" in doc, 'missing "atoms"')
    raw_atoms = doc["atoms"]
    raw_bonds = doc.get("bonds", [])
    _require(isinstance(raw_atoms, list) and raw_atoms, '"atoms" must be a non-empty list')
    _require(isinstance(raw_bonds, list), '"bonds" must be a list')

    atoms = []
    explicit_hyb: dict[int, Hybridization] = {}
    explicit_ring: dict[int, Optional[int]] = {}
    for i, ra in enumerate(raw_atoms):
        _require(isinstance(ra, dict), f"atom {i}: must be an object")
        _require(isinstance(ra.get("element"), int), f"atom {i}: integer element required")
        charge = ra.get("charge", 0)
        _require(isinstance(charge, int), f"atom {i}: charge must be an integer")
        aromatic = ra.get("aromatic", False)
        _require(isinstance(aromatic, bool), f"atom {i}: aromatic must be a boolean")
        if "hybridization" in ra:
            hyb = ra["hybridization"]
            _require(hyb in _HYB_NAMES, f"atom {i}: unknown hybridization {hyb!r}")
            explicit_hyb[i] = _HYB_NAMES[hyb]
        if "ring_size" in ra:
            rs = ra["ring_size"]
            if rs in (None, 0):
                explicit_ring[i] = None
            else:
                _require(isinstance(rs, int) and rs >= 3, f"atom {i}: ring_size must be >= 3")
                explicit_ring[i] = rs
        atoms.append(Atom(index=i, element=ra["element"], formal_charge=charge,
                          aromatic=aromatic))

    bonds = []
    for k, rb in enumerate(raw_bonds):
        _require(isinstance(rb, dict), f"bond {k}: must be an object")
        a, b = rb.get("a"), rb.get("b")
        _require(isinstance(a, int) and isinstance(b, int), f"bond {k}: integer endpoints required")
        if a == b:
            raise MoleculeError(f"bond {k}: self-loop on atom {a}")
        order = rb.get("order", "single")
        _require(order in _ORDER_NAMES, f"bond {k}: unknown order {order!r}")
        bonds.append(Bond(a=a, b=b, order=_ORDER_NAMES[order]))

    g = annotate(MolecularGraph(atoms, bonds))
    if explicit_hyb or explicit_ring:
        patched = []
        for atom in g.atoms:
            if atom.index in explicit_hyb:
                atom = replace(atom, hybridization=explicit_hyb[atom.index])
            if atom.index in explicit_ring:
                rs = explicit_ring[atom.index]
                atom = replace(atom, in_ring=rs is not None, smallest_ring_size=rs)
            patched.append(atom)
        g = MolecularGraph(patched, g.bonds)
    return g


def to_json(g: MolecularGraph) -> dict:
    """Serialize to the canonical JSON document with all derived fields."""
    return {
        "atoms": [
            {
                "element": a.element,
                "charge": a.formal_charge,
                "aromatic": a.aromatic,
                "hybridization": a.hybridization.value,
                "ring_size": a.smallest_ring_size if a.in_ring else None,
            }
            for a in g.atoms
        ],
        "bonds": [
            {"a": b.a, "b": b.b, "order": b.order.value} for b in g.bonds
        ],
    }
