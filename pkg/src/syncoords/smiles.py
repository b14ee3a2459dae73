"""Parser for the supported SMILES subset.

Covers the organic subset (B C N O P S F Cl Br I), lowercase aromatic atoms
(b c n o p s), bracket atoms with explicit element and charge, bond symbols
- = # :, branches, and ring closures (digits and %nn). Stereo marks
(/ \\ @ @@) are accepted and ignored with a warning; hydrogens are never
materialized as nodes. Isotopes, wildcards and dot-disconnection are outside
the subset and rejected.
"""

from __future__ import annotations

import warnings

from .molgraph import (
    Atom,
    Bond,
    BondOrder,
    MolecularGraph,
    MoleculeError,
    SYMBOL_TO_NUMBER,
    SynCoordWarning,
    annotate,
)

__all__ = ["SmilesError", "parse_smiles"]


class SmilesError(MoleculeError):
    """SMILES syntax error carrying the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


_ORGANIC_TWO = ("Cl", "Br")
_ORGANIC_ONE = frozenset("BCNOPSFI")
_AROMATIC_ONE = frozenset("bcnops")
_BOND_SYMBOLS = {
    "-": BondOrder.SINGLE,
    "=": BondOrder.DOUBLE,
    "#": BondOrder.TRIPLE,
    ":": BondOrder.AROMATIC,
}


class _RawAtom:
    __slots__ = ("element", "aromatic", "charge")

    def __init__(self, element: int, aromatic: bool, charge: int = 0):
        self.element = element
        self.aromatic = aromatic
        self.charge = charge


def _parse_bracket(text: str, start: int) -> tuple[_RawAtom, int]:
    """Parse a bracket atom starting at text[start] == '['; returns (atom, end)."""
    i = start + 1
    n = len(text)

    def peek() -> str:
        return text[i] if i < n else ""

    if peek().isdigit():
        raise SmilesError("isotopes are not supported", i)

    aromatic = False
    element = None
    c = peek()
    if c in _AROMATIC_ONE:
        aromatic = True
        element = SYMBOL_TO_NUMBER[c.upper()]
        i += 1
    elif c.isupper():
        two = text[i : i + 2]
        if len(two) == 2 and two[1].islower() and two in SYMBOL_TO_NUMBER:
            element = SYMBOL_TO_NUMBER[two]
            i += 2
        elif c in SYMBOL_TO_NUMBER:
            element = SYMBOL_TO_NUMBER[c]
            i += 1
    if element is None:
        raise SmilesError(f"unsupported element {text[i:i + 2]!r}", i)

    if peek() == "@":
        i += 1
        if peek() == "@":
            i += 1
        warnings.warn(
            "chirality mark ignored: synthetic coordinates are stereo-agnostic",
            SynCoordWarning,
            stacklevel=3,
        )

    if peek() == "H":
        # Hydrogen count only annotates the heavy atom; H is never a node.
        i += 1
        while peek().isdigit():
            i += 1

    charge = 0
    if peek() in "+-":
        sign = 1 if peek() == "+" else -1
        symbol = peek()
        i += 1
        if peek().isdigit():
            num = 0
            while peek().isdigit():
                num = num * 10 + int(peek())
                i += 1
            charge = sign * num
        else:
            charge = sign
            while peek() == symbol:
                charge += sign
                i += 1

    if peek() != "]":
        raise SmilesError(f"unexpected {peek()!r} in bracket atom", i)
    return _RawAtom(element, aromatic, charge), i + 1


def _resolve_order(explicit, a: _RawAtom, b: _RawAtom) -> BondOrder:
    if explicit is not None:
        return explicit
    if a.aromatic and b.aromatic:
        return BondOrder.AROMATIC
    return BondOrder.SINGLE


def parse_smiles(text: str) -> MolecularGraph:
    """Parse one molecule; raises SmilesError with a byte offset on failure."""
    text = text.strip()
    if not text:
        raise SmilesError("empty SMILES", 0)
    if not text.isascii():
        bad = next(k for k, ch in enumerate(text) if not ch.isascii())
        raise SmilesError("non-ASCII character", bad)

    atoms: list[_RawAtom] = []
    bonds: list[tuple[int, int, BondOrder]] = []
    bonded_pairs: set[tuple[int, int]] = set()
    prev: int | None = None
    pending: BondOrder | None = None
    pending_off = 0
    branch_stack: list[tuple[int, int]] = []  # (return atom, '(' offset)
    # ring-closure number -> (atom index, explicit bond or None, offset)
    ring_open: dict[int, tuple[int, BondOrder | None, int]] = {}

    def add_bond(a: int, b: int, order: BondOrder, off: int):
        pair = (a, b) if a < b else (b, a)
        if a == b:
            raise SmilesError("ring closure to the same atom", off)
        if pair in bonded_pairs:
            raise SmilesError(f"duplicate bond between atoms {pair[0]} and {pair[1]}", off)
        bonded_pairs.add(pair)
        bonds.append((a, b, order))

    def add_atom(raw: _RawAtom, off: int):
        nonlocal prev, pending
        atoms.append(raw)
        idx = len(atoms) - 1
        if prev is not None:
            add_bond(prev, idx, _resolve_order(pending, atoms[prev], raw), off)
        elif pending is not None:
            raise SmilesError("bond symbol before any atom", pending_off)
        prev = idx
        pending = None

    def close_ring(num: int, off: int):
        nonlocal pending
        if prev is None:
            raise SmilesError("ring closure before any atom", off)
        if num in ring_open:
            other, other_bond, other_off = ring_open.pop(num)
            if pending is not None and other_bond is not None and pending is not other_bond:
                raise SmilesError(f"conflicting bond orders on ring closure {num}", off)
            explicit = pending if pending is not None else other_bond
            add_bond(other, prev, _resolve_order(explicit, atoms[other], atoms[prev]), off)
        else:
            ring_open[num] = (prev, pending, off)
        pending = None

    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "(":
            if prev is None:
                raise SmilesError("branch before any atom", i)
            branch_stack.append((prev, i))
            i += 1
        elif c == ")":
            if not branch_stack:
                raise SmilesError("unbalanced parenthesis", i)
            if pending is not None:
                raise SmilesError("dangling bond symbol before ')'", pending_off)
            prev = branch_stack.pop()[0]
            i += 1
        elif c in _BOND_SYMBOLS:
            if pending is not None:
                raise SmilesError("two consecutive bond symbols", i)
            pending = _BOND_SYMBOLS[c]
            pending_off = i
            i += 1
        elif c in "/\\":
            warnings.warn(
                "bond stereo mark ignored: synthetic coordinates are stereo-agnostic",
                SynCoordWarning,
                stacklevel=2,
            )
            if pending is None:
                pending = BondOrder.SINGLE
                pending_off = i
            i += 1
        elif c == "%":
            if i + 2 >= n or not (text[i + 1].isdigit() and text[i + 2].isdigit()):
                raise SmilesError("'%' must be followed by two digits", i)
            close_ring(int(text[i + 1 : i + 3]), i)
            i += 3
        elif c.isdigit():
            close_ring(int(c), i)
            i += 1
        elif c == "[":
            raw, end = _parse_bracket(text, i)
            add_atom(raw, i)
            i = end
        elif c == ".":
            raise SmilesError("dot-disconnected SMILES are not supported", i)
        else:
            two = text[i : i + 2]
            if two in _ORGANIC_TWO:
                add_atom(_RawAtom(SYMBOL_TO_NUMBER[two], aromatic=False), i)
                i += 2
            elif c in _ORGANIC_ONE:
                add_atom(_RawAtom(SYMBOL_TO_NUMBER[c], aromatic=False), i)
                i += 1
            elif c in _AROMATIC_ONE:
                add_atom(_RawAtom(SYMBOL_TO_NUMBER[c.upper()], aromatic=True), i)
                i += 1
            else:
                raise SmilesError(f"unexpected character {c!r}", i)

    if branch_stack:
        raise SmilesError("unbalanced parenthesis", branch_stack[-1][1])
    if pending is not None:
        raise SmilesError("dangling bond symbol at end of input", pending_off)
    if ring_open:
        num, (_, _, off) = next(iter(ring_open.items()))
        raise SmilesError(f"unmatched ring closure {num}", off)

    g = MolecularGraph(
        [
            Atom(index=k, element=raw.element, formal_charge=raw.charge,
                 aromatic=raw.aromatic)
            for k, raw in enumerate(atoms)
        ],
        [Bond(a=a, b=b, order=o) for a, b, o in bonds],
    )
    return annotate(g)
