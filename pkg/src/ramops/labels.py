"""Atoms (finite-set labels), the two composition place-holders, bidegrees.

Components are indexed by finite sets of atoms.  An atom is a small integer
or a short string; the reserved atoms ``STAR`` and ``HASH`` mark the slots
used by composition and cocomposition.  A fixed total order on atoms (all
integers, then STAR, then HASH, then other strings) pins down every
canonical form in the engine.

A bidegree is a pair ``(h, w)``: ``h`` is the sign-carrying first degree
(the only one the Koszul rule sees), ``w`` is the weight.  Both add under
composition and multiplication.
"""

from __future__ import annotations

from typing import Iterable

Atom = int | str

STAR: Atom = "*"
HASH: Atom = "#"

BiDegree = tuple[int, int]


def atom_key(a: Atom) -> tuple:
    if isinstance(a, int):
        return (0, a, "")
    if a == STAR:
        return (1, 0, "")
    if a == HASH:
        return (1, 1, "")
    return (2, 0, a)


def sort_atoms(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    return tuple(sorted(atoms, key=atom_key))


def check_label_set(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    ordered = sort_atoms(atoms)
    for x, y in zip(ordered, ordered[1:]):
        if x == y:
            raise ValueError(f"duplicate label {x!r}")
    return ordered


def add_bidegree(d1: BiDegree, d2: BiDegree) -> BiDegree:
    return (d1[0] + d2[0], d1[1] + d2[1])


def standard_labels(n: int) -> tuple[Atom, ...]:
    """The reference label set {1, ..., n} used for cached components."""
    if n < 1:
        raise ValueError("need at least one label")
    return tuple(range(1, n + 1))
