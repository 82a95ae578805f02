"""GF(2) linear algebra over int bitsets.

Vectors are Python ints; bit i is coordinate i. Everything here is small
(matrix sides are face counts of desk-scale complexes), so plain elimination
with lowest-set-bit pivots is used throughout.
"""

from __future__ import annotations

from typing import Iterable


def row_basis(rows: Iterable[int]) -> list[int]:
    """Reduced basis of the span, pivots at lowest set bits, sorted by pivot."""
    basis: dict[int, int] = {}
    for row in rows:
        row = _reduce(row, basis)
        if row:
            basis[row & -row] = row
    _back_substitute(basis)
    return [basis[p] for p in sorted(basis)]


def rank(rows: Iterable[int]) -> int:
    return len(row_basis(rows))


def in_span(vec: int, basis: list[int]) -> bool:
    pivots = {b & -b: b for b in basis}
    return _reduce(vec, pivots) == 0


def kernel_basis(out_masks: list[int]) -> list[int]:
    """Basis of {x : XOR of out_masks[i] over set bits of x == 0}."""
    pivots: dict[int, tuple[int, int]] = {}
    kernel: list[int] = []
    for i, out in enumerate(out_masks):
        tag = 1 << i
        while out:
            p = out & -out
            if p not in pivots:
                break
            o2, t2 = pivots[p]
            out ^= o2
            tag ^= t2
        if out:
            pivots[out & -out] = (out, tag)
        else:
            kernel.append(tag)
    return kernel


def extend_basis(basis: list[int], vectors: Iterable[int]) -> list[int]:
    """Vectors from the iterable that extend span(basis), greedily."""
    pivots = {b & -b: b for b in basis}
    added: list[int] = []
    for vec in vectors:
        red = _reduce(vec, pivots)
        if red:
            pivots[red & -red] = red
            added.append(vec)
    return added


def complement_positions(basis: list[int], nbits: int) -> list[int]:
    """Coordinates j such that {e_j} spans a transversal of span(basis).

    The standard vectors at non-pivot positions of the reduced basis meet the
    span only in 0, so their span enumerates the cosets exactly once.
    """
    reduced = row_basis(basis)
    pivot_bits = {(_lowest_index(b)) for b in reduced}
    return [j for j in range(nbits) if j not in pivot_bits]


def _lowest_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def _reduce(vec: int, pivots: dict[int, int]) -> int:
    while vec:
        p = vec & -vec
        if p not in pivots:
            return vec
        vec ^= pivots[p]
    return 0


def _back_substitute(basis: dict[int, int]) -> None:
    for p in sorted(basis, reverse=True):
        row = basis[p]
        for q in basis:
            if q != p and basis[q] & p:
                basis[q] ^= row
