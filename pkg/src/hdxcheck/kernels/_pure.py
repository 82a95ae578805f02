"""Pure-Python fallback for the exhaustive GF(2) scan kernels.

Semantics must match the compiled backend bit for bit: same Gray-code
enumeration, same weights, same lexicographic tie-breaking.
"""

from __future__ import annotations

BACKEND = "pure"


def lex_less(a: int, b: int) -> bool:
    """Lexicographic order on sorted support tuples.

    Let i be the lowest differing index. If a contains i, a is smaller
    exactly when b still has an element above i; if b contains i, a is
    smaller exactly when a has none (a is the common prefix).
    """
    x = a ^ b
    if not x:
        return False
    low = x & -x
    shift = low.bit_length()
    if a & low:
        return (b >> shift) != 0
    return (a >> shift) == 0


def _mask_weight(mask: int, weights) -> int:
    total = 0
    while mask:
        low = mask & -mask
        total += weights[low.bit_length() - 1]
        mask ^= low
    return total


def _supports(basis):
    out = []
    for vec in basis:
        idxs = []
        while vec:
            low = vec & -vec
            idxs.append(low.bit_length() - 1)
            vec ^= low
        out.append(tuple(idxs))
    return out


def coset_min_weight(start: int, basis: list[int], weights, nbits: int):
    """Scan start + span(basis) exhaustively.

    Returns (minimum weight, lexicographically least minimizing mask,
    number of elements attaining the minimum). Weights are nonnegative
    integers per bit position; 2^len(basis) elements are visited.
    """
    r = len(basis)
    cur = start
    weight = _mask_weight(start, weights)
    best_w, best_mask, count = weight, cur, 1
    if r == 0:
        return best_w, best_mask, count
    supports = _supports(basis)
    for t in range(1, 1 << r):
        j = (t & -t).bit_length() - 1
        for i in supports[j]:
            if (cur >> i) & 1:
                weight -= weights[i]
            else:
                weight += weights[i]
        cur ^= basis[j]
        if weight < best_w:
            best_w, best_mask, count = weight, cur, 1
        elif weight == best_w:
            count += 1
            if lex_less(cur, best_mask):
                best_mask = cur
    return best_w, best_mask, count


def coset_elements_of_weight(start: int, basis: list[int], weights, nbits: int,
                             target: int) -> list[int]:
    """All elements of start + span(basis) whose weight equals target."""
    r = len(basis)
    cur = start
    weight = _mask_weight(start, weights)
    hits = [cur] if weight == target else []
    supports = _supports(basis)
    for t in range(1, 1 << r):
        j = (t & -t).bit_length() - 1
        for i in supports[j]:
            if (cur >> i) & 1:
                weight -= weights[i]
            else:
                weight += weights[i]
        cur ^= basis[j]
        if weight == target:
            hits.append(cur)
    return hits
