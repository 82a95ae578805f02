"""Scan kernels: brute-force oracle, backend agreement, tie-breaking."""

import random
from itertools import combinations

import pytest

from hdxcheck.kernels import _pure

try:
    from hdxcheck.kernels import _native
except ImportError:
    _native = None

BACKENDS = [_pure] + ([_native] if _native is not None else [])


def brute(start, basis, weights, nbits):
    """Enumerate the affine span via subsets; the oracle for both kernels."""
    elements = set()
    for r in range(len(basis) + 1):
        for combo in combinations(basis, r):
            m = start
            for b in combo:
                m ^= b
            elements.add(m)
    def weight(m):
        return sum(weights[i] for i in range(nbits) if (m >> i) & 1)
    def support(m):
        return tuple(i for i in range(nbits) if (m >> i) & 1)
    best_w = min(weight(m) for m in elements)
    mins = sorted((m for m in elements if weight(m) == best_w), key=support)
    # multiplicity counts visits, i.e. span elements with repetition removed
    return best_w, mins


def random_instance(rng, max_bits=130, max_r=7):
    n = rng.randint(1, max_bits)
    r = rng.randint(0, min(max_r, n))
    basis = []
    seen = {0}
    while len(basis) < r:
        v = rng.getrandbits(n)
        # keep vectors independent so span size is exactly 2^r
        span = set(seen)
        if v in span or v == 0:
            continue
        seen |= {s ^ v for s in span}
        basis.append(v)
    start = rng.getrandbits(n)
    weights = [rng.randint(0, 40) for _ in range(n)]
    return start, basis, weights, n


@pytest.mark.parametrize("backend", BACKENDS,
                         ids=[b.BACKEND for b in BACKENDS])
def test_kernel_matches_brute_oracle(backend):
    rng = random.Random(2024)
    for _ in range(80):
        start, basis, weights, n = random_instance(rng)
        w, mask, count = backend.coset_min_weight(start, basis, weights, n)
        bw, mins = brute(start, basis, weights, n)
        assert w == bw
        assert mask == mins[0]
        assert count == len(mins)
        hits = backend.coset_elements_of_weight(start, basis, weights, n, w)
        assert sorted(hits) == sorted(mins)


@pytest.mark.skipif(_native is None, reason="compiled backend not built")
def test_backends_agree_on_wide_masks():
    rng = random.Random(99)
    for _ in range(60):
        start, basis, weights, n = random_instance(rng, max_bits=200, max_r=9)
        a = _pure.coset_min_weight(start, basis, weights, n)
        b = _native.coset_min_weight(start, basis, weights, n)
        assert a == b


def test_lex_tie_break_prefers_smaller_support_tuple():
    # weights make {0,3} and {1,2} tie; support tuple (0,3) < (1,2)
    weights = [1, 1, 1, 1]
    start = 0b1001
    basis = [0b1111]
    for backend in BACKENDS:
        w, mask, count = backend.coset_min_weight(start, basis, weights, 4)
        assert w == 2 and count == 2
        assert mask == 0b1001


def test_empty_basis():
    for backend in BACKENDS:
        w, mask, count = backend.coset_min_weight(0b101, [], [3, 5, 7], 3)
        assert (w, mask, count) == (10, 0b101, 1)


def test_zero_weights_count_everything():
    for backend in BACKENDS:
        w, mask, count = backend.coset_min_weight(0, [1, 2], [0, 0], 2)
        assert w == 0 and count == 4 and mask == 0
