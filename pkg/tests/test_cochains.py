"""Cochain algebra: coboundary, facet counts, localization, norms, spaces."""

import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxcheck import (
    Cochain,
    build_complex,
    coboundary,
    coboundary_space,
    cochain_from_faces,
    cocycle_space,
    cohomology_classes,
    complete_complex,
    coset_minimum_elements,
    delta_i,
    dist_to_coboundaries,
    full_cochain,
    is_locally_minimal,
    is_minimal,
    link_joint_norm,
    localize,
    mutual_norm,
    norm,
    restrict,
    zero_cochain,
)
from hdxcheck.cochains import read_cochain, write_cochain
from hdxcheck.errors import BudgetExceeded, DimensionMismatch


def sympy_gf2_rank(rows, n_cols):
    """Independent rank oracle over GF(2)."""
    from sympy import GF, Matrix
    from sympy.polys.matrices import DomainMatrix

    dense = [[(row >> c) & 1 for c in range(n_cols)] for row in rows]
    if not dense:
        return 0
    return DomainMatrix.from_Matrix(Matrix(dense)).convert_to(GF(2)).rank()


# -- coboundary ------------------------------------------------------------------


def test_coboundary_vertex_on_triangle():
    t = build_complex([(0, 1, 2)], 2)
    f = cochain_from_faces(t, 0, [(0,)])
    assert coboundary(f).support() == ((0, 1), (0, 2))


def test_coboundary_of_zero(delta42):
    assert coboundary(zero_cochain(delta42, 0)).is_zero()


def test_coboundary_definition_oracle(delta63):
    # oracle: evaluate the facet-sum definition face by face
    f = cochain_from_faces(delta63, 1, [(0, 1), (2, 3), (1, 4)])
    df = coboundary(f)
    for tau in delta63.faces(2):
        parity = sum(1 for sub in combinations(tau, 2) if sub in f) % 2
        assert (tau in df) == (parity == 1)


def test_coboundary_at_top_errors(delta42):
    with pytest.raises(DimensionMismatch):
        coboundary(full_cochain(delta42, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 15) - 1))
def test_delta_delta_is_zero(mask):
    x = complete_complex(6, 2)
    f = Cochain(x, 0, mask & 0x3F)
    assert coboundary(coboundary(f)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 15) - 1))
def test_delta_delta_is_zero_3dim(mask):
    x = complete_complex(6, 3)
    f = Cochain(x, 1, mask)
    assert coboundary(coboundary(f)).is_zero()


# -- facet-count sets ---------------------------------------------------------------


def test_delta_i_single_edge(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    assert delta_i(f, 1).support() == ((0, 1, 2), (0, 1, 3))
    assert delta_i(f, 0).support() == ((0, 2, 3), (1, 2, 3))
    assert delta_i(f, 2).is_zero()
    assert delta_i(f, 3).is_zero()


def test_delta_i_zero_and_full(delta42):
    z = zero_cochain(delta42, 1)
    assert delta_i(z, 0).support() == delta42.faces(2)
    full = full_cochain(delta42, 1)
    assert delta_i(full, 3).support() == delta42.faces(2)


def test_delta_i_range_errors(delta42):
    f = zero_cochain(delta42, 1)
    with pytest.raises(DimensionMismatch):
        delta_i(f, -1)
    with pytest.raises(DimensionMismatch):
        delta_i(f, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 15) - 1))
def test_delta_i_partitions_and_covers_coboundary(mask):
    x = complete_complex(6, 2)
    f = Cochain(x, 1, mask)
    union = 0
    total = Fraction(0)
    odd = 0
    for i in range(f.k + 3):
        di = delta_i(f, i)
        assert union & di.mask == 0
        union |= di.mask
        total += norm(di)
        if i % 2 == 1:
            odd |= di.mask
    assert union == (1 << x.n_faces(2)) - 1
    assert total == 1
    assert odd == coboundary(f).mask


# -- localization and restriction ----------------------------------------------------


def test_localize_example(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    assert localize(f, (0,)).support() == ((1,),)


def test_localize_at_empty_face_is_identity(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1), (2, 3)])
    g = localize(f, ())
    assert g.complex is delta42 and g.mask == f.mask


def test_localize_of_zero(delta42):
    for sigma in delta42.faces(0):
        assert localize(zero_cochain(delta42, 1), sigma).is_zero()


def test_localize_dimension_error(delta42):
    f = cochain_from_faces(delta42, 0, [(0,)])
    with pytest.raises(DimensionMismatch):
        localize(f, (0, 1))  # |sigma| = 2 > k+1 = 1


def test_restrict_examples(delta42):
    f01 = cochain_from_faces(delta42, 1, [(0, 1)])
    assert restrict(f01, (0,)).is_zero()
    f12 = cochain_from_faces(delta42, 1, [(1, 2)])
    assert restrict(f12, (0,)).support() == ((1, 2),)
    assert restrict(zero_cochain(delta42, 1), (0,)).is_zero()


def test_restrict_overflow_errors(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    with pytest.raises(DimensionMismatch):
        restrict(f, (2, 3))  # k + |sigma| = 3 > d = 2


def test_localize_restrict_compatibility(delta63):
    # (f_{sigma minus v})^v agrees with f on the union, pointwise
    f = cochain_from_faces(delta63, 2, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
    for sigma in delta63.faces(1):
        for v in sigma:
            rest = tuple(u for u in sigma if u != v)
            g = restrict(localize(f, rest), (v,))
            for tau in g.complex.faces(g.k):
                assert (tau in g) == (tuple(sorted(rest + tau)) in f)


# -- norms -------------------------------------------------------------------------


def test_norm_examples(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    assert norm(f) == Fraction(1, 6)
    assert norm(zero_cochain(delta42, 1)) == 0
    assert norm(full_cochain(delta42, 1)) == 1


def test_localization_total_probability(delta63):
    # |f_tau| equals the link-vertex average of |f_{tau+u}|, exactly
    f = cochain_from_faces(delta63, 2, [(0, 1, 2), (0, 1, 3), (2, 4, 5)])
    for j in range(-1, f.k):
        for tau in delta63.faces(j):
            lk = delta63.link(tau).complex
            acc = sum(
                (lk.face_weight(u) * norm(localize(f, tuple(sorted(tau + u))))
                 for u in lk.faces(0)), Fraction(0))
            assert acc == norm(localize(f, tau))


def test_mutual_norm_example(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    g = cochain_from_faces(delta42, 0, [(0,), (1,)])
    assert mutual_norm(f, g) == Fraction(1, 6)


def test_mutual_norm_full_and_empty(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1), (1, 3)])
    assert mutual_norm(f, full_cochain(delta42, 0)) == norm(f)
    assert mutual_norm(f, zero_cochain(delta42, 0)) == 0


def test_mutual_norm_dimension_error(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    with pytest.raises(DimensionMismatch):
        mutual_norm(f, f)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=(1 << 15) - 1),
       st.integers(min_value=0, max_value=63))
def test_mutual_split_property(fmask, smask):
    x = complete_complex(6, 2)
    f = Cochain(x, 1, fmask)
    s = Cochain(x, 0, smask)
    sc = Cochain(x, 0, 0x3F ^ smask)
    assert mutual_norm(f, s) + mutual_norm(f, sc) == norm(f)


def test_link_joint_norm_example(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    g = delta_i(localize(f, (0,)), 1)
    assert link_joint_norm(delta42, (0,), g) == Fraction(1, 6)
    empty = zero_cochain(delta42.link((0,)).complex, 1)
    assert link_joint_norm(delta42, (0,), empty) == 0


def test_link_joint_norm_brute_oracle(delta63):
    # oracle: enumerate (tau, rho) pairs with their probabilities
    x = delta63
    sigma = (0, 1)
    f = cochain_from_faces(x, 2, [(0, 1, 2), (0, 2, 3), (1, 4, 5)])
    g = delta_i(localize(f, sigma), 1)
    s, j = len(sigma), g.k
    expected = Fraction(0)
    for tau in x.faces(s + j):
        p_tau = x.face_weight(tau)
        for rho in combinations(tau, s):
            if rho == sigma:
                leftover = tuple(v for v in tau if v not in rho)
                if leftover in g:
                    expected += p_tau / math.comb(s + j + 1, s)
    assert link_joint_norm(x, sigma, g) == expected


def test_link_joint_sum_identity_example(delta42):
    # frozen: sum over vertices = 1/3 = coefficient form of the split identity
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    total = sum(
        (link_joint_norm(delta42, v, delta_i(localize(f, v), 1))
         for v in delta42.faces(0)), Fraction(0))
    assert total == Fraction(1, 3)
    assert total == Fraction(1 * (3 - 1), 3) * norm(delta_i(f, 1))


# -- spaces and cohomology -------------------------------------------------------------


def test_space_dimensions_rp2(rp2):
    z1 = cocycle_space(rp2, 1)
    b1 = coboundary_space(rp2, 1)
    assert z1.dimension == 6
    assert b1.dimension == 5
    # independent oracle: ranks of the coboundary matrices over GF(2)
    rank_d0 = sympy_gf2_rank(list(rp2.cofacet_masks(0)), rp2.n_faces(1))
    rank_d1 = sympy_gf2_rank(list(rp2.cofacet_masks(1)), rp2.n_faces(2))
    assert b1.dimension == rank_d0
    assert z1.dimension == rp2.n_faces(1) - rank_d1


def test_complete_complex_has_no_cohomology():
    x = complete_complex(5, 2)
    z1 = cocycle_space(x, 1)
    b1 = coboundary_space(x, 1)
    assert z1.dimension == b1.dimension
    assert len(cohomology_classes(x, 1)) == 1


def test_b0_is_constants(delta42):
    b0 = coboundary_space(delta42, 0)
    assert b0.dimension == 1
    assert b0.basis[0].mask == (1 << delta42.n_faces(0)) - 1


def test_coboundaries_are_cocycles(rp2, delta63):
    for x, k in ((rp2, 1), (delta63, 1), (delta63, 2)):
        for b in coboundary_space(x, k).basis:
            if k < x.dim:
                assert coboundary(b).is_zero()


def test_cohomology_classes_rp2(rp2):
    classes = cohomology_classes(rp2, 1)
    assert len(classes) == 2
    trivial, nontrivial = classes
    assert trivial.representative.is_zero() and trivial.min_weight == 0
    # oracle: exhaustive scan of the full 2^6-element cocycle space
    z_masks = [c.mask for c in cocycle_space(rp2, 1).basis]
    b_masks = set()
    for bits in range(1 << 5):
        m = 0
        for i, bm in enumerate(coboundary_space(rp2, 1).masks()):
            if (bits >> i) & 1:
                m ^= bm
        b_masks.add(m)
    best = None
    for bits in range(1 << 6):
        m = 0
        for i, zm in enumerate(z_masks):
            if (bits >> i) & 1:
                m ^= zm
        if m in b_masks:
            continue
        w = rp2.norm_of_mask(1, m)
        if best is None or w < best:
            best = w
    assert nontrivial.min_weight == best == Fraction(1, 3)
    assert norm(nontrivial.representative) == best
    assert coboundary(nontrivial.representative).is_zero()


def test_cohomology_budget_guard(rp2):
    with pytest.raises(BudgetExceeded):
        cohomology_classes(rp2, 1, budget=4)


def test_minimality(delta42, rp2):
    assert is_minimal(zero_cochain(delta42, 1))
    assert is_locally_minimal(zero_cochain(delta42, 1))
    rep = cohomology_classes(rp2, 1)[1].representative
    assert is_minimal(rep)
    assert is_locally_minimal(rep)


def test_non_minimal_construction(delta42):
    # small f plus a coboundary is in the same coset but heavier
    small = cochain_from_faces(delta42, 1, [(0, 1)])
    shift = coboundary(cochain_from_faces(delta42, 0, [(2,)]))
    fat = small ^ shift
    assert norm(fat) > norm(small)
    assert not is_minimal(fat)
    assert dist_to_coboundaries(fat) <= norm(small)


def test_minimal_implies_locally_minimal_sampled():
    from hdxcheck.verify import sample_cochains
    x = complete_complex(6, 2)
    for f in sample_cochains(x, 1, 25, 99, "minloc-test"):
        m = coset_minimum_elements(f)[0]
        assert is_minimal(m)
        assert is_locally_minimal(m), f"counterexample support: {m.support()}"


def test_coset_minimum_elements_are_sorted_and_tight(rp2):
    rep = cohomology_classes(rp2, 1)[1].representative
    elements = coset_minimum_elements(rep)
    assert len(elements) == 6
    weights = {norm(e) for e in elements}
    assert weights == {Fraction(1, 3)}
    supports = [e.support() for e in elements]
    assert supports == sorted(supports)


# -- file format -----------------------------------------------------------------------


def test_cochain_round_trip(tmp_path, rp2):
    f = cohomology_classes(rp2, 1)[1].representative
    path = tmp_path / "f.cochain"
    write_cochain(f, path)
    back = read_cochain(path, rp2)
    assert back.k == f.k and back.mask == f.mask
