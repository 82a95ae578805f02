"""Balance constants, inheritance, dense hierarchies, pseudorandomness."""

from fractions import Fraction

import pytest

from hdxcheck import (
    cochain_from_faces,
    complete_complex,
    full_cochain,
    localize,
    norm,
    restrict,
    zero_cochain,
)
from hdxcheck.balance import (
    INF,
    average_corestriction_norm,
    balance_constant,
    balance_profile,
    check_dense_fraction_bound,
    check_dense_step_bound,
    check_pseudorandom_bound,
    dense_hierarchy,
    inherited_alpha,
    pseudorandom_fraction,
    verify_inheritance,
)
from hdxcheck.errors import DimensionMismatch
from hdxcheck.reports import HYPOTHESIS_NOT_MET, VERIFIED, VIOLATED
from hdxcheck.verify import sample_cochains


def brute_balance(f, ell):
    """Oracle: evaluate the definition face by face with library primitives
    composed the slow way."""
    worst = Fraction(1)
    for sigma in f.complex.faces(ell):
        num = norm(localize(f, sigma))
        den = Fraction(0)
        for u in sigma:
            rest = tuple(v for v in sigma if v != u)
            den += norm(restrict(localize(f, rest), (u,)))
        den /= len(sigma)
        if den == 0:
            ratio = Fraction(1) if num == 0 else INF
        else:
            ratio = num / den
        worst = max(worst, ratio)
    return worst


def test_single_edge_is_unbalanced(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    res = balance_constant(f, 0)
    assert res.alpha == INF
    assert res.witness == (0,)
    assert res.witness_localized == Fraction(1, 3)
    assert res.witness_average == 0


def test_full_cochain_perfectly_balanced(delta42, delta63):
    assert balance_constant(full_cochain(delta42, 1), 0).alpha == 1
    for ell in range(2):
        assert balance_constant(full_cochain(delta63, 2), ell).alpha == 1


def test_zero_cochain_perfectly_balanced(delta42):
    assert balance_constant(zero_cochain(delta42, 1), 0).alpha == 1


def test_balance_range_errors(delta42):
    f = cochain_from_faces(delta42, 1, [(0, 1)])
    with pytest.raises(DimensionMismatch):
        balance_constant(f, 1)
    with pytest.raises(DimensionMismatch):
        balance_constant(f, -1)


def test_balance_matches_brute_oracle(delta63):
    for f in sample_cochains(delta63, 2, 20, 11, "balance-oracle"):
        for ell in range(2):
            assert balance_constant(f, ell).alpha == brute_balance(f, ell)


def test_balance_clamped_at_one(delta63):
    # two disjoint-ish triangles: ratios can fall below 1; the constant cannot
    for f in sample_cochains(delta63, 2, 40, 13, "clamp"):
        for ell in range(2):
            assert balance_constant(f, ell).alpha >= 1


def test_balance_relabel_invariance(delta63):
    import random

    rng = random.Random(4)
    perm = list(range(6))
    rng.shuffle(perm)
    x2 = complete_complex(6, 3)
    for f in sample_cochains(delta63, 2, 10, 17, "relabel"):
        mapped = [tuple(sorted(perm[v] for v in face)) for face in f.support()]
        g = cochain_from_faces(x2, 2, mapped)
        for ell in range(2):
            assert balance_constant(f, ell).alpha == balance_constant(g, ell).alpha


def test_average_corestriction_matches_manual(delta42):
    f = cochain_from_faces(delta42, 1, [(1, 2), (2, 3)])
    sigma = (2,)
    manual = norm(restrict(f, sigma))
    assert average_corestriction_norm(f, sigma) == manual


# -- inheritance ----------------------------------------------------------------------


def test_inheritance_perfect_balance(delta63):
    f = full_cochain(delta63, 2)
    out = verify_inheritance(f, 1)
    assert out.status == VERIFIED
    assert out.lhs == 1 and out.rhs == 1
    assert inherited_alpha(Fraction(1), 1) == 1


def test_inheritance_gates_on_large_alpha(delta63):
    f = cochain_from_faces(delta63, 2, [(0, 1, 2)])
    out = verify_inheritance(f, 1)
    assert out.status == HYPOTHESIS_NOT_MET


def test_inheritance_sampled(delta63):
    verified = hypothesis_not_met = 0
    for f in sample_cochains(delta63, 2, 150, 23, "inherit-test"):
        out = verify_inheritance(f, 1)
        assert out.status != VIOLATED
        if out.status == VERIFIED:
            verified += 1
        else:
            hypothesis_not_met += 1
    assert verified > 0 and hypothesis_not_met > 0


def test_perfect_balance_inherited_downward(delta63):
    for f in sample_cochains(delta63, 2, 200, 29, "corollary"):
        prof = balance_profile(f)
        if prof.alpha(1) == 1:
            assert prof.alpha(0) == 1


# -- dense hierarchy -------------------------------------------------------------------


def test_hierarchy_thresholds_frozen_example(delta62):
    # k=1, eta=1/2, alpha=1, eps=1/4: eta_0 = 1/2, eta_-1 = 7/16
    f = cochain_from_faces(delta62, 1, [(0, 1)])
    h = dense_hierarchy(f, Fraction(1, 2), Fraction(1), Fraction(1, 4))
    assert h.eta[0] == Fraction(1, 2)
    assert h.eta[-1] == Fraction(7, 16)


def test_hierarchy_uniform_recursion_telescopes():
    # the bottom threshold for eta = eps/(k+1) is eps/((k+1)^2 alpha^k)
    x = complete_complex(6, 3)
    f = full_cochain(x, 2)
    eps = Fraction(1, 5)
    alpha = Fraction(3, 2)
    k = 2
    h = dense_hierarchy(f, eps / (k + 1), alpha, eps)
    assert h.eta[-1] == eps / ((k + 1) ** 2 * alpha ** k)
    # and for eta = (1 - eps/(k+1))/(k+1) it is (1-eps)/((k+1) alpha^k)
    h2 = dense_hierarchy(f, (1 - eps / (k + 1)) / (k + 1), alpha, eps)
    assert h2.eta[-1] == (1 - eps) / ((k + 1) * alpha ** k)


def test_hierarchy_per_dimension_recursion_telescopes():
    x = complete_complex(6, 3)
    f = full_cochain(x, 2)
    eps = Fraction(1, 5)
    k = 2
    beta = Fraction(1)
    alphas = [Fraction(ell + 1, 1) / beta for ell in range(k)]
    h = dense_hierarchy(f, (1 - eps / (k + 1)) / (k + 1), Fraction(1), eps,
                        alphas=alphas)
    prod = Fraction(1)
    for a in alphas:
        prod *= a
    assert h.eta[-1] == (1 - eps) / ((k + 1) * prod)


def test_dense_sets_zero_cochain(delta62):
    h = dense_hierarchy(zero_cochain(delta62, 1), Fraction(1, 2), Fraction(1),
                        Fraction(1, 4))
    assert all(not faces for faces in h.dense.values())


def test_dense_sets_one_edge(delta62):
    # endpoint localized weight 1/5 is not above 0.3
    f = cochain_from_faces(delta62, 1, [(0, 1)])
    h = dense_hierarchy(f, Fraction(3, 10), Fraction(1), Fraction(1, 100))
    assert h.dense[0] == ()


def test_dense_membership_consistency(delta62):
    for f in sample_cochains(delta62, 1, 25, 31, "dense-member"):
        h = dense_hierarchy(f, Fraction(1, 3), Fraction(2), Fraction(1, 8))
        for i in (-1, 0):
            members = set(h.dense[i])
            for sigma in delta62.faces(i):
                assert (sigma in members) == (norm(localize(f, sigma)) > h.eta[i])
        assert (() in h.dense[-1]) == (norm(f) > h.eta[-1])


def test_dense_fraction_bound_zero_cochain(delta62):
    out = check_dense_fraction_bound(zero_cochain(delta62, 1), Fraction(1, 8),
                                     Fraction(1), Fraction(1, 4), 0.0)
    assert out.status == VERIFIED and out.lhs == 0


def test_dense_fraction_bound_gates_on_size(delta62):
    out = check_dense_fraction_bound(full_cochain(delta62, 1), Fraction(1, 8),
                                     Fraction(1), Fraction(1, 4), 0.0)
    assert out.status == HYPOTHESIS_NOT_MET


def test_dense_step_bound_trivially_met_when_parent_dense(delta62):
    f = full_cochain(delta62, 1)
    h = dense_hierarchy(f, Fraction(1, 8), Fraction(1), Fraction(1, 4))
    out = check_dense_step_bound(f, 0, h, 0.0)
    assert out.status == VERIFIED  # dense_{-1} mass 1 dominates


# -- pseudorandomness -------------------------------------------------------------------


def test_pseudorandom_fraction_examples(delta62):
    assert pseudorandom_fraction(zero_cochain(delta62, 1), 0, Fraction(0)) == 1
    f = cochain_from_faces(delta62, 1, [(0, 1)])
    assert pseudorandom_fraction(f, 0, Fraction(1, 4)) == 1
    assert pseudorandom_fraction(full_cochain(delta62, 1), 0, Fraction(1, 2)) == 0


def test_pseudorandom_bound_gates(delta62):
    out = check_pseudorandom_bound(full_cochain(delta62, 1), 0,
                                   Fraction(1, 4), 0.0)
    assert out.status == HYPOTHESIS_NOT_MET
    out2 = check_pseudorandom_bound(zero_cochain(delta62, 1), 0,
                                    Fraction(1, 4), 0.0)
    assert out2.status == VERIFIED


def test_pseudorandom_bound_needs_two_sided_gap(delta63):
    # exactly 4-balanced, weight 1/5, but concentrated at vertex 0: only
    # 5 of 6 vertices see it below eps, under the 1 - eps|f| = 19/20 bound.
    # With a claimed spectral bound of 0 the conclusion is asserted and is
    # genuinely false; the measured two-sided gap gates it out instead.
    f = cochain_from_faces(delta63, 1, [(0, 1), (0, 2), (3, 4)])
    assert balance_constant(f, 0).alpha == 4
    assert norm(f) == Fraction(1, 5)
    assert pseudorandom_fraction(f, 0, Fraction(1, 4)) == Fraction(5, 6)
    forced = check_pseudorandom_bound(f, 0, Fraction(1, 4), 0.0)
    assert forced.status == VIOLATED
    from hdxcheck.spectral import local_spectral_lambda
    lam_two = local_spectral_lambda(delta63).lambda_eff_two_sided
    gated = check_pseudorandom_bound(f, 0, Fraction(1, 4), lam_two)
    assert gated.status == HYPOTHESIS_NOT_MET
