"""Expansion constants by exhaustive search and the statement-level checks.

Exhaustive scans exploit that both the coboundary norm and the distance to a
subspace are constant on cosets of that subspace, so the full space splits
into transversal enumeration times an inner scan kernel. Every reported
witness re-evaluates to its reported ratio exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import gf2, kernels
from .balance import (
    INF,
    BalanceProfile,
    balance_constant,
    balance_profile,
)
from .cochains import (
    Cochain,
    coboundary,
    coboundary_space,
    cocycle_space,
    cohomology_classes,
    coset_minimum_elements,
    delta_i,
    enumeration_budget,
    link_joint_norm,
    localize,
    mutual_norm,
    norm,
    restrict,
)
from .complexes import Face, SimplicialComplex
from .errors import BudgetExceeded, DimensionMismatch
from .reports import (
    HYPOTHESIS_NOT_MET,
    VERIFIED,
    VIOLATED,
    CheckOutcome,
)


def delta1_ratio(f: Cochain) -> Fraction:
    """Weight of faces with exactly one support facet, relative to |f|."""
    if f.is_zero():
        raise DimensionMismatch("ratio undefined for the zero cochain")
    return norm(delta_i(f, 1)) / norm(f)


# -- exhaustive expansion constants ----------------------------------------------


@dataclass(frozen=True)
class ExpansionValue:
    k: int
    beta: Fraction
    witness: Cochain
    witness_distance: Fraction
    evaluations: int


def coboundary_expansion(x: SimplicialComplex, k: int,
                         budget: int | None = None) -> ExpansionValue:
    """Minimum of |delta f| / dist(f, coboundaries) over non-coboundaries.

    Both the numerator and the distance are coset invariants, so the scan
    enumerates a transversal and lets the kernel do each inner coset.
    """
    budget = enumeration_budget(budget)
    n = x.n_faces(k)
    if (1 << n) > budget:
        raise BudgetExceeded(1 << n, budget, f"cochain scan at k={k}")
    b_masks = coboundary_space(x, k).masks()
    covers = x.cover_counts(k)
    den_k = x.weight_den(k)
    den_up = x.weight_den(k + 1)
    upper_covers = x.cover_counts(k + 1)
    facet_masks = x.facet_masks(k + 1)
    free = gf2.complement_positions(b_masks, n)

    best: Fraction | None = None
    best_witness_mask = 0
    best_dist_num = 0
    rep = 0
    # Gray enumeration of the transversal; rep == 0 is the coboundary coset
    for t in range(1, 1 << len(free)):
        j = (t & -t).bit_length() - 1
        rep ^= 1 << free[j]
        delta_num = 0
        for idx, facets in enumerate(facet_masks):
            if (rep & facets).bit_count() & 1:
                delta_num += upper_covers[idx]
        dist_num, wit_mask, _ = kernels.coset_min_weight(rep, b_masks, covers, n)
        ratio = Fraction(delta_num, den_up) / Fraction(dist_num, den_k)
        if best is None or ratio < best or (
                ratio == best and kernels.lex_less(wit_mask, best_witness_mask)):
            best = ratio
            best_witness_mask = wit_mask
            best_dist_num = dist_num
    if best is None:
        raise DimensionMismatch(f"no cochains outside the coboundaries at k={k}")
    return ExpansionValue(k, best, Cochain(x, k, best_witness_mask),
                          Fraction(best_dist_num, den_k), 1 << n)


@dataclass(frozen=True)
class LinkExpansionEntry:
    sigma: Face
    cochain_dim: int
    beta: Fraction


@dataclass(frozen=True)
class MinLinkExpansion:
    k: int
    beta: Fraction
    witness_sigma: Face
    witness_dim: int
    entries: tuple[LinkExpansionEntry, ...]


def min_link_coboundary_expansion(x: SimplicialComplex, k: int,
                                  budget: int | None = None) -> MinLinkExpansion:
    """Worst coboundary expansion over the links a localized set can visit.

    A k-set localized at an ell-face lives in that link at dimension k-ell-1;
    those are exactly the (link, dimension) pairs scanned here.
    """
    entries = []
    best: Fraction | None = None
    witness = None
    for ell in range(k):
        for sigma in x.faces(ell):
            lk = x.link(sigma).complex
            try:
                value = coboundary_expansion(lk, k - ell - 1, budget)
            except BudgetExceeded as exc:
                raise BudgetExceeded(
                    exc.needed, exc.budget,
                    f"link of {sigma} at dimension {k - ell - 1}") from exc
            entries.append(LinkExpansionEntry(sigma, k - ell - 1, value.beta))
            if best is None or value.beta < best:
                best = value.beta
                witness = (sigma, k - ell - 1)
    if best is None or witness is None:
        raise DimensionMismatch(f"no links to scan below dimension {k}")
    return MinLinkExpansion(k, best, witness[0], witness[1], tuple(entries))


@dataclass(frozen=True)
class CosystolicValue:
    k: int
    epsilon: Fraction
    epsilon_witness: Cochain
    mu: Union[Fraction, float]  # math.inf when the cohomology vanishes
    mu_witness: Optional[Cochain]
    evaluations: int


def cosystolic_expansion(x: SimplicialComplex, k: int,
                         budget: int | None = None) -> CosystolicValue:
    """(eps, mu): expansion against the cocycles plus the smallest cosystole."""
    budget = enumeration_budget(budget)
    n = x.n_faces(k)
    if (1 << n) > budget:
        raise BudgetExceeded(1 << n, budget, f"cochain scan at k={k}")
    z_masks = cocycle_space(x, k).masks()
    covers = x.cover_counts(k)
    den_k = x.weight_den(k)
    den_up = x.weight_den(k + 1)
    upper_covers = x.cover_counts(k + 1)
    facet_masks = x.facet_masks(k + 1)
    free = gf2.complement_positions(z_masks, n)

    best: Fraction | None = None
    best_mask = 0
    rep = 0
    for t in range(1, 1 << len(free)):
        j = (t & -t).bit_length() - 1
        rep ^= 1 << free[j]
        delta_num = 0
        for idx, facets in enumerate(facet_masks):
            if (rep & facets).bit_count() & 1:
                delta_num += upper_covers[idx]
        dist_num, wit_mask, _ = kernels.coset_min_weight(rep, z_masks, covers, n)
        ratio = Fraction(delta_num, den_up) / Fraction(dist_num, den_k)
        if best is None or ratio < best or (
                ratio == best and kernels.lex_less(wit_mask, best_mask)):
            best = ratio
            best_mask = wit_mask
    if best is None:
        raise DimensionMismatch(f"every cochain at k={k} is a cocycle")

    classes = cohomology_classes(x, k, budget)
    nontrivial = [c for c in classes if not c.is_trivial]
    if nontrivial:
        smallest = min(nontrivial, key=lambda c: (c.min_weight, c.class_id))
        mu: Union[Fraction, float] = smallest.min_weight
        mu_witness: Optional[Cochain] = smallest.representative
    else:
        mu, mu_witness = INF, None
    return CosystolicValue(k, best, Cochain(x, k, best_mask), mu, mu_witness,
                           1 << n)


# -- identity helpers --------------------------------------------------------------


def local_delta1_identity(f: Cochain) -> tuple[Fraction, Fraction]:
    """Both routes to the summed joint weight of one-facet completions.

    Left: per (k-1)-face, evaluate exactly-one sets in the link and their
    joint weight. Right: facet counts of f over the (k+1)-faces with the
    coefficients i(k+2-i)/C(k+2,2).
    """
    x = f.complex
    k = f.k
    if k < 1 or k >= x.dim:
        raise DimensionMismatch("identity needs 1 <= k < dim")
    lhs = Fraction(0)
    for sigma in x.faces(k - 1):
        g = delta_i(localize(f, sigma), 1)
        lhs += link_joint_norm(x, sigma, g)
    rhs = Fraction(0)
    cc = math.comb(k + 2, 2)
    for i in range(1, k + 2):
        rhs += Fraction(i * (k + 2 - i), cc) * norm(delta_i(f, i))
    return lhs, rhs


def local_delta2_identity(f: Cochain) -> tuple[Fraction, Fraction]:
    """Same two routes for two-facet completions, coefficients C(i,2)/C(k+2,2)."""
    x = f.complex
    k = f.k
    if k < 1 or k >= x.dim:
        raise DimensionMismatch("identity needs 1 <= k < dim")
    lhs = Fraction(0)
    for sigma in x.faces(k - 1):
        g = delta_i(localize(f, sigma), 2)
        lhs += link_joint_norm(x, sigma, g)
    rhs = Fraction(0)
    cc = math.comb(k + 2, 2)
    for i in range(2, k + 3):
        rhs += Fraction(math.comb(i, 2), cc) * norm(delta_i(f, i))
    return lhs, rhs


def composition_lower_bound(f: Cochain) -> tuple[Fraction, Fraction]:
    """|delta_1(f)| >= (k+2)(sum1/2 - k*sum2); returns (lhs, rhs) exactly."""
    k = f.k
    lhs1, _ = local_delta1_identity(f)
    lhs2, _ = local_delta2_identity(f)
    return norm(delta_i(f, 1)), (k + 2) * (lhs1 / 2 - k * lhs2)


# -- statement checks ---------------------------------------------------------------


def check_delta1_lower_bound(f: Cochain, eta: Fraction, lam: float,
                             tolerance: float = 1e-9) -> CheckOutcome:
    """delta_1 weight against the dense-face correction term.

    lhs = |delta_1(f)| exactly; rhs = (k+2)|f|(1 - (k+1)(lam + eta + D/|f|))
    with D the mass of (k-1)-faces whose localized weight exceeds eta.
    The supporting split identities and per-link edge bounds are re-derived
    in the detail dict.
    """
    x = f.complex
    k = f.k
    if f.is_zero():
        raise DimensionMismatch("needs a nonzero cochain")
    if k < 1 or k >= x.dim:
        raise DimensionMismatch("needs 1 <= k < dim")
    eta = Fraction(eta)
    fn = norm(f)
    dense = [s for s in x.faces(k - 1) if norm(localize(f, s)) > eta]
    dense_mass = sum((x.face_weight(s) for s in dense), Fraction(0))
    lhs = norm(delta_i(f, 1))
    rhs = (k + 2) * float(fn) * (
        1 - (k + 1) * (lam + float(eta) + float(dense_mass / fn)))

    eq1 = local_delta1_identity(f)
    eq2 = local_delta2_identity(f)
    comp = composition_lower_bound(f)
    sparse_mask = x.mask_of(
        [s for s in x.faces(k - 1) if s not in set(dense)], k - 1)
    dense_mask = x.mask_of(dense, k - 1)
    sparse_joint = mutual_norm(f, Cochain(x, k - 1, sparse_mask))
    dense_joint = mutual_norm(f, Cochain(x, k - 1, dense_mask))
    split_lower = 2 * (1 - lam - float(eta)) * float(sparse_joint)
    split_upper = float(dense_joint) + (lam + float(eta)) * float(sparse_joint)
    # the reconstruction: substituting the split bounds into the
    # composition bound must reproduce rhs up to the mutual-vs-face-mass slack
    reconstructed = (k + 2) * (
        (1 - (k + 1) * (lam + float(eta))) * float(fn)
        - (k + 1) * float(dense_mass))
    detail = {
        "dense_mass": dense_mass,
        "joint_split_identity": float(dense_joint + sparse_joint - fn),
        "eq1_gap": float(eq1[0] - eq1[1]),
        "eq2_gap": float(eq2[0] - eq2[1]),
        "composition_ok": float(comp[0]) >= float(comp[1]) - tolerance,
        "link_sum_lower_ok": float(eq1[0]) >= split_lower - tolerance,
        "link_sum_upper_ok": float(eq2[0]) <= split_upper + tolerance,
        "rhs_reconstruction_gap": rhs - reconstructed,
    }
    ok = (float(lhs) >= rhs - tolerance
          and detail["composition_ok"]
          and detail["link_sum_lower_ok"]
          and detail["link_sum_upper_ok"]
          and eq1[0] == eq1[1] and eq2[0] == eq2[1]
          and dense_joint + sparse_joint == fn
          and abs(detail["rhs_reconstruction_gap"]) <= 1e-12)
    return CheckOutcome(VERIFIED if ok else VIOLATED, lhs=lhs, rhs=rhs,
                        margin=float(lhs) - rhs, detail=detail)


def lambda_threshold_nearly_optimal(d: int, alpha: float, eps: float) -> float:
    """Spectral ceiling under which the nearly-optimal bound is asserted."""
    if math.isinf(alpha):
        return 0.0
    return eps / (d ** 3 * alpha ** (d - 1)) * math.sqrt(
        eps / (3 * math.factorial(d)))


def lambda_threshold_positive(d: int, alpha: float, eps: float) -> float:
    """Spectral ceiling under which positivity of delta_1 is asserted."""
    if math.isinf(alpha):
        return 0.0
    return eps / (d ** 3 * alpha ** (d - 1)) * math.sqrt(
        eps / math.factorial(d + 1))


def check_nearly_optimal_delta1(f: Cochain, eps: Fraction, lam: float,
                                profile: BalanceProfile | None = None) -> CheckOutcome:
    """For small balanced sets, |delta_1(f)| >= (k+2)(1-3 eps)|f| exactly."""
    x = f.complex
    k = f.k
    if k < 1 or k >= x.dim:
        raise DimensionMismatch("needs 1 <= k < dim")
    eps = Fraction(eps)
    profile = profile or balance_profile(f)
    alpha = profile.max_alpha()
    fn = norm(f)
    lhs = norm(delta_i(f, 1))
    rhs = (k + 2) * (1 - 3 * eps) * fn
    detail: dict = {"alpha": alpha, "norm": fn}
    if alpha == INF:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=rhs, detail=detail)
    size_ok = fn <= eps / ((k + 1) ** 2 * alpha ** k)
    threshold = lambda_threshold_nearly_optimal(x.dim, float(alpha), float(eps))
    lam_ok = lam <= threshold
    detail.update(size_hypothesis_met=size_ok, lambda_threshold=threshold,
                  lambda_hypothesis_met=lam_ok)
    if not (size_ok and lam_ok):
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=rhs, detail=detail)
    status = VERIFIED if lhs >= rhs else VIOLATED
    return CheckOutcome(status, lhs=lhs, rhs=rhs, margin=float(lhs - rhs),
                        detail=detail)


def check_positive_delta1(f: Cochain, eps: Fraction, lam: float,
                          profile: BalanceProfile | None = None,
                          alphas: Sequence[Fraction] | None = None) -> CheckOutcome:
    """For slightly larger balanced sets, delta_1 stays nonempty.

    With a per-dimension constant sequence the size ceiling uses the product
    of the constants instead of the k-th power of their maximum.
    """
    x = f.complex
    k = f.k
    if k < 1 or k >= x.dim:
        raise DimensionMismatch("needs 1 <= k < dim")
    eps = Fraction(eps)
    fn = norm(f)
    lhs = norm(delta_i(f, 1))
    detail: dict = {"norm": fn}
    if alphas is not None:
        alphas = tuple(Fraction(a) for a in alphas)
        balanced = all(balance_constant(f, ell).alpha <= alphas[ell]
                       for ell in range(k))
        alpha_max = max(alphas)
        size_cap = (1 - eps) / ((k + 1) * math.prod(alphas, start=Fraction(1)))
        detail["alphas"] = alphas
    else:
        profile = profile or balance_profile(f)
        alpha_max = profile.max_alpha()
        balanced = alpha_max != INF
        if balanced:
            size_cap = (1 - eps) / ((k + 1) * alpha_max ** k)
        else:
            size_cap = Fraction(0)
        detail["alpha"] = alpha_max
    if not balanced or alpha_max == INF:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=Fraction(0),
                            detail=detail)
    size_ok = fn <= size_cap
    threshold = lambda_threshold_positive(x.dim, float(alpha_max), float(eps))
    lam_ok = lam <= threshold
    detail.update(size_cap=size_cap, size_hypothesis_met=size_ok,
                  lambda_threshold=threshold, lambda_hypothesis_met=lam_ok)
    if not (size_ok and lam_ok):
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=Fraction(0),
                            detail=detail)
    status = VERIFIED if (f.is_zero() or lhs > 0) else VIOLATED
    return CheckOutcome(status, lhs=lhs, rhs=Fraction(0), margin=float(lhs),
                        detail=detail)


# -- cohomology-level checks ---------------------------------------------------------


def covering_inequality_holds(f: Cochain, sigma: Face) -> tuple[Fraction, Fraction]:
    """(|delta(f_sigma)|, sum over v in sigma of |(f_{sigma-v})^v|)."""
    lhs = norm(coboundary(localize(f, sigma)))
    rhs = Fraction(0)
    for v in sigma:
        rest = tuple(u for u in sigma if u != v)
        rhs += norm(restrict(localize(f, rest), (v,)))
    return lhs, rhs


def check_cohomology_balance(x: SimplicialComplex, k: int,
                             budget: int | None = None) -> CheckOutcome:
    """Minimum-weight coset elements are (ell+1)/beta-balanced in dimension ell.

    Checked for every minimum-weight element of every nontrivial coset and
    every ell < k, together with the pointwise covering inequality at each
    face; vacuous (and verified) when the cohomology is trivial.
    """
    try:
        link_beta = min_link_coboundary_expansion(x, k, budget)
        classes = cohomology_classes(x, k, budget)
    except BudgetExceeded as exc:
        return CheckOutcome("infeasible", detail={"reason": str(exc)})
    beta = link_beta.beta
    nontrivial = [c for c in classes if not c.is_trivial]
    detail: dict = {"beta": beta, "n_nontrivial": len(nontrivial)}
    if not nontrivial:
        detail["vacuous"] = "trivial cohomology"
        return CheckOutcome(VERIFIED, detail=detail)
    if beta <= 0:
        detail["vacuous"] = "zero link expansion"
        return CheckOutcome(HYPOTHESIS_NOT_MET, detail=detail)
    worst_margin: Fraction | None = None
    worst_witness = None
    per_class = []
    for cls in nontrivial:
        elements = coset_minimum_elements(cls.representative, budget)
        for f in elements:
            for ell in range(k):
                bound = Fraction(ell + 1, 1) / beta
                res = balance_constant(f, ell)
                if res.alpha == INF or res.alpha > bound:
                    return CheckOutcome(
                        VIOLATED, lhs=res.alpha, rhs=bound,
                        witness=(cls.class_id, f.support(), ell),
                        detail=detail)
                margin = bound - res.alpha
                if worst_margin is None or margin < worst_margin:
                    worst_margin = margin
                    worst_witness = (cls.class_id, res.witness, ell)
                for sigma in x.faces(ell):
                    lhs, rhs = covering_inequality_holds(f, sigma)
                    if lhs > rhs:
                        return CheckOutcome(
                            VIOLATED, lhs=lhs, rhs=rhs,
                            witness=(cls.class_id, f.support(), sigma),
                            detail=detail.copy() | {
                                "failed": "covering inequality"})
        per_class.append({"class_id": cls.class_id,
                          "min_weight": cls.min_weight,
                          "n_min_elements": len(elements)})
    detail["classes"] = per_class
    return CheckOutcome(VERIFIED, margin=float(worst_margin or 0),
                        witness=worst_witness, detail=detail)


def check_cohomology_min_weight(x: SimplicialComplex, k: int, eps: Fraction,
                                lam: float,
                                budget: int | None = None) -> CheckOutcome:
    """Every nontrivial class weighs at least (1-eps) beta^k / (k+1)!.

    The per-dimension constants (ell+1)/beta give the (k+1)! denominator;
    the coarser single-constant variant, with its own weaker ceiling, is
    reported alongside. Gated on the positivity spectral threshold.
    """
    eps = Fraction(eps)
    try:
        link_beta = min_link_coboundary_expansion(x, k, budget)
        classes = cohomology_classes(x, k, budget)
    except BudgetExceeded as exc:
        return CheckOutcome("infeasible", detail={"reason": str(exc)})
    beta = link_beta.beta
    nontrivial = [c for c in classes if not c.is_trivial]
    detail: dict = {"beta": beta, "n_nontrivial": len(nontrivial)}
    if beta <= 0:
        detail["vacuous"] = "zero link expansion"
        return CheckOutcome(HYPOTHESIS_NOT_MET, detail=detail)

    bound_per_dim = (1 - eps) * beta ** k / math.factorial(k + 1)
    bound_uniform = (1 - eps) * beta ** k / ((k + 1) * Fraction(k) ** k) \
        if k >= 1 else (1 - eps)
    prior = (beta ** k / math.factorial(k)) ** (2 ** k)
    detail.update(bound=bound_per_dim, bound_single_constant=bound_uniform,
                  prior_bound=prior,
                  improvement_ratio=bound_per_dim / prior if prior else INF)
    alpha_max = Fraction(k, 1) / beta if k >= 1 else Fraction(1)
    threshold = lambda_threshold_positive(x.dim, float(alpha_max), float(eps))
    lam_ok = lam <= threshold
    detail.update(lambda_threshold=threshold, lambda_hypothesis_met=lam_ok)
    if not nontrivial:
        detail["vacuous"] = "trivial cohomology"
        return CheckOutcome(VERIFIED if lam_ok else HYPOTHESIS_NOT_MET,
                            detail=detail)
    smallest = min(c.min_weight for c in nontrivial)
    detail["smallest_class_weight"] = smallest
    if not lam_ok:
        detail["conclusion_would_hold"] = smallest >= bound_per_dim
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=smallest,
                            rhs=bound_per_dim, detail=detail)
    status = VERIFIED if smallest >= bound_per_dim else VIOLATED
    return CheckOutcome(status, lhs=smallest, rhs=bound_per_dim,
                        margin=float(smallest - bound_per_dim), detail=detail)
