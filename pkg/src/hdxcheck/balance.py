"""Double-balance constants, their inheritance law, and dense-face hierarchies.

A k-face set f is alpha-balanced in dimension ell when, at every ell-face
sigma, the localized weight is at most alpha times the average over vertices
u of sigma of the weight of f localized at sigma minus u and restricted to
the link of u. The tight constant uses the conventions 0/0 -> 1 and
positive/0 -> infinity and is clamped below at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cochains import Cochain, localize, norm, restrict
from .complexes import Face
from .errors import DimensionMismatch
from .reports import (
    HYPOTHESIS_NOT_MET,
    VERIFIED,
    VIOLATED,
    CheckOutcome,
)

ExtendedRational = Union[Fraction, float]  # float only as math.inf

INF = math.inf


@dataclass(frozen=True)
class BalanceResult:
    ell: int
    alpha: ExtendedRational
    witness: Optional[Face]
    witness_localized: Optional[Fraction]
    witness_average: Optional[Fraction]


@dataclass(frozen=True)
class BalanceProfile:
    k: int
    results: tuple[BalanceResult, ...]

    def alpha(self, ell: int) -> ExtendedRational:
        return self.results[ell].alpha

    def max_alpha(self) -> ExtendedRational:
        return max((r.alpha for r in self.results), default=Fraction(1))

    def all_finite(self) -> bool:
        return all(r.alpha != INF for r in self.results)


def average_corestriction_norm(f: Cochain, sigma: Face) -> Fraction:
    """Average over u in sigma of |(f localized at sigma-u) restricted to u|."""
    total = Fraction(0)
    for u in sigma:
        rest = tuple(v for v in sigma if v != u)
        total += norm(restrict(localize(f, rest), (u,)))
    return total / len(sigma)


def balance_constant(f: Cochain, ell: int) -> BalanceResult:
    """Tight balance constant of f in dimension ell, with its worst face."""
    if ell < 0 or ell > f.k - 1:
        raise DimensionMismatch(f"balance dimension {ell} not in 0..{f.k - 1}")
    best: ExtendedRational | None = None
    witness = None
    w_num = w_den = None
    for sigma in f.complex.faces(ell):
        num = norm(localize(f, sigma))
        den = average_corestriction_norm(f, sigma)
        if den == 0:
            ratio: ExtendedRational = Fraction(1) if num == 0 else INF
        else:
            ratio = num / den
        if best is None or ratio > best:
            best, witness, w_num, w_den = ratio, sigma, num, den
    assert best is not None
    if best < 1:
        best = Fraction(1)
    return BalanceResult(ell, best, witness, w_num, w_den)


def balance_profile(f: Cochain) -> BalanceProfile:
    return BalanceProfile(
        f.k, tuple(balance_constant(f, ell) for ell in range(f.k)))


def inherited_alpha(alpha: Fraction, ell: int) -> Fraction:
    """One-step inheritance constant alpha*ell / (ell+1-alpha)."""
    return alpha * ell / (ell + 1 - alpha)


def verify_inheritance(f: Cochain, ell: int) -> CheckOutcome:
    """Check that balance in dimension ell bounds balance one dimension down.

    Applies only when the constant at ell is finite and below ell+1; outside
    that regime the derived bound is meaningless and the check gates out.
    """
    if ell < 1:
        raise DimensionMismatch("inheritance needs ell >= 1")
    upper = balance_constant(f, ell)
    lower = balance_constant(f, ell - 1)
    detail = {
        "alpha_upper": upper.alpha,
        "alpha_lower": lower.alpha,
        "witness_upper": upper.witness,
        "witness_lower": lower.witness,
    }
    if upper.alpha == INF or upper.alpha >= ell + 1:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lower.alpha,
                            rhs=None, witness=lower.witness, detail=detail)
    bound = inherited_alpha(upper.alpha, ell)
    detail["bound"] = bound
    status = VERIFIED if lower.alpha <= bound else VIOLATED
    return CheckOutcome(status, lhs=lower.alpha, rhs=bound,
                        margin=float(bound - lower.alpha),
                        witness=lower.witness, detail=detail)


# -- dense-face hierarchy --------------------------------------------------------


@dataclass(frozen=True)
class DenseHierarchy:
    """Density thresholds per dimension and the faces exceeding them."""

    k: int
    eta: dict[int, Fraction]            # keys -1..k-1
    dense: dict[int, tuple[Face, ...]]
    dense_measure: dict[int, Fraction]
    alphas: tuple[Fraction, ...]        # constant used at each dimension 0..k-1
    epsilon: Fraction
    cochain_norm: Fraction
    size_hypothesis_met: bool
    nonpositive_thresholds: tuple[int, ...]


def dense_hierarchy(f: Cochain, eta: Fraction, alpha: Fraction,
                    eps: Fraction,
                    alphas: Sequence[Fraction] | None = None) -> DenseHierarchy:
    """Thresholds eta_{i-1} = eta_i/alpha_i - eps/((k+1)^2 prod alphas[i:]).

    The uniform case passes a single alpha; a per-dimension sequence may be
    supplied instead, in which case the scalar alpha is ignored.
    """
    k = f.k
    eta = Fraction(eta)
    eps = Fraction(eps)
    if alphas is None:
        alphas = tuple(Fraction(alpha) for _ in range(k))
    else:
        alphas = tuple(Fraction(a) for a in alphas)
        if len(alphas) != k:
            raise DimensionMismatch(f"need {k} per-dimension constants")
    if not 0 < eta < 1:
        raise DimensionMismatch("density threshold must lie in (0,1)")
    if eps <= 0 or any(a < 1 for a in alphas):
        raise DimensionMismatch("need eps > 0 and alpha >= 1")

    etas: dict[int, Fraction] = {k - 1: eta}
    tail_product = Fraction(1)
    for i in range(k - 1, -1, -1):
        tail_product *= alphas[i]
        etas[i - 1] = etas[i] / alphas[i] - eps / ((k + 1) ** 2 * tail_product)

    x = f.complex
    dense: dict[int, tuple[Face, ...]] = {}
    measure: dict[int, Fraction] = {}
    for i in range(-1, k):
        hits = tuple(sigma for sigma in x.faces(i)
                     if norm(localize(f, sigma)) > etas[i])
        dense[i] = hits
        measure[i] = sum((x.face_weight(s) for s in hits), Fraction(0))
    fn = norm(f)
    return DenseHierarchy(
        k, etas, dense, measure, alphas, eps, fn,
        size_hypothesis_met=fn <= etas[-1],
        nonpositive_thresholds=tuple(i for i in range(-1, k) if etas[i] <= 0))


def check_dense_fraction_bound(f: Cochain, eta: Fraction, alpha: Fraction,
                               eps: Fraction, lam: float,
                               hierarchy: DenseHierarchy | None = None,
                               tolerance: float = 1e-9) -> CheckOutcome:
    """Aggregate bound: dense (k-1)-face mass <= 3 k! ((k+1)^3 a^k lam/eps)^2 |f|.

    Hypotheses: f alpha-balanced in every dimension below k and small enough
    for the hierarchy's bottom threshold. lam must dominate the link spectra.
    """
    k = f.k
    h = hierarchy or dense_hierarchy(f, eta, alpha, eps)
    detail: dict = {"eta_bottom": h.eta[-1], "norm": h.cochain_norm}
    balanced = all(balance_constant(f, ell).alpha <= alpha for ell in range(k))
    lhs = h.dense_measure[k - 1]
    rhs = 3.0 * math.factorial(k) * (
        (k + 1) ** 3 * float(alpha) ** k * lam / float(eps)) ** 2 * float(
            h.cochain_norm)
    detail["balanced"] = balanced
    detail["size_hypothesis_met"] = h.size_hypothesis_met
    if not balanced or not h.size_hypothesis_met:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=rhs, detail=detail)
    status = VERIFIED if float(lhs) <= rhs + tolerance else VIOLATED
    return CheckOutcome(status, lhs=lhs, rhs=rhs,
                        margin=rhs + tolerance - float(lhs), detail=detail)


def check_dense_step_bound(f: Cochain, i: int, hierarchy: DenseHierarchy,
                           lam: float, tolerance: float = 1e-9) -> CheckOutcome:
    """Per-step bound on dense i-faces from dense (i-1)-faces.

    dense_i <= (i+1) dense_{i-1} + (i+1)((k+1-i)(k+1)^2 A lam/eps)^2 |f|
    where A is the product of the constants from dimension i upward.
    """
    k = f.k
    if i < 0 or i >= k:
        raise DimensionMismatch(f"step dimension {i} not in 0..{k - 1}")
    alpha_i = hierarchy.alphas[i]
    balanced = balance_constant(f, i).alpha <= alpha_i
    tail = math.prod(hierarchy.alphas[i:], start=Fraction(1))
    lhs = hierarchy.dense_measure[i]
    rhs = (i + 1) * float(hierarchy.dense_measure[i - 1]) + (i + 1) * (
        (k + 1 - i) * (k + 1) ** 2 * float(tail) * lam /
        float(hierarchy.epsilon)) ** 2 * float(hierarchy.cochain_norm)
    detail = {"i": i, "alpha_i": alpha_i, "balanced": balanced}
    if not balanced:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=lhs, rhs=rhs, detail=detail)
    status = VERIFIED if float(lhs) <= rhs + tolerance else VIOLATED
    return CheckOutcome(status, lhs=lhs, rhs=rhs,
                        margin=rhs + tolerance - float(lhs), detail=detail)


# -- pseudorandomness ------------------------------------------------------------


def pseudorandom_fraction(f: Cochain, ell: int, eps: Fraction) -> Fraction:
    """Mass of ell-faces whose localized weight is at most eps."""
    if ell >= f.k:
        raise DimensionMismatch("need ell < k")
    x = f.complex
    eps = Fraction(eps)
    return sum((x.face_weight(sigma) for sigma in x.faces(ell)
                if norm(localize(f, sigma)) <= eps), Fraction(0))


def check_pseudorandom_bound(f: Cochain, ell: int, eps: Fraction,
                             lam: float) -> CheckOutcome:
    """Small balanced sets look sparse from almost every ell-face.

    Gated on: finite balance constants up to ell, the size condition
    |f| <= eps/((ell+1) a^ell), and lam below the strictest spectral
    threshold used by the nearly-optimal expansion statement. lam must be
    a two-sided spectral bound: the sparsification step rests on the pair
    walk's variance control, and one-sided gaps do not bound it (a 3-edge
    set on the complete 3-complex over 6 vertices is exactly 4-balanced
    with weight 1/5 yet concentrates on one vertex, so instantiating the
    gate with the clamped one-sided gap 0 asserts a false conclusion).
    """
    from .expansion import lambda_threshold_nearly_optimal

    eps = Fraction(eps)
    profile = balance_profile(f)
    alpha = profile.max_alpha()
    fraction = pseudorandom_fraction(f, ell, eps)
    bound = 1 - eps * norm(f)
    detail: dict = {"alpha": alpha, "fraction": fraction}
    if alpha == INF:
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=fraction, rhs=bound,
                            detail=detail)
    size_ok = norm(f) <= eps / ((ell + 1) * alpha ** ell)
    lam_ok = lam <= lambda_threshold_nearly_optimal(
        f.complex.dim, float(alpha), float(eps))
    detail["size_hypothesis_met"] = size_ok
    detail["lambda_hypothesis_met"] = lam_ok
    if not (size_ok and lam_ok):
        return CheckOutcome(HYPOTHESIS_NOT_MET, lhs=fraction, rhs=bound,
                            detail=detail)
    status = VERIFIED if fraction >= bound else VIOLATED
    return CheckOutcome(status, lhs=fraction, rhs=bound,
                        margin=float(fraction - bound), detail=detail)
