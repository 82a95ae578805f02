"""The full invariant suite behind `verify-all`.

Each check is a pure function of the complex and the run configuration, so
the worker pool may evaluate them in any order; records are assembled in
registration order and are byte-identical across worker counts.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from . import __version__
from .balance import (
    INF,
    balance_profile,
    check_dense_fraction_bound,
    check_dense_step_bound,
    check_pseudorandom_bound,
    dense_hierarchy,
    verify_inheritance,
)
from .cochains import (
    Cochain,
    coboundary,
    coboundary_space,
    cocycle_space,
    coset_minimum_elements,
    delta_i,
    enumeration_budget,
    is_locally_minimal,
    localize,
    mutual_norm,
    norm,
)
from .complexes import SimplicialComplex
from .errors import BudgetExceeded
from .expansion import (
    check_cohomology_balance,
    check_cohomology_min_weight,
    check_delta1_lower_bound,
    check_nearly_optimal_delta1,
    check_positive_delta1,
    coboundary_expansion,
    cosystolic_expansion,
    delta1_ratio,
)
from .kernels import BACKEND
from .reports import (
    HYPOTHESIS_NOT_MET,
    INFEASIBLE,
    SCHEMA_VERSION,
    VERIFIED,
    VIOLATED,
    CheckOutcome,
    CheckRecord,
    determinism_hash,
    fmt_value,
    record_to_dict,
)
from .rng import CounterRng, splitmix64
from .spectral import (
    SpectralReport,
    complement_walk_graph,
    edge_bounds,
    graph_spectrum,
    local_spectral_lambda,
    restriction_profile,
    underlying_graph,
)

TOLERANCE = 1e-9
MAX_CHEEGER_VERTICES = 16


@dataclass
class VerifyConfig:
    k: Optional[int] = None
    samples: int = 50
    seed: int = 0
    epsilon: Fraction = Fraction(1, 4)
    eta: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    lam: Optional[float] = None
    workers: int = 1
    budget: Optional[int] = None
    strict: bool = False


def _subseed(seed: int, tag: str) -> int:
    return splitmix64(seed, zlib.crc32(tag.encode()))


def sample_cochains(x: SimplicialComplex, k: int, count: int, seed: int,
                    tag: str) -> list[Cochain]:
    """Seeded uniform cochains; the stream is documented in rng."""
    rng = CounterRng(_subseed(seed, f"{tag}:{k}"))
    n = x.n_faces(k)
    return [Cochain(x, k, rng.mask(n)) for _ in range(count)]


def _cochain_dims(x: SimplicialComplex, cfg: VerifyConfig) -> list[int]:
    dims = range(x.dim) if cfg.k is None else [cfg.k]
    return [k for k in dims if 0 <= k < x.dim]


# -- individual checks -------------------------------------------------------------


def _check_weights_normalized(x: SimplicialComplex, cfg) -> CheckOutcome:
    for k in x.valid_dims():
        total = sum((x.face_weight(f) for f in x.faces(k)), Fraction(0))
        if total != 1:
            return CheckOutcome(VIOLATED, lhs=total, rhs=Fraction(1),
                                witness=k)
    return CheckOutcome(VERIFIED, lhs=Fraction(1), rhs=Fraction(1))


def _check_down_consistency(x: SimplicialComplex, cfg) -> CheckOutcome:
    for k in range(-1, x.dim):
        for sigma in x.faces(k):
            s = set(sigma)
            total = sum(
                (x.face_weight(tau) for tau in x.faces(k + 1)
                 if s.issubset(tau)), Fraction(0)) / (k + 2)
            if total != x.face_weight(sigma):
                return CheckOutcome(VIOLATED, lhs=total,
                                    rhs=x.face_weight(sigma), witness=sigma)
    return CheckOutcome(VERIFIED)


def _check_closure_purity(x: SimplicialComplex, cfg) -> CheckOutcome:
    for k in range(0, x.dim + 1):
        for face in x.faces(k):
            for sub in combinations(face, k):
                if not x.has_face(sub):
                    return CheckOutcome(VIOLATED, witness=(face, sub),
                                        detail={"failed": "closure"})
            if x.cover_count(face) < 1:
                return CheckOutcome(VIOLATED, witness=face,
                                    detail={"failed": "purity"})
    return CheckOutcome(VERIFIED)


def _check_link_weights(x: SimplicialComplex, cfg) -> CheckOutcome:
    for k in range(0, x.dim):
        for sigma in x.faces(k):
            lk = x.link(sigma).complex
            s = set(sigma)
            for j in range(0, lk.dim + 1):
                denom = sum((x.face_weight(rho) for rho in x.faces(j + k + 1)
                             if s.issubset(rho)), Fraction(0))
                for tau in lk.faces(j):
                    cond = x.face_weight(tuple(sorted(sigma + tau))) / denom
                    if cond != lk.face_weight(tau):
                        return CheckOutcome(VIOLATED, lhs=lk.face_weight(tau),
                                            rhs=cond, witness=(sigma, tau))
    return CheckOutcome(VERIFIED)


def _sampled(x, cfg, tag, dims, body) -> CheckOutcome:
    """Run body(f) over seeded samples in the given dims; body returns
    None (pass), an outcome to merge counts from, or raises."""
    counts = {"samples": 0, "hypothesis_not_met": 0}
    for k in dims:
        for f in sample_cochains(x, k, cfg.samples, cfg.seed, tag):
            counts["samples"] += 1
            out = body(f)
            if out is None:
                continue
            if out.status == VIOLATED:
                out.detail.setdefault("k", k)
                return out.note(**counts)
            if out.status == HYPOTHESIS_NOT_MET:
                counts["hypothesis_not_met"] += 1
    return CheckOutcome(VERIFIED, detail=counts)


def _check_delta_delta_zero(x, cfg) -> CheckOutcome:
    dims = [k for k in _cochain_dims(x, cfg) if k <= x.dim - 2]

    def body(f):
        if coboundary(coboundary(f)).mask:
            return CheckOutcome(VIOLATED, witness=f.support())
        return None

    return _sampled(x, cfg, "ddz", dims, body)


def _check_delta_partition(x, cfg) -> CheckOutcome:
    def body(f):
        total = sum((norm(delta_i(f, i)) for i in range(f.k + 3)), Fraction(0))
        odd = 0
        for i in range(1, f.k + 3, 2):
            odd |= delta_i(f, i).mask
        if total != 1 or odd != coboundary(f).mask:
            return CheckOutcome(VIOLATED, lhs=total, rhs=Fraction(1),
                                witness=f.support())
        return None

    return _sampled(x, cfg, "partition", _cochain_dims(x, cfg), body)


def _check_local_split(x, cfg, which: int) -> CheckOutcome:
    from .expansion import local_delta1_identity, local_delta2_identity
    identity = local_delta1_identity if which == 1 else local_delta2_identity
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]

    def body(f):
        lhs, rhs = identity(f)
        if lhs != rhs:
            return CheckOutcome(VIOLATED, lhs=lhs, rhs=rhs,
                                witness=f.support())
        return None

    return _sampled(x, cfg, f"split{which}", dims, body)


def _check_mutual_split(x, cfg) -> CheckOutcome:
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]

    def body(f):
        rng = CounterRng(_subseed(cfg.seed, f"mutualS:{f.k}:{f.mask & 0xFFFF}"))
        ell = f.k - 1
        n_low = x.n_faces(ell)
        s_mask = rng.mask(n_low)
        s = Cochain(x, ell, s_mask)
        sc = Cochain(x, ell, ((1 << n_low) - 1) ^ s_mask)
        if mutual_norm(f, s) + mutual_norm(f, sc) != norm(f):
            return CheckOutcome(VIOLATED, lhs=mutual_norm(f, s) +
                                mutual_norm(f, sc), rhs=norm(f),
                                witness=f.support())
        return None

    return _sampled(x, cfg, "mutual", dims, body)


def _check_localization_averages(x, cfg) -> CheckOutcome:
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]

    def body(f):
        for j in range(-1, f.k):
            for tau in x.faces(j):
                lk = x.link(tau).complex
                expect = sum(
                    (lk.face_weight(u) * norm(localize(f, tuple(sorted(tau + u))))
                     for u in lk.faces(0)), Fraction(0))
                if expect != norm(localize(f, tau)):
                    return CheckOutcome(VIOLATED, lhs=norm(localize(f, tau)),
                                        rhs=expect, witness=(f.support(), tau))
        return None

    # quadratic in face counts, keep the sample count small
    light = VerifyConfig(**{**cfg.__dict__, "samples": max(1, cfg.samples // 10)})
    return _sampled(x, light, "locavg", dims, body)


def _check_restriction_moments(x, cfg) -> CheckOutcome:
    def body(f):
        prof = restriction_profile(f)
        if prof.mean != norm(f):
            return CheckOutcome(VIOLATED, lhs=prof.mean, rhs=norm(f),
                                witness=f.support(),
                                detail={"failed": "mean"})
        if prof.second_moment != prof.pair_mass_on_support:
            return CheckOutcome(VIOLATED, lhs=prof.second_moment,
                                rhs=prof.pair_mass_on_support,
                                witness=f.support(),
                                detail={"failed": "second moment"})
        return None

    return _sampled(x, cfg, "restr", _cochain_dims(x, cfg), body)


def _check_spectra(x, cfg, report: SpectralReport) -> CheckOutcome:
    detail = {
        "lambda_one_sided": report.lambda_one_sided,
        "lambda_two_sided": report.lambda_two_sided,
        "lambda_eff": report.lambda_eff,
        "lambda_eff_two_sided": report.lambda_eff_two_sided,
        "links_scanned": len(report.entries),
        "any_disconnected": report.any_disconnected,
    }
    status = VERIFIED if report.max_residual <= TOLERANCE else VIOLATED
    return CheckOutcome(status, lhs=report.max_residual, rhs=TOLERANCE,
                        detail=detail)


def _check_complement_walk(x, cfg, report: SpectralReport) -> CheckOutcome:
    results = []
    worst = None
    for k in _cochain_dims(x, cfg):
        g = complement_walk_graph(x, k)
        total = sum((sum(row, Fraction(0)) for row in g.pair), Fraction(0))
        if total != 1:
            return CheckOutcome(VIOLATED, lhs=total, rhs=Fraction(1),
                                detail={"failed": "total mass", "k": k})
        lam2 = graph_spectrum(g).lambda2
        bound = ((k + 1) * report.lambda_eff_two_sided) ** 2
        one_sided_bound = ((k + 1) * report.lambda_eff) ** 2
        results.append({"k": k, "lambda2": lam2, "bound": bound,
                        "one_sided_instantiation": one_sided_bound})
        if lam2 > bound + TOLERANCE:
            return CheckOutcome(VIOLATED, lhs=lam2, rhs=bound,
                                detail={"k": k, "per_k": results})
        margin = bound + TOLERANCE - lam2
        if worst is None or margin < worst:
            worst = margin
    return CheckOutcome(VERIFIED, margin=worst, detail={"per_k": results})


def _check_restriction_variance(x, cfg) -> CheckOutcome:
    gaps = {k: graph_spectrum(complement_walk_graph(x, k)).lambda2
            for k in _cochain_dims(x, cfg)}

    def body(f):
        prof = restriction_profile(f)
        bound = gaps[f.k] * float(norm(f))
        if float(prof.variance) > bound + TOLERANCE:
            return CheckOutcome(VIOLATED, lhs=prof.variance, rhs=bound,
                                witness=f.support())
        return None

    return _sampled(x, cfg, "var", _cochain_dims(x, cfg), body)


def _check_cheeger(x, cfg) -> CheckOutcome:
    checked = 0
    skipped = []
    for k in range(-1, x.dim - 1):
        for sigma in x.faces(k):
            g = underlying_graph(x.link(sigma))
            if g.n > MAX_CHEEGER_VERTICES:
                skipped.append(sigma)
                continue
            for bits in range(1 << g.n):
                subset = [g.labels[i] for i in range(g.n) if (bits >> i) & 1]
                rep = edge_bounds(g, subset, TOLERANCE)
                checked += 1
                if not (rep.e1_ok and rep.e2_ok):
                    return CheckOutcome(
                        VIOLATED, lhs=rep.e1, rhs=rep.e1_bound,
                        witness=(sigma, subset),
                        detail={"e2": rep.e2, "e2_bound": rep.e2_bound,
                                "lambda2": rep.lambda2})
    return CheckOutcome(VERIFIED,
                        detail={"subsets_checked": checked,
                                "links_skipped": [str(s) for s in skipped]})


def _check_inheritance(x, cfg) -> CheckOutcome:
    dims = [k for k in _cochain_dims(x, cfg) if k >= 2]

    def body(f):
        for ell in range(1, f.k):
            out = verify_inheritance(f, ell)
            if out.status != VERIFIED:
                return out
        return None

    return _sampled(x, cfg, "inherit", dims, body)


def _check_perfect_inheritance(x, cfg) -> CheckOutcome:
    dims = [k for k in _cochain_dims(x, cfg) if k >= 2]

    def body(f):
        profile = balance_profile(f)
        for ell in range(f.k - 1, 0, -1):
            if profile.alpha(ell) == 1:
                bad = [j for j in range(ell) if profile.alpha(j) != 1]
                if bad:
                    return CheckOutcome(VIOLATED, witness=f.support(),
                                        detail={"ell": ell, "bad_dims": bad})
        return None

    return _sampled(x, cfg, "perfect", dims, body)


def _check_dense_hierarchy(x, cfg, report: SpectralReport) -> CheckOutcome:
    lam = cfg.lam if cfg.lam is not None else report.lambda_eff
    eps = cfg.epsilon
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]
    counts = {"samples": 0, "hypothesis_not_met": 0, "asserted": 0}
    for k in dims:
        eta = cfg.eta if cfg.eta is not None else eps / (k + 1)
        for f in sample_cochains(x, k, cfg.samples, cfg.seed, "dense"):
            counts["samples"] += 1
            profile = balance_profile(f)
            alpha = cfg.alpha if cfg.alpha is not None else profile.max_alpha()
            if alpha == INF:
                counts["hypothesis_not_met"] += 1
                continue
            h = dense_hierarchy(f, eta, alpha, eps)
            # threshold consistency is exact by construction; re-verify
            for i in range(-1, k):
                for sigma in x.faces(i):
                    member = sigma in h.dense[i]
                    if member != (norm(localize(f, sigma)) > h.eta[i]):
                        return CheckOutcome(VIOLATED, witness=(f.support(), sigma),
                                            detail={"failed": "membership"})
            if not h.size_hypothesis_met:
                counts["hypothesis_not_met"] += 1
                continue
            agg = check_dense_fraction_bound(f, eta, alpha, eps, lam, h)
            if agg.status == VIOLATED:
                return agg.note(**counts)
            for i in range(k):
                step = check_dense_step_bound(f, i, h, lam)
                if step.status == VIOLATED:
                    return step.note(**counts)
            counts["asserted"] += 1
    return CheckOutcome(VERIFIED, detail=counts)


def _check_delta1_bound(x, cfg, report: SpectralReport) -> CheckOutcome:
    lam = cfg.lam if cfg.lam is not None else report.lambda_eff
    eps = cfg.epsilon
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]

    def body(f):
        if f.is_zero():
            return None
        eta = cfg.eta if cfg.eta is not None else eps / (f.k + 1)
        out = check_delta1_lower_bound(f, eta, lam)
        if out.status == VIOLATED:
            return out
        return None

    return _sampled(x, cfg, "d1bound", dims, body)


def _check_theorem_gates(x, cfg, report: SpectralReport, which: str) -> CheckOutcome:
    lam = cfg.lam if cfg.lam is not None else report.lambda_eff
    eps = cfg.epsilon
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]
    check = (check_nearly_optimal_delta1 if which == "optimal"
             else check_positive_delta1)

    def body(f):
        out = check(f, eps, lam)
        if out.status == VIOLATED:
            return out
        if out.status == HYPOTHESIS_NOT_MET:
            return out
        return None

    return _sampled(x, cfg, which, dims, body)


def _check_single_face(x, cfg) -> CheckOutcome:
    for k in range(x.dim):
        for i in range(x.n_faces(k)):
            f = Cochain(x, k, 1 << i)
            if delta1_ratio(f) != k + 2:
                return CheckOutcome(VIOLATED, lhs=delta1_ratio(f), rhs=k + 2,
                                    witness=f.support())
    return CheckOutcome(VERIFIED)


def _check_cohomology_dims(x, cfg) -> CheckOutcome:
    dims = {}
    for k in range(0, x.dim + 1):
        z = cocycle_space(x, k)
        b = coboundary_space(x, k)
        n = x.n_faces(k)
        from . import gf2
        z_red = gf2.row_basis(z.masks())
        for m in b.masks():
            if not gf2.in_span(m, z_red):
                return CheckOutcome(VIOLATED, witness=k,
                                    detail={"failed": "B inside Z"})
        if k < x.dim:
            rank_delta = gf2.rank(list(x.cofacet_masks(k)))
            if z.dimension + rank_delta != n:
                return CheckOutcome(VIOLATED, witness=k,
                                    detail={"failed": "rank-nullity"})
        dims[k] = {"C": n, "Z": z.dimension, "B": b.dimension,
                   "H": z.dimension - b.dimension}
    return CheckOutcome(VERIFIED, detail={"dims": dims})


def _check_expansion_constants(x, cfg) -> CheckOutcome:
    budget = enumeration_budget(cfg.budget)
    values = {}
    any_infeasible = False
    for k in _cochain_dims(x, cfg):
        try:
            cb = coboundary_expansion(x, k, budget)
            cs = cosystolic_expansion(x, k, budget)
        except BudgetExceeded as exc:
            values[k] = {"infeasible": str(exc)}
            any_infeasible = True
            continue
        # the witness must re-evaluate to the reported ratio
        from .cochains import dist_to_coboundaries
        dist = dist_to_coboundaries(cb.witness, budget)
        if dist != cb.witness_distance or \
                norm(coboundary(cb.witness)) / dist != cb.beta:
            return CheckOutcome(VIOLATED, witness=cb.witness.support(),
                                detail={"failed": "witness re-evaluation"})
        values[k] = {"coboundary": cb.beta, "cosystolic_eps": cs.epsilon,
                     "cosystole": cs.mu}
    if any_infeasible:
        return CheckOutcome(INFEASIBLE, detail={"per_k": values})
    return CheckOutcome(VERIFIED, detail={"per_k": values})


def _check_cohomology_statements(x, cfg, report, which) -> CheckOutcome:
    budget = enumeration_budget(cfg.budget)
    lam = cfg.lam if cfg.lam is not None else report.lambda_eff
    outcomes = []
    worst = None
    for k in _cochain_dims(x, cfg):
        if k < 1:
            continue
        if which == "balance":
            out = check_cohomology_balance(x, k, budget)
        else:
            out = check_cohomology_min_weight(x, k, cfg.epsilon, lam, budget)
        outcomes.append((k, out))
        if out.status == VIOLATED:
            return out.note(k=k)
        if worst is None or out.status != VERIFIED:
            worst = out
    if worst is None:
        return CheckOutcome(HYPOTHESIS_NOT_MET,
                            detail={"reason": "no applicable dimension"})
    return CheckOutcome(worst.status,
                        detail={str(k): {"status": o.status, **{
                            key: fmt_value(val) for key, val in o.detail.items()
                        }} for k, o in outcomes})


def _check_pseudorandom(x, cfg, report: SpectralReport) -> CheckOutcome:
    # two-sided bound: see check_pseudorandom_bound
    lam = cfg.lam if cfg.lam is not None else report.lambda_eff_two_sided
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]

    def body(f):
        for ell in range(f.k):
            out = check_pseudorandom_bound(f, ell, cfg.epsilon, lam)
            if out.status != VERIFIED:
                return out
        return None

    return _sampled(x, cfg, "pseudo", dims, body)


def _check_minimal_implies_local(x, cfg) -> CheckOutcome:
    budget = enumeration_budget(cfg.budget)
    dims = [k for k in _cochain_dims(x, cfg) if k >= 1]
    light = VerifyConfig(**{**cfg.__dict__, "samples": max(1, cfg.samples // 10)})

    def body(f):
        try:
            minimal = coset_minimum_elements(f, budget)[0]
            if not is_locally_minimal(minimal, budget):
                return CheckOutcome(VIOLATED, witness=minimal.support())
        except BudgetExceeded:
            return CheckOutcome(HYPOTHESIS_NOT_MET,
                                detail={"reason": "budget"})
        return None

    return _sampled(x, light, "minloc", dims, body)


# -- suite assembly ------------------------------------------------------------------


def build_report(x: SimplicialComplex, cfg: VerifyConfig,
                 source: str = "<memory>") -> dict:
    spectral = local_spectral_lambda(x)

    checks: list[tuple[str, str, Callable[[], CheckOutcome]]] = [
        ("weights-normalized", "total-probability",
         lambda: _check_weights_normalized(x, cfg)),
        ("down-consistency", "level-marginals",
         lambda: _check_down_consistency(x, cfg)),
        ("closure-purity", "complex-wellformed",
         lambda: _check_closure_purity(x, cfg)),
        ("link-weights", "conditional-distributions",
         lambda: _check_link_weights(x, cfg)),
        ("delta-delta-zero", "coboundary-squares-to-zero",
         lambda: _check_delta_delta_zero(x, cfg)),
        ("delta-partition", "facet-count-partition",
         lambda: _check_delta_partition(x, cfg)),
        ("local-split-one", "one-facet-link-sum",
         lambda: _check_local_split(x, cfg, 1)),
        ("local-split-two", "two-facet-link-sum",
         lambda: _check_local_split(x, cfg, 2)),
        ("mutual-split", "joint-weight-partition",
         lambda: _check_mutual_split(x, cfg)),
        ("localization-averages", "local-total-probability",
         lambda: _check_localization_averages(x, cfg)),
        ("restriction-moments", "restriction-mean-and-square",
         lambda: _check_restriction_moments(x, cfg)),
        ("eigensolver-residuals", "walk-spectra",
         lambda: _check_spectra(x, cfg, spectral)),
        ("complement-walk-gap", "pair-walk-spectral-bound",
         lambda: _check_complement_walk(x, cfg, spectral)),
        ("restriction-variance", "pair-walk-variance-bound",
         lambda: _check_restriction_variance(x, cfg)),
        ("cheeger-edge-bounds", "subset-edge-bounds",
         lambda: _check_cheeger(x, cfg)),
        ("balance-inheritance", "inheritance-law",
         lambda: _check_inheritance(x, cfg)),
        ("perfect-balance-inheritance", "lossless-inheritance",
         lambda: _check_perfect_inheritance(x, cfg)),
        ("dense-hierarchy", "dense-face-recursion",
         lambda: _check_dense_hierarchy(x, cfg, spectral)),
        ("delta1-lower-bound", "one-facet-dense-correction",
         lambda: _check_delta1_bound(x, cfg, spectral)),
        ("delta1-nearly-optimal", "small-set-expansion",
         lambda: _check_theorem_gates(x, cfg, spectral, "optimal")),
        ("delta1-positive", "medium-set-expansion",
         lambda: _check_theorem_gates(x, cfg, spectral, "positive")),
        ("single-face-delta1", "single-face-ratio",
         lambda: _check_single_face(x, cfg)),
        ("cohomology-dims", "space-dimensions",
         lambda: _check_cohomology_dims(x, cfg)),
        ("expansion-constants", "exhaustive-expansion",
         lambda: _check_expansion_constants(x, cfg)),
        ("cohomology-balance", "class-balance-bound",
         lambda: _check_cohomology_statements(x, cfg, spectral, "balance")),
        ("cohomology-min-weight", "class-weight-bound",
         lambda: _check_cohomology_statements(x, cfg, spectral, "weight")),
        ("pseudorandom-fraction", "sparse-localization-bound",
         lambda: _check_pseudorandom(x, cfg, spectral)),
        ("minimal-implies-locally-minimal", "minimality-descends",
         lambda: _check_minimal_implies_local(x, cfg)),
    ]

    def run_one(item):
        name, anchor, thunk = item
        t0 = time.perf_counter()
        try:
            outcome = thunk()
        except BudgetExceeded as exc:
            outcome = CheckOutcome(INFEASIBLE, detail={"reason": str(exc)})
        return CheckRecord.from_outcome(name, anchor, outcome,
                                        time.perf_counter() - t0)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(run_one, checks))
    else:
        records = [run_one(item) for item in checks]

    summary = {
        VERIFIED: sum(r.status == VERIFIED for r in records),
        VIOLATED: sum(r.status == VIOLATED for r in records),
        HYPOTHESIS_NOT_MET: sum(r.status == HYPOTHESIS_NOT_MET for r in records),
        INFEASIBLE: sum(r.status == INFEASIBLE for r in records),
    }
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "hdxcheck", "version": __version__,
                 "kernel_backend": BACKEND},
        "config": {
            "source": source,
            "k": cfg.k,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "epsilon": fmt_value(cfg.epsilon),
            "eta": fmt_value(cfg.eta),
            "alpha": fmt_value(cfg.alpha),
            "lambda_override": fmt_value(cfg.lam),
            "workers": cfg.workers,
            "budget": enumeration_budget(cfg.budget),
            "strict": cfg.strict,
        },
        "complex": {
            "dim": x.dim,
            "face_counts": {str(k): x.n_faces(k) for k in x.valid_dims()},
            "lambda_one_sided": fmt_value(spectral.lambda_one_sided),
            "lambda_two_sided": fmt_value(spectral.lambda_two_sided),
            "max_residual": fmt_value(spectral.max_residual),
        },
        "checks": [record_to_dict(r) for r in records],
        "summary": summary,
        "timings": {
            "per_check": {r.name: fmt_value(r.elapsed) for r in records},
            "total_s": fmt_value(sum(r.elapsed for r in records)),
        },
    }
    report["determinism_hash"] = determinism_hash(report)
    report["_records"] = records  # stripped before serialization
    return report
