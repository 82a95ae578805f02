"""Command-line front end.

Subcommands: generate | analyze | balance | spectra | expansion | verify-all.
Reports are JSON (authoritative) or CSV (one check per row); exit code 0
unless some check is violated, 2 on usage errors. Report files are written
atomically. HDX_BUDGET overrides the exhaustive-search budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .balance import balance_constant, balance_profile
from .cochains import norm, read_cochain, write_cochain
from .complexes import read_cplx, write_cplx
from .errors import BudgetExceeded, InvalidComplex
from .expansion import (
    coboundary_expansion,
    cosystolic_expansion,
    delta1_ratio,
    min_link_coboundary_expansion,
)
from .generators import GeneratorSpec
from .kernels import BACKEND
from .reports import (
    INFEASIBLE,
    SCHEMA_VERSION,
    VIOLATED,
    fmt_value,
    records_to_csv,
)
from .spectral import local_spectral_lambda
from .verify import VerifyConfig, build_report


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--alpha", type=_fraction, default=None)
    p.add_argument("--eta", type=_fraction, default=None)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 4))
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="override the measured spectral bound")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--strict", action="store_true",
                   help="infeasible checks also fail the run")
    p.add_argument("-o", "--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdxcheck",
        description="exact cochain, balance, and expansion checks on "
                    "small weighted simplicial complexes")
    parser.add_argument("--version", action="version",
                        version=f"hdxcheck {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a .cplx fixture")
    g.add_argument("--kind", required=True, choices=GeneratorSpec.KINDS)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--d", type=int, default=None)
    g.add_argument("--p", type=float, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)

    for name, help_text in (
            ("analyze", "face counts and spectral summary"),
            ("balance", "balance constants of a cochain"),
            ("spectra", "per-link walk spectra"),
            ("expansion", "exhaustive expansion constants"),
            ("verify-all", "run the full invariant suite")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("complex", help="input .cplx file")
        if name == "balance":
            p.add_argument("--cochain", required=True)
        if name == "expansion":
            p.add_argument("--cochain", default=None)
            p.add_argument("--witness-dir", default=None,
                           help="write minimizing cochains as .cochain files")
        _add_common(p)
    return parser


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload: dict, args, records=None) -> None:
    if args.format == "csv" and records is not None:
        text = records_to_csv(records)
    else:
        payload = {k: v for k, v in payload.items() if not k.startswith("_")}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def _load_complex(args):
    if not os.path.exists(args.complex):
        raise FileNotFoundError(args.complex)
    return read_cplx(args.complex)


def _base_payload(args, x) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "hdxcheck", "version": __version__,
                 "kernel_backend": BACKEND},
        "config": {"source": args.complex},
        "complex": {
            "dim": x.dim,
            "face_counts": {str(k): x.n_faces(k) for k in x.valid_dims()},
        },
    }


def cmd_generate(args) -> int:
    spec = GeneratorSpec(kind=args.kind, n=args.n, d=args.d, p=args.p,
                         seed=args.seed)
    x = spec.build()
    write_cplx(x, args.output)
    sys.stdout.write(f"wrote {args.output}: dim {x.dim}, "
                     f"{x.n_faces(x.dim)} top faces\n")
    if x.meta:
        sys.stdout.write(f"meta: {json.dumps(fmt_value(x.meta))}\n")
    return 0


def cmd_analyze(args) -> int:
    x = _load_complex(args)
    spectral = local_spectral_lambda(x)
    payload = _base_payload(args, x)
    payload["spectral"] = {
        "lambda_one_sided": fmt_value(spectral.lambda_one_sided),
        "lambda_two_sided": fmt_value(spectral.lambda_two_sided),
        "lambda_eff": fmt_value(spectral.lambda_eff),
        "max_residual": fmt_value(spectral.max_residual),
        "any_disconnected": spectral.any_disconnected,
        "links_scanned": len(spectral.entries),
    }
    _emit(payload, args)
    return 0


def cmd_balance(args) -> int:
    x = _load_complex(args)
    f = read_cochain(args.cochain, x)
    payload = _base_payload(args, x)
    payload["cochain"] = {"k": f.k, "norm": fmt_value(norm(f)),
                          "support_size": f.support_size()}
    if args.ell is not None:
        res = balance_constant(f, args.ell)
        payload["balance"] = {
            f"alpha_{args.ell}": fmt_value(res.alpha),
            "witness": fmt_value(res.witness),
        }
    else:
        profile = balance_profile(f)
        payload["balance"] = {
            f"alpha_{r.ell}": fmt_value(r.alpha) for r in profile.results}
        payload["balance"]["witnesses"] = {
            str(r.ell): fmt_value(r.witness) for r in profile.results}
    _emit(payload, args)
    return 0


def cmd_spectra(args) -> int:
    x = _load_complex(args)
    spectral = local_spectral_lambda(x)
    payload = _base_payload(args, x)
    payload["spectral"] = {
        "lambda_one_sided": fmt_value(spectral.lambda_one_sided),
        "lambda_two_sided": fmt_value(spectral.lambda_two_sided),
        "max_residual": fmt_value(spectral.max_residual),
        "links": [{
            "sigma": fmt_value(e.sigma),
            "n_vertices": e.n_vertices,
            "lambda2": fmt_value(e.lambda2),
            "lambda_min": fmt_value(e.lambda_min),
            "connected": e.connected,
            "residual": fmt_value(e.residual),
        } for e in spectral.entries],
    }
    _emit(payload, args)
    return 0


def cmd_expansion(args) -> int:
    x = _load_complex(args)
    payload = _base_payload(args, x)
    ks = [args.k] if args.k is not None else list(range(x.dim))
    per_k = {}
    infeasible = False
    for k in ks:
        entry: dict = {}
        try:
            cb = coboundary_expansion(x, k)
            entry["coboundary"] = fmt_value(cb.beta)
            entry["coboundary_witness"] = fmt_value(cb.witness.support())
            cs = cosystolic_expansion(x, k)
            entry["cosystolic_eps"] = fmt_value(cs.epsilon)
            entry["cosystole"] = fmt_value(cs.mu)
            if k >= 1:
                ml = min_link_coboundary_expansion(x, k)
                entry["min_link_coboundary"] = fmt_value(ml.beta)
            if args.witness_dir:
                os.makedirs(args.witness_dir, exist_ok=True)
                write_cochain(cb.witness, os.path.join(
                    args.witness_dir, f"coboundary_k{k}.cochain"))
                if cs.mu_witness is not None:
                    write_cochain(cs.mu_witness, os.path.join(
                        args.witness_dir, f"cosystole_k{k}.cochain"))
        except BudgetExceeded as exc:
            entry["infeasible"] = str(exc)
            infeasible = True
        per_k[str(k)] = entry
    payload["expansion"] = per_k
    if args.cochain:
        f = read_cochain(args.cochain, x)
        payload["delta1_ratio"] = fmt_value(delta1_ratio(f))
    _emit(payload, args)
    return 1 if (infeasible and args.strict) else 0


def cmd_verify_all(args) -> int:
    x = _load_complex(args)
    cfg = VerifyConfig(k=args.k, samples=args.samples, seed=args.seed,
                       epsilon=args.epsilon, eta=args.eta, alpha=args.alpha,
                       lam=args.lam, workers=args.workers, strict=args.strict)
    t0 = time.perf_counter()
    report = build_report(x, cfg, source=args.complex)
    records = report.pop("_records")
    report["timings"]["wall_s"] = fmt_value(time.perf_counter() - t0)
    _emit(report, args, records)
    n_violated = report["summary"][VIOLATED]
    n_infeasible = report["summary"][INFEASIBLE]
    if n_violated:
        return 1
    if args.strict and n_infeasible:
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {
        "generate": cmd_generate,
        "analyze": cmd_analyze,
        "balance": cmd_balance,
        "spectra": cmd_spectra,
        "expansion": cmd_expansion,
        "verify-all": cmd_verify_all,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: no such file: {exc}\n")
        return 2
    except (InvalidComplex, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
