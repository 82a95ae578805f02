"""Benchmark the compiled scan kernels against the pure-Python fallback.

Two workloads:
  1. synthetic coset scans (the inner loop of every exhaustive search), and
  2. an end-to-end expansion computation on a 15-edge complex, which is
     dominated by 2^10 coset scans of size 2^5.

Run:  python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

from hdxcheck.kernels import _pure

try:
    from hdxcheck.kernels import _native
except ImportError:
    _native = None


def synthetic_instance(rng, nbits, r):
    basis = []
    seen = {0}
    while len(basis) < r:
        v = rng.getrandbits(nbits)
        if v == 0 or v in seen:
            continue
        seen |= {s ^ v for s in set(seen)}
        basis.append(v)
    start = rng.getrandbits(nbits)
    weights = [rng.randint(1, 40) for _ in range(nbits)]
    return start, basis, weights, nbits


def time_backend(backend, instance, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = backend.coset_min_weight(*instance)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_scans():
    rng = random.Random(12)
    print(f"{'bits':>5} {'span':>6} {'pure':>10} {'native':>10} {'speedup':>8}")
    for nbits, r in ((24, 12), (60, 16), (60, 20), (130, 18)):
        instance = synthetic_instance(rng, nbits, r)
        t_pure, res_pure = time_backend(_pure, instance)
        if _native is None:
            print(f"{nbits:>5} 2^{r:<4} {t_pure:>9.4f}s {'n/a':>10}")
            continue
        t_nat, res_nat = time_backend(_native, instance)
        assert res_pure == res_nat
        print(f"{nbits:>5} 2^{r:<4} {t_pure:>9.4f}s {t_nat:>9.4f}s "
              f"{t_pure / t_nat:>7.1f}x")


def bench_expansion():
    import os
    import subprocess
    import sys

    code = (
        "import time; from hdxcheck import complete_complex;"
        "from hdxcheck.expansion import coboundary_expansion;"
        "x = complete_complex(6, 2);"
        "t0 = time.perf_counter();"
        "v = coboundary_expansion(x, 1);"
        "print(f'{time.perf_counter() - t0:.4f}')"
    )
    out = {}
    for label in ("native", "pure"):
        if label == "native" and _native is None:
            continue
        env = dict(os.environ)
        env.pop("HDX_PURE", None)
        if label == "pure":
            env["HDX_PURE"] = "1"
        result = subprocess.run([sys.executable, "-c", code], env=env,
                                capture_output=True, text=True, check=True)
        out[label] = float(result.stdout.strip())
        print(f"expansion scan, 2^15 cochains ({label}): {out[label]:.4f}s")
    if len(out) == 2:
        print(f"end-to-end speedup: {out['pure'] / out['native']:.1f}x")


if __name__ == "__main__":
    print("== synthetic coset scans ==")
    bench_scans()
    print()
    print("== coboundary expansion of the 6-vertex 2-dim complete complex ==")
    bench_expansion()
