"""Deterministic and seeded constructions of test complexes.

Every generator output passes the core invariants; the two surface
triangulations additionally self-test their Euler characteristic, vertex
links, and binary cohomology dimensions on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import gf2
from .complexes import SimplicialComplex, build_complex
from .errors import InvalidComplex
from .rng import splitmix64

# Antipodal quotient of the icosahedron: 6 vertices, complete 1-skeleton,
# 10 triangles, every vertex link a 5-cycle.
RP2_SIX_FACES = (
    (0, 1, 2), (0, 1, 5), (0, 2, 3), (0, 3, 4), (0, 4, 5),
    (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
)


def complete_complex(n: int, d: int) -> SimplicialComplex:
    """All (d+1)-subsets of n vertices as top faces."""
    if n <= d:
        raise InvalidComplex(f"need n >= d+1, got n={n}, d={d}")
    return build_complex(list(combinations(range(n), d + 1)), d)


def single_simplex(d: int) -> SimplicialComplex:
    return build_complex([tuple(range(d + 1))], d)


def rp2_six() -> SimplicialComplex:
    """Six-vertex triangulation of the projective plane."""
    x = build_complex(list(RP2_SIX_FACES), 2)
    _surface_self_test(x, expected_chi=1, expected_h1=1, link_cycle_len=5)
    return x


def torus_seven() -> SimplicialComplex:
    """Seven-vertex triangulation of the torus (cyclic difference pattern)."""
    faces = set()
    for i in range(7):
        faces.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        faces.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    x = build_complex(sorted(faces), 2)
    _surface_self_test(x, expected_chi=0, expected_h1=2, link_cycle_len=6)
    return x


def linial_meshulam(n: int, d: int, p: float, seed: int) -> SimplicialComplex:
    """Full lower skeleton plus each d-face kept independently with probability p.

    Face i (lexicographic over all (d+1)-subsets) is kept iff the i-th
    counter output of the seed is below floor(p * 2**64). Faces left without
    a covering top face are dropped to keep the complex pure; uncovered
    vertices are relabeled to keep ids contiguous. Repair counts are stored
    in the returned complex's meta dict.
    """
    if n <= d:
        raise InvalidComplex(f"need n >= d+1, got n={n}, d={d}")
    if not 0.0 <= p <= 1.0:
        raise InvalidComplex(f"probability out of range: {p}")
    threshold = int(p * (1 << 64))
    chosen = []
    for i, face in enumerate(combinations(range(n), d + 1)):
        if splitmix64(seed, i) < threshold:
            chosen.append(face)
    if not chosen:
        raise InvalidComplex("no top faces survived sampling")

    used = sorted({v for f in chosen for v in f})
    relabel = {v: i for i, v in enumerate(used)}
    tops = [tuple(relabel[v] for v in f) for f in chosen]
    x = build_complex(tops, d)

    covered_lower = x.n_faces(d - 1)
    x.meta["lm_params"] = {"n": n, "d": d, "p": p, "seed": seed}
    x.meta["lm_dropped_lower_faces"] = math.comb(n, d) - covered_lower
    x.meta["lm_dropped_vertices"] = n - len(used)
    return x


@dataclass(frozen=True)
class GeneratorSpec:
    """Validated recipe for a test complex; same spec and seed, same complex."""

    kind: str
    n: Optional[int] = None
    d: Optional[int] = None
    p: Optional[float] = None
    seed: Optional[int] = None

    KINDS = ("complete", "rp2_6", "torus_7", "single_simplex", "linial_meshulam")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidComplex(f"unknown generator kind {self.kind!r}")
        needs = {
            "complete": ("n", "d"),
            "rp2_6": (),
            "torus_7": (),
            "single_simplex": ("d",),
            "linial_meshulam": ("n", "d", "p", "seed"),
        }[self.kind]
        for attr in needs:
            if getattr(self, attr) is None:
                raise InvalidComplex(f"{self.kind} needs parameter {attr!r}")

    def build(self) -> SimplicialComplex:
        if self.kind == "complete":
            return complete_complex(self.n, self.d)
        if self.kind == "rp2_6":
            return rp2_six()
        if self.kind == "torus_7":
            return torus_seven()
        if self.kind == "single_simplex":
            return single_simplex(self.d)
        return linial_meshulam(self.n, self.d, self.p, self.seed)


# -- self-tests ---------------------------------------------------------------


def _surface_self_test(x: SimplicialComplex, expected_chi: int,
                       expected_h1: int, link_cycle_len: int) -> None:
    chi = x.n_faces(0) - x.n_faces(1) + x.n_faces(2)
    if chi != expected_chi:
        raise InvalidComplex(f"euler characteristic {chi} != {expected_chi}")
    for v in x.faces(0):
        if not _is_single_cycle(x, v, link_cycle_len):
            raise InvalidComplex(f"link of {v} is not a {link_cycle_len}-cycle")
    h1 = _binary_h1_dimension(x)
    if h1 != expected_h1:
        raise InvalidComplex(f"dim H^1 over GF(2) is {h1} != {expected_h1}")


def _is_single_cycle(x: SimplicialComplex, v: tuple[int, ...], length: int) -> bool:
    lk = x.link(v).complex
    if lk.n_faces(0) != length or lk.n_faces(1) != length:
        return False
    deg = {u: 0 for (u,) in lk.faces(0)}
    for a, b in lk.faces(1):
        deg[a] += 1
        deg[b] += 1
    if any(d != 2 for d in deg.values()):
        return False
    # connected 2-regular graph on `length` vertices is a single cycle
    adj = {u: [] for (u,) in lk.faces(0)}
    for a, b in lk.faces(1):
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == length


def _binary_h1_dimension(x: SimplicialComplex) -> int:
    rank_d0 = gf2.rank(x.cofacet_masks(0))
    rank_d1 = gf2.rank(x.cofacet_masks(1))
    dim_z1 = x.n_faces(1) - rank_d1
    return dim_z1 - rank_d0
