"""Pure weighted simplicial complexes with exact induced face distributions.

A complex is stored per dimension k = -1..d as a lexicographically sorted
face list plus, for every face, the number of top faces covering it. With a
uniform top distribution the induced probability of a k-face sigma is

    P_k(sigma) = cover(sigma) / (|X(d)| * C(d+1, k+1)),

so all weights in one dimension share a denominator and norms reduce to
integer sums. Built complexes are immutable; lazy caches are idempotent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FaceNotFound, InvalidComplex

Face = tuple[int, ...]

EMPTY_FACE: Face = ()


def as_face(vertices: Iterable[int]) -> Face:
    """Normalize to a sorted duplicate-free vertex tuple."""
    vs = list(vertices)
    face = tuple(sorted(vs))
    if len(set(face)) != len(vs):
        raise InvalidComplex(f"face has repeated vertices: {vs!r}")
    if face and face[0] < 0:
        raise InvalidComplex(f"negative vertex id in {vs!r}")
    return face


class SimplicialComplex:
    """Downward closure of a set of top faces, with induced rational weights."""

    def __init__(self, top_faces: Sequence[Iterable[int]], d: int,
                 require_contiguous: bool = True):
        if d < 0:
            raise InvalidComplex("dimension must be >= 0")
        tops = [as_face(f) for f in top_faces]
        if not tops:
            raise InvalidComplex("at least one top face is required")
        for f in tops:
            if len(f) != d + 1:
                raise InvalidComplex(
                    f"top face {f!r} has {len(f)} vertices, expected {d + 1}")
        if len(set(tops)) != len(tops):
            raise InvalidComplex("duplicate top faces")
        tops.sort()

        self._d = d
        vertex_set = sorted({v for f in tops for v in f})
        if require_contiguous and vertex_set != list(range(len(vertex_set))):
            raise InvalidComplex("vertex ids must be contiguous 0..n-1")
        self._vertices = tuple(vertex_set)

        # cover counts per dimension; downward closure and purity hold by
        # construction because every stored face comes from some top face
        covers: dict[int, dict[Face, int]] = {k: {} for k in range(-1, d + 1)}
        for top in tops:
            for k in range(-1, d + 1):
                for sub in combinations(top, k + 1):
                    covers[k][sub] = covers[k].get(sub, 0) + 1

        self._faces: dict[int, tuple[Face, ...]] = {}
        self._index: dict[int, dict[Face, int]] = {}
        self._covers: dict[int, tuple[int, ...]] = {}
        self._denominator: dict[int, int] = {}
        n_top = len(tops)
        for k in range(-1, d + 1):
            faces = tuple(sorted(covers[k]))
            self._faces[k] = faces
            self._index[k] = {f: i for i, f in enumerate(faces)}
            self._covers[k] = tuple(covers[k][f] for f in faces)
            den = n_top * math.comb(d + 1, k + 1)
            self._denominator[k] = den
            if sum(self._covers[k]) != den:
                raise InvalidComplex(
                    f"induced weights at dimension {k} do not sum to 1")

        self._links: dict[Face, "LinkView"] = {}
        self._facet_cache: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._facet_mask_cache: dict[int, tuple[int, ...]] = {}
        self._cofacet_mask_cache: dict[int, tuple[int, ...]] = {}
        self._analysis_cache: dict = {}
        self.meta: dict = {}

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return self._d

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    def valid_dims(self) -> range:
        return range(-1, self._d + 1)

    def faces(self, k: int) -> tuple[Face, ...]:
        if k not in self._faces:
            raise DimensionMismatch(f"no faces of dimension {k}")
        return self._faces[k]

    def n_faces(self, k: int) -> int:
        return len(self.faces(k))

    def face_counts(self) -> dict[int, int]:
        return {k: len(self._faces[k]) for k in self.valid_dims()}

    def top_faces(self) -> tuple[Face, ...]:
        return self._faces[self._d]

    def has_face(self, sigma: Iterable[int]) -> bool:
        face = as_face(sigma)
        k = len(face) - 1
        return k in self._faces and face in self._index[k]

    def face_index(self, sigma: Iterable[int]) -> int:
        face = as_face(sigma)
        k = len(face) - 1
        if k not in self._faces or face not in self._index[k]:
            raise FaceNotFound(f"{face!r} is not a face of the complex")
        return self._index[k][face]

    def cover_count(self, sigma: Iterable[int]) -> int:
        return self._covers[len(as_face(sigma)) - 1][self.face_index(sigma)]

    def face_weight(self, sigma: Iterable[int]) -> Fraction:
        """Exact induced probability of the face."""
        face = as_face(sigma)
        k = len(face) - 1
        return Fraction(self.cover_count(face), self._denominator[k])

    # -- bitset-level weights ---------------------------------------------

    def weight_num(self, k: int, mask: int) -> int:
        covers = self._covers[k]
        total = 0
        while mask:
            low = mask & -mask
            total += covers[low.bit_length() - 1]
            mask ^= low
        return total

    def weight_den(self, k: int) -> int:
        return self._denominator[k]

    def norm_of_mask(self, k: int, mask: int) -> Fraction:
        return Fraction(self.weight_num(k, mask), self._denominator[k])

    def cover_counts(self, k: int) -> tuple[int, ...]:
        return self._covers[k]

    def index_map(self, k: int) -> dict[Face, int]:
        return self._index[k]

    def mask_of(self, faces: Iterable[Iterable[int]], k: int) -> int:
        mask = 0
        for f in faces:
            face = as_face(f)
            if len(face) - 1 != k:
                raise DimensionMismatch(f"{face!r} is not a {k}-face")
            mask |= 1 << self.face_index(face)
        return mask

    # -- links -------------------------------------------------------------

    def link(self, sigma: Iterable[int]) -> "LinkView":
        face = as_face(sigma)
        if face in self._links:
            return self._links[face]
        if not self.has_face(face):
            raise FaceNotFound(f"{face!r} is not a face of the complex")
        if len(face) > self._d:
            raise DimensionMismatch(
                f"link of {face!r} would have negative dimension")
        view = LinkView(self, face)
        self._links[face] = view
        return view

    # -- boundary structure -------------------------------------------------

    def facet_indices(self, k: int) -> tuple[tuple[int, ...], ...]:
        """For each k-face, the indices of its (k-1)-dimensional facets."""
        if k not in self._facet_cache:
            if k < 0 or k > self._d:
                raise DimensionMismatch(f"no facet structure at dimension {k}")
            lower = self._index[k - 1]
            rows = []
            for face in self._faces[k]:
                rows.append(tuple(lower[sub] for sub in combinations(face, k)))
            self._facet_cache[k] = tuple(rows)
        return self._facet_cache[k]

    def facet_masks(self, k: int) -> tuple[int, ...]:
        if k not in self._facet_mask_cache:
            masks = []
            for row in self.facet_indices(k):
                m = 0
                for i in row:
                    m |= 1 << i
                masks.append(m)
            self._facet_mask_cache[k] = tuple(masks)
        return self._facet_mask_cache[k]

    def cofacet_masks(self, k: int) -> tuple[int, ...]:
        """For each k-face, the bitset of (k+1)-faces having it as a facet."""
        if k not in self._cofacet_mask_cache:
            if k + 1 > self._d:
                raise DimensionMismatch(f"no cofacets above dimension {self._d}")
            masks = [0] * len(self._faces[k])
            for j, row in enumerate(self.facet_indices(k + 1)):
                for i in row:
                    masks[i] |= 1 << j
            self._cofacet_mask_cache[k] = tuple(masks)
        return self._cofacet_mask_cache[k]

    def __repr__(self) -> str:
        counts = ",".join(str(len(self._faces[k])) for k in range(self._d + 1))
        return f"SimplicialComplex(dim={self._d}, faces=[{counts}])"


class LinkView:
    """The local view at a face: faces disjoint from sigma completing it.

    The underlying complex keeps parent vertex labels, and its induced
    weights coincide with the parent distribution conditioned on sigma.
    """

    def __init__(self, base: SimplicialComplex, sigma: Face):
        self.base = base
        self.sigma = sigma
        if sigma == EMPTY_FACE:
            self.complex = base
        else:
            s = set(sigma)
            tops = [tuple(v for v in top if v not in s)
                    for top in base.top_faces() if s.issubset(top)]
            self.complex = SimplicialComplex(
                tops, base.dim - len(sigma), require_contiguous=False)
        self._loc_maps: dict[int, tuple[int, ...]] = {}
        self._res_maps: dict[int, tuple[int, ...]] = {}

    @property
    def dim(self) -> int:
        return self.complex.dim

    def loc_parent_indices(self, kp: int) -> tuple[int, ...]:
        """Parent index of sigma∪tau for each kp-face tau of the link."""
        if kp not in self._loc_maps:
            self._loc_maps[kp] = tuple(
                self.base.face_index(tuple(sorted(self.sigma + tau)))
                for tau in self.complex.faces(kp))
        return self._loc_maps[kp]

    def res_parent_indices(self, kp: int) -> tuple[int, ...]:
        """Parent index of tau itself for each kp-face tau of the link."""
        if kp not in self._res_maps:
            self._res_maps[kp] = tuple(
                self.base.face_index(tau) for tau in self.complex.faces(kp))
        return self._res_maps[kp]

    def __repr__(self) -> str:
        return f"LinkView(sigma={self.sigma}, dim={self.dim})"


def build_complex(top_faces: Sequence[Iterable[int]], d: int) -> SimplicialComplex:
    """Build a pure complex from its top faces; see SimplicialComplex."""
    if d < 1:
        raise InvalidComplex("dimension must be >= 1")
    return SimplicialComplex(top_faces, d)


def link(x: SimplicialComplex, sigma: Iterable[int]) -> LinkView:
    return x.link(sigma)


def face_weight(x: SimplicialComplex, sigma: Iterable[int]) -> Fraction:
    return x.face_weight(sigma)


# -- .cplx file format ------------------------------------------------------


def read_cplx(path) -> SimplicialComplex:
    """Parse the text format: '#' comments, `dim d`, one top face per line."""
    dim: int | None = None
    tops: list[tuple[int, ...]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if dim is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != "dim":
                    raise InvalidComplex(
                        f"{path}:{lineno}: expected 'dim <d>', got {line!r}")
                dim = int(parts[1])
                continue
            try:
                tops.append(tuple(int(tok) for tok in line.split()))
            except ValueError as exc:
                raise InvalidComplex(f"{path}:{lineno}: bad face line") from exc
    if dim is None:
        raise InvalidComplex(f"{path}: missing 'dim' header")
    return build_complex(tops, dim)


def write_cplx(x: SimplicialComplex, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"dim {x.dim}\n")
        for face in x.top_faces():
            fh.write(" ".join(str(v) for v in face) + "\n")
