"""Binary cochains, the coboundary operator, localization, and norms.

A k-cochain is identified with its support, stored as a bitset over the
lexicographic index of X(k). Addition is symmetric difference. Norms and
mutual weights are exact rationals computed from the complex's cover counts.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from . import gf2, kernels
from .complexes import Face, SimplicialComplex, as_face
from .errors import BudgetExceeded, DimensionMismatch, InvalidComplex

DEFAULT_BUDGET = 1 << 24


def enumeration_budget(budget: int | None = None) -> int:
    """Active exhaustive-search budget; HDX_BUDGET overrides the default."""
    if budget is not None:
        return budget
    env = os.environ.get("HDX_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Cochain:
    """Support bitset of faces in one dimension of a fixed complex."""

    complex: SimplicialComplex
    k: int
    mask: int

    def __post_init__(self):
        n = self.complex.n_faces(self.k)
        if self.mask < 0 or self.mask >> n:
            raise DimensionMismatch(
                f"mask has bits outside the {n} faces of dimension {self.k}")

    def support(self) -> tuple[Face, ...]:
        faces = self.complex.faces(self.k)
        return tuple(faces[i] for i in _bit_indices(self.mask))

    def support_size(self) -> int:
        return self.mask.bit_count()

    def is_zero(self) -> bool:
        return self.mask == 0

    def __xor__(self, other: "Cochain") -> "Cochain":
        if other.complex is not self.complex or other.k != self.k:
            raise DimensionMismatch("cochains live in different spaces")
        return Cochain(self.complex, self.k, self.mask ^ other.mask)

    def __contains__(self, sigma) -> bool:
        face = as_face(sigma)
        if len(face) - 1 != self.k or not self.complex.has_face(face):
            return False
        return bool((self.mask >> self.complex.face_index(face)) & 1)

    def __repr__(self) -> str:
        return f"Cochain(k={self.k}, support={self.support()})"


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def zero_cochain(x: SimplicialComplex, k: int) -> Cochain:
    return Cochain(x, k, 0)


def full_cochain(x: SimplicialComplex, k: int) -> Cochain:
    return Cochain(x, k, (1 << x.n_faces(k)) - 1)


def cochain_from_faces(x: SimplicialComplex, k: int,
                       faces: Iterable[Iterable[int]]) -> Cochain:
    return Cochain(x, k, x.mask_of(faces, k))


# -- coboundary and neighborhood counts --------------------------------------


def coboundary(f: Cochain) -> Cochain:
    """One dimension up: a face is set iff an odd number of its facets are."""
    x = f.complex
    if f.k >= x.dim:
        raise DimensionMismatch("no coboundary above the top dimension")
    out = 0
    for j, facets in enumerate(x.facet_masks(f.k + 1)):
        if (f.mask & facets).bit_count() & 1:
            out |= 1 << j
    return Cochain(x, f.k + 1, out)


def delta_i(f: Cochain, i: int) -> Cochain:
    """(k+1)-faces containing exactly i faces of the support."""
    x = f.complex
    if f.k >= x.dim:
        raise DimensionMismatch("no faces above the top dimension")
    if i < 0 or i > f.k + 2:
        raise DimensionMismatch(f"facet count {i} out of range 0..{f.k + 2}")
    out = 0
    for j, facets in enumerate(x.facet_masks(f.k + 1)):
        if (f.mask & facets).bit_count() == i:
            out |= 1 << j
    return Cochain(x, f.k + 1, out)


def localize(f: Cochain, sigma: Iterable[int]) -> Cochain:
    """Bits of f on faces containing sigma, read inside the link of sigma."""
    face = as_face(sigma)
    x = f.complex
    if len(face) > f.k + 1:
        raise DimensionMismatch(
            f"cannot localize a {f.k}-cochain at {len(face) - 1}-face")
    view = x.link(face)
    kp = f.k - len(face)
    out = 0
    for i, parent in enumerate(view.loc_parent_indices(kp)):
        if (f.mask >> parent) & 1:
            out |= 1 << i
    return Cochain(view.complex, kp, out)


def restrict(f: Cochain, sigma: Iterable[int]) -> Cochain:
    """The part of f supported on faces of the link of sigma, same dimension."""
    face = as_face(sigma)
    x = f.complex
    if f.k + len(face) > x.dim:
        raise DimensionMismatch(
            f"link of {face!r} has no faces of dimension {f.k}")
    view = x.link(face)
    out = 0
    for i, parent in enumerate(view.res_parent_indices(f.k)):
        if (f.mask >> parent) & 1:
            out |= 1 << i
    return Cochain(view.complex, f.k, out)


# -- norms --------------------------------------------------------------------


def norm(f: Cochain) -> Fraction:
    """Probability that a face drawn from the induced distribution is set."""
    return f.complex.norm_of_mask(f.k, f.mask)


def mutual_norm(f: Cochain, g: Cochain) -> Fraction:
    """Joint weight of f with a lower-dimensional face set g.

    Draw a k-face by its induced distribution, then a uniform ell-subface;
    the result is the probability both land in their sets. g may be any face
    set of dimension ell < k on the same complex.
    """
    if g.complex is not f.complex:
        raise DimensionMismatch("mutual weight needs a common complex")
    if g.k >= f.k:
        raise DimensionMismatch("second argument must have lower dimension")
    x = f.complex
    faces = x.faces(f.k)
    covers = x.cover_counts(f.k)
    index = x.index_map(g.k)
    num = 0
    for i in _bit_indices(f.mask):
        hits = 0
        for sub in combinations(faces[i], g.k + 1):
            if (g.mask >> index[sub]) & 1:
                hits += 1
        num += covers[i] * hits
    den = x.weight_den(f.k) * math.comb(f.k + 1, g.k + 1)
    return Fraction(num, den)


def link_joint_norm(x: SimplicialComplex, sigma: Iterable[int], g: Cochain) -> Fraction:
    """Probability that a random face selects sigma and completes into g.

    Draw a (|sigma|+j)-face tau by its induced distribution, then a uniform
    subface rho of tau with |rho| = |sigma|; the result is
    Pr[rho = sigma and tau minus sigma lies in g], where g is a j-face set
    in the link of sigma.
    """
    face = as_face(sigma)
    view = x.link(face)
    if g.complex is not view.complex:
        raise DimensionMismatch("g must live in the link of sigma")
    s = len(face)
    j = g.k
    if s + j > x.dim:
        raise DimensionMismatch("combined dimension exceeds the complex")
    parent = view.loc_parent_indices(j)
    covers = x.cover_counts(s + j)
    num = 0
    for i in _bit_indices(g.mask):
        num += covers[parent[i]]
    den = x.weight_den(s + j) * math.comb(s + j + 1, s)
    return Fraction(num, den)


# -- cocycles, coboundaries, cohomology ---------------------------------------


@dataclass(frozen=True)
class CochainSpaceBasis:
    k: int
    kind: str  # "cocycles" or "coboundaries"
    basis: tuple[Cochain, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def masks(self) -> list[int]:
        return [c.mask for c in self.basis]


def coboundary_space(x: SimplicialComplex, k: int) -> CochainSpaceBasis:
    """Image of the coboundary from dimension k-1, empty face included."""
    if k < 0 or k > x.dim:
        raise DimensionMismatch(f"no cochain space at dimension {k}")
    masks = gf2.row_basis(x.cofacet_masks(k - 1))
    return CochainSpaceBasis(
        k, "coboundaries", tuple(Cochain(x, k, m) for m in masks))


def cocycle_space(x: SimplicialComplex, k: int) -> CochainSpaceBasis:
    """Kernel of the coboundary at dimension k; the full space at the top."""
    if k < 0 or k > x.dim:
        raise DimensionMismatch(f"no cochain space at dimension {k}")
    n = x.n_faces(k)
    if k == x.dim:
        masks = [1 << i for i in range(n)]
    else:
        masks = gf2.kernel_basis(list(x.cofacet_masks(k)))
        masks = gf2.row_basis(masks)
    return CochainSpaceBasis(
        k, "cocycles", tuple(Cochain(x, k, m) for m in masks))


@dataclass(frozen=True)
class CohomologyClass:
    k: int
    class_id: int
    representative: Cochain
    min_weight: Fraction
    min_count: int

    @property
    def is_trivial(self) -> bool:
        return self.class_id == 0


def cohomology_classes(x: SimplicialComplex, k: int,
                       budget: int | None = None) -> list[CohomologyClass]:
    """One class per coset of the coboundaries inside the cocycles.

    Each representative is the minimum-weight element of its coset, ties
    broken by lexicographically smallest support. Raises BudgetExceeded
    rather than truncating when the scan would be too large.
    """
    budget = enumeration_budget(budget)
    z = cocycle_space(x, k)
    b = coboundary_space(x, k)
    b_masks = b.masks()
    z_reduced = gf2.row_basis(z.masks())
    for m in b_masks:
        if not gf2.in_span(m, z_reduced):
            raise InvalidComplex("coboundary outside the cocycles")
    h_masks = gf2.extend_basis(gf2.row_basis(b_masks), z.masks())
    needed = (1 << len(h_masks)) * (1 << len(b_masks))
    if needed > budget:
        raise BudgetExceeded(needed, budget, f"cohomology classes at k={k}")
    covers = x.cover_counts(k)
    n = x.n_faces(k)
    den = x.weight_den(k)
    classes = []
    rep0 = 0
    for cid in range(1 << len(h_masks)):
        rep = rep0
        for j in _bit_indices(cid):
            rep ^= h_masks[j]
        w, best, count = kernels.coset_min_weight(rep, b_masks, covers, n)
        classes.append(CohomologyClass(
            k, cid, Cochain(x, k, best), Fraction(w, den), count))
    return classes


def dist_to_coboundaries(f: Cochain, budget: int | None = None) -> Fraction:
    """Minimum weight over the coset f + coboundaries."""
    budget = enumeration_budget(budget)
    x = f.complex
    b_masks = coboundary_space(x, f.k).masks()
    if (1 << len(b_masks)) > budget:
        raise BudgetExceeded(1 << len(b_masks), budget, "coset scan")
    w, _, _ = kernels.coset_min_weight(
        f.mask, b_masks, x.cover_counts(f.k), x.n_faces(f.k))
    return Fraction(w, x.weight_den(f.k))


def coset_minimum_elements(f: Cochain, budget: int | None = None) -> list[Cochain]:
    """All minimum-weight elements of f + coboundaries, lexicographic order."""
    budget = enumeration_budget(budget)
    x = f.complex
    b_masks = coboundary_space(x, f.k).masks()
    if 2 * (1 << len(b_masks)) > budget:
        raise BudgetExceeded(2 * (1 << len(b_masks)), budget, "coset scan")
    covers = x.cover_counts(f.k)
    n = x.n_faces(f.k)
    w, _, _ = kernels.coset_min_weight(f.mask, b_masks, covers, n)
    masks = kernels.coset_elements_of_weight(f.mask, b_masks, covers, n, w)
    masks.sort(key=lambda m: tuple(_bit_indices(m)))
    return [Cochain(x, f.k, m) for m in masks]


def is_minimal(f: Cochain, budget: int | None = None) -> bool:
    """No coboundary shift strictly reduces the weight."""
    x = f.complex
    return x.weight_num(f.k, f.mask) == _coset_min_num(f, budget)


def _coset_min_num(f: Cochain, budget: int | None) -> int:
    budget = enumeration_budget(budget)
    x = f.complex
    b_masks = coboundary_space(x, f.k).masks()
    if (1 << len(b_masks)) > budget:
        raise BudgetExceeded(1 << len(b_masks), budget, "coset scan")
    w, _, _ = kernels.coset_min_weight(
        f.mask, b_masks, x.cover_counts(f.k), x.n_faces(f.k))
    return w


def is_locally_minimal(f: Cochain, budget: int | None = None) -> bool:
    """The localization to every vertex link is minimal there."""
    x = f.complex
    for v in x.faces(0):
        if not is_minimal(localize(f, v), budget):
            return False
    return True


# -- .cochain file format ------------------------------------------------------


def read_cochain(path, x: SimplicialComplex) -> Cochain:
    """Parse `k <dim>` then one support face per line (dims >= 0)."""
    k: int | None = None
    faces = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if k is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != "k":
                    raise InvalidComplex(
                        f"{path}:{lineno}: expected 'k <dim>', got {line!r}")
                k = int(parts[1])
                continue
            faces.append(tuple(int(tok) for tok in line.split()))
    if k is None:
        raise InvalidComplex(f"{path}: missing 'k' header")
    return cochain_from_faces(x, k, faces)


def write_cochain(f: Cochain, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"k {f.k}\n")
        for face in f.support():
            fh.write(" ".join(str(v) for v in face) + "\n")
