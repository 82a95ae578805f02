"""Walk spectra of link graphs, the no-intersection pair walk, and edge bounds.

Graphs are stored as symmetric ordered-pair mass matrices with exact rational
entries; the row-stochastic walk divides each row by its vertex weight, so
reversibility is structural. Eigenvalues come from a cyclic rotation
diagonalization of the symmetrized walk; every reported pair is validated
against a residual ceiling of 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cochains import Cochain, norm, restrict
from .complexes import Face, LinkView, SimplicialComplex
from .errors import DimensionMismatch, EigenSolverError, InvalidComplex

RESIDUAL_CEILING = 1e-9
_OFF_MASS_TARGET = 1e-24  # squared off-diagonal mass; residuals land near 1e-12


class WeightedGraph:
    """Vertex-weighted reversible walk given by symmetric pair masses.

    pair[i][j] is the mass of the ordered pair (i, j); loops sit on the
    diagonal. Vertex weights must equal row sums exactly, which makes the
    derived walk row-stochastic and reversible.
    """

    def __init__(self, labels: Sequence, vertex_weights: Sequence[Fraction],
                 pair_mass: Sequence[Sequence[Fraction]]):
        n = len(labels)
        if len(vertex_weights) != n or len(pair_mass) != n:
            raise InvalidComplex("inconsistent graph sizes")
        if sum(vertex_weights) != 1:
            raise InvalidComplex("vertex weights must sum to 1")
        for i in range(n):
            if len(pair_mass[i]) != n:
                raise InvalidComplex("pair mass matrix must be square")
            for j in range(i, n):
                if pair_mass[i][j] != pair_mass[j][i]:
                    raise InvalidComplex("pair masses must be symmetric")
            if sum(pair_mass[i]) != vertex_weights[i]:
                raise InvalidComplex(
                    "row mass differs from vertex weight: walk not reversible")
        self.labels = tuple(labels)
        self.vertex_weights = tuple(vertex_weights)
        self.pair = tuple(tuple(row) for row in pair_mass)

    @classmethod
    def from_edges(cls, labels: Sequence, vertex_weights: Sequence[Fraction],
                   edges: Iterable[tuple]) -> "WeightedGraph":
        """Edges as (u, v, weight) with unordered weights; u == v is a loop."""
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        pair = [[Fraction(0)] * n for _ in range(n)]
        for u, v, w in edges:
            i, j = index[u], index[v]
            if i == j:
                pair[i][i] += w
            else:
                pair[i][j] += Fraction(w, 2)
                pair[j][i] += Fraction(w, 2)
        return cls(labels, vertex_weights, pair)

    @property
    def n(self) -> int:
        return len(self.labels)

    def edges(self):
        """Unordered positive-mass edges as (u, v, weight), loops included."""
        for i in range(self.n):
            if self.pair[i][i]:
                yield self.labels[i], self.labels[i], self.pair[i][i]
            for j in range(i + 1, self.n):
                if self.pair[i][j]:
                    yield self.labels[i], self.labels[j], 2 * self.pair[i][j]

    def vertex_measure(self, subset) -> Fraction:
        index = {lab: i for i, lab in enumerate(self.labels)}
        return sum((self.vertex_weights[index[u]] for u in subset), Fraction(0))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(self.n):
                if j not in seen and i != j and self.pair[i][j]:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def symmetrized(self) -> list[list[float]]:
        """D^{1/2} P D^{-1/2} as floats: pair[i][j] / sqrt(w_i w_j)."""
        w = [float(x) for x in self.vertex_weights]
        for i, wi in enumerate(w):
            if wi == 0:
                raise InvalidComplex(f"vertex {self.labels[i]!r} has zero weight")
        return [[float(self.pair[i][j]) / math.sqrt(w[i] * w[j])
                 for j in range(self.n)] for i in range(self.n)]


# -- dense symmetric eigensolver ------------------------------------------------


def jacobi_eigensystem(matrix: Sequence[Sequence[float]],
                       max_sweeps: int = 80):
    """Cyclic rotation diagonalization of a symmetric matrix.

    Returns (eigenvalues descending, eigenvectors as columns, max residual),
    where the residual of a pair (lam, x) is max |(A x - lam x)_i| against
    the original matrix.
    """
    n = len(matrix)
    a = [list(map(float, row)) for row in matrix]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    if n == 1:
        return [a[0][0]], [[1.0]], 0.0

    def off_mass() -> float:
        return sum(a[p][q] * a[p][q]
                   for p in range(n) for q in range(p + 1, n)) * 2.0

    sweeps = 0
    while off_mass() > _OFF_MASS_TARGET:
        sweeps += 1
        if sweeps > max_sweeps:
            raise EigenSolverError("rotation sweeps did not converge")
        for p in range(n):
            for q in range(p + 1, n):
                if a[p][q] == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q])
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip - s * aiq
                    a[i][q] = s * aip + c * aiq
                for i in range(n):
                    api, aqi = a[p][i], a[q][i]
                    a[p][i] = c * api - s * aqi
                    a[q][i] = s * api + c * aqi
                for i in range(n):
                    vip, viq = v[i][p], v[i][q]
                    v[i][p] = c * vip - s * viq
                    v[i][q] = s * vip + c * viq

    pairs = sorted(((a[i][i], i) for i in range(n)), reverse=True)
    eigenvalues = [lam for lam, _ in pairs]
    vectors = [[v[i][idx] for _, idx in pairs] for i in range(n)]
    residual = 0.0
    for col, (lam, idx) in enumerate(pairs):
        for i in range(n):
            acc = sum(matrix[i][j] * vectors[j][col] for j in range(n))
            residual = max(residual, abs(acc - lam * vectors[i][col]))
    return eigenvalues, vectors, residual


@dataclass(frozen=True)
class GraphSpectrum:
    eigenvalues: tuple[float, ...]
    lambda2: float
    lambda_min: float
    residual: float
    connected: bool


def graph_spectrum(g: WeightedGraph) -> GraphSpectrum:
    connected = g.is_connected()
    eigenvalues, _, residual = jacobi_eigensystem(g.symmetrized())
    if residual > RESIDUAL_CEILING:
        raise EigenSolverError(f"residual {residual} above {RESIDUAL_CEILING}")
    lam2 = 1.0 if not connected else (
        eigenvalues[1] if len(eigenvalues) > 1 else eigenvalues[0])
    return GraphSpectrum(tuple(eigenvalues), lam2, eigenvalues[-1],
                         residual, connected)


def second_eigenvalue(g: WeightedGraph) -> float:
    """Second-largest walk eigenvalue; exactly 1.0 when disconnected."""
    return graph_spectrum(g).lambda2


# -- link graphs -----------------------------------------------------------------


def underlying_graph(x) -> WeightedGraph:
    """Vertices and edges of a complex or link, with induced weights."""
    cx = x.complex if isinstance(x, LinkView) else x
    if cx.dim < 1:
        raise DimensionMismatch("graph needs dimension >= 1")
    labels = cx.faces(0)
    vw = [cx.face_weight(f) for f in labels]
    edges = [((e[0],), (e[1],), cx.face_weight(e)) for e in cx.faces(1)]
    return WeightedGraph.from_edges(labels, vw, edges)


@dataclass(frozen=True)
class LinkSpectrumEntry:
    sigma: Face
    n_vertices: int
    lambda2: float
    lambda_min: float
    connected: bool
    residual: float


@dataclass(frozen=True)
class SpectralReport:
    entries: tuple[LinkSpectrumEntry, ...]
    lambda_one_sided: float
    lambda_two_sided: float
    max_residual: float
    any_disconnected: bool

    @property
    def lambda_eff(self) -> float:
        """Nonnegative stand-in for the one-sided bound in hypotheses."""
        return max(0.0, self.lambda_one_sided)

    @property
    def lambda_eff_two_sided(self) -> float:
        return max(0.0, self.lambda_two_sided)


def local_spectral_lambda(x: SimplicialComplex) -> SpectralReport:
    """Walk spectra of every link of dimension >= 1, empty face included."""
    entries = []
    for k in range(-1, x.dim - 1):
        for sigma in x.faces(k):
            g = underlying_graph(x.link(sigma))
            spec = graph_spectrum(g)
            entries.append(LinkSpectrumEntry(
                sigma, g.n, spec.lambda2, spec.lambda_min,
                spec.connected, spec.residual))
    if not entries:
        raise DimensionMismatch("complex has no links of dimension >= 1")
    one = max(e.lambda2 for e in entries)
    two = max(max(e.lambda2, abs(e.lambda_min)) for e in entries)
    return SpectralReport(
        tuple(entries), one, two,
        max(e.residual for e in entries),
        any(not e.connected for e in entries))


# -- pair walk without intersections ----------------------------------------------


def complement_walk_graph(x: SimplicialComplex, k: int) -> WeightedGraph:
    """Graph on k-faces weighted by shared one-vertex completions.

    The ordered mass of (sigma1, sigma2) is the expectation over a random
    vertex u of the product of the conditional probabilities that the random
    (k+1)-face equals sigma_i plus u given that it contains u. Loops are kept;
    total mass is 1 and row sums equal the k-face weights.
    """
    if k >= x.dim:
        raise DimensionMismatch("need k < dim for one-vertex completions")
    cached = x._analysis_cache.get(("complement_walk", k))
    if cached is not None:
        return cached
    faces = x.faces(k)
    n = len(faces)
    # per vertex u: q(u) = (k+2) * P_0(u), and the (face idx, P_{k+1}) pairs
    # of the (k+1)-faces through u
    completions: dict[int, list[tuple[int, Fraction]]] = {
        v[0]: [] for v in x.faces(0)}
    k_index = x.index_map(k)
    for tau in x.faces(k + 1):
        p_tau = x.face_weight(tau)
        for u in tau:
            rest = tuple(v for v in tau if v != u)
            completions[u].append((k_index[rest], p_tau))
    pair = [[Fraction(0)] * n for _ in range(n)]
    for v in x.faces(0):
        u = v[0]
        qu = (k + 2) * x.face_weight(v)
        if qu == 0:
            continue
        p0 = x.face_weight(v)
        for i, p_i in completions[u]:
            for j, p_j in completions[u]:
                pair[i][j] += p0 * (p_i / qu) * (p_j / qu)
    vw = [x.face_weight(f) for f in faces]
    graph = WeightedGraph(faces, vw, pair)
    x._analysis_cache[("complement_walk", k)] = graph
    return graph


@dataclass(frozen=True)
class RestrictionProfile:
    """Distribution of the restriction weight over a random vertex."""

    values: tuple[tuple[Face, Fraction], ...]
    mean: Fraction
    second_moment: Fraction
    variance: Fraction
    pair_mass_on_support: Fraction
    tails: tuple[tuple[Fraction, Fraction], ...]  # (epsilon, tail mass)


def restriction_profile(f: Cochain,
                        epsilons: Sequence[Fraction] = ()) -> RestrictionProfile:
    """Exact moments of u -> |f restricted to the link of u|."""
    x = f.complex
    if f.k >= x.dim:
        raise DimensionMismatch("restriction profile needs k < dim")
    values = []
    mean = Fraction(0)
    second = Fraction(0)
    for v in x.faces(0):
        mu = norm(restrict(f, v))
        p0 = x.face_weight(v)
        values.append((v, mu))
        mean += p0 * mu
        second += p0 * mu * mu
    variance = second - mean * mean
    g = complement_walk_graph(x, f.k)
    support = [i for i in range(len(g.labels))
               if (f.mask >> x.face_index(g.labels[i])) & 1]
    pair_mass = sum((g.pair[i][j] for i in support for j in support), Fraction(0))
    tails = []
    for eps in epsilons:
        tail = sum((x.face_weight(v) for v, mu in values if mu > mean + eps),
                   Fraction(0))
        tails.append((Fraction(eps), tail))
    return RestrictionProfile(tuple(values), mean, second, variance,
                              pair_mass, tuple(tails))


# -- edge bounds -----------------------------------------------------------------


@dataclass(frozen=True)
class EdgeBoundsReport:
    subset_measure: Fraction
    e1: Fraction
    e2: Fraction
    lambda2: float
    lambda_used: float
    e1_bound: float
    e2_bound: float
    e1_ok: bool
    e2_ok: bool


def edge_bounds(g: WeightedGraph, subset,
                tolerance: float = 1e-9) -> EdgeBoundsReport:
    """Boundary and interior edge mass of a vertex set against its walk gap.

    Uses the nonnegative part of the second eigenvalue: the mixing bounds
    are one-sided statements about an upper spectral bound, which is
    nonnegative by definition.
    """
    index = {lab: i for i, lab in enumerate(g.labels)}
    inside = {index[u] for u in subset}
    a = sum((g.vertex_weights[i] for i in inside), Fraction(0))
    e1 = Fraction(0)
    e2 = Fraction(0)
    for i in range(g.n):
        for j in range(g.n):
            m = g.pair[i][j]
            if not m:
                continue
            if (i in inside) != (j in inside):
                e1 += m
            elif i in inside:
                e2 += m
    lam2 = second_eigenvalue(g)
    lam = max(0.0, lam2)
    af = float(a)
    e1_bound = 2.0 * af * (1.0 - lam - af)
    e2_bound = af * (lam + af)
    return EdgeBoundsReport(
        a, e1, e2, lam2, lam, e1_bound, e2_bound,
        float(e1) >= e1_bound - tolerance,
        float(e2) <= e2_bound + tolerance)


def write_edge_list(g: WeightedGraph, fh) -> None:
    """Plain text export: vertex weight lines, then `u v weight` lines."""
    def fmt_label(lab) -> str:
        if isinstance(lab, tuple):
            return "-".join(str(v) for v in lab)
        return str(lab)

    for lab, w in zip(g.labels, g.vertex_weights):
        fh.write(f"{fmt_label(lab)} {w.numerator}/{w.denominator}\n")
    for u, v, w in g.edges():
        fh.write(f"{fmt_label(u)} {fmt_label(v)} "
                 f"{w.numerator}/{w.denominator}\n")
