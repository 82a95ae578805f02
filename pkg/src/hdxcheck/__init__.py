"""Exact cochain algebra and expansion checks on small weighted complexes."""

from __future__ import annotations

__version__ = "0.1.0"

from .complexes import (
    Face,
    LinkView,
    SimplicialComplex,
    build_complex,
    face_weight,
    link,
    read_cplx,
    write_cplx,
)
from .cochains import (
    Cochain,
    CochainSpaceBasis,
    CohomologyClass,
    coboundary,
    coboundary_space,
    cochain_from_faces,
    cocycle_space,
    cohomology_classes,
    coset_minimum_elements,
    delta_i,
    dist_to_coboundaries,
    full_cochain,
    is_locally_minimal,
    is_minimal,
    link_joint_norm,
    localize,
    mutual_norm,
    norm,
    read_cochain,
    restrict,
    write_cochain,
    zero_cochain,
)
from .generators import (
    GeneratorSpec,
    complete_complex,
    linial_meshulam,
    rp2_six,
    single_simplex,
    torus_seven,
)
