"""Exact computations for lattice polytopes and their column structures."""

from .exactmath import (
    QQ,
    ZZ,
    IntegersMod,
    Poly,
    PolynomialRing,
    hermite_normal_form,
    integral_section,
    primitive_part,
)
from .polytopes import (
    AffineLatticeMap,
    FacetForm,
    InternalCheckError,
    NormalFan,
    Polytope,
    dilate,
    integral_affine_equivalent,
    is_normalized,
    is_unimodular_simplex,
    normal_fan,
    normalize_full_dim,
    normalized_volume,
    polytope_from_points,
    projectively_equivalent,
    translate,
)

__all__ = [
    "QQ",
    "ZZ",
    "IntegersMod",
    "Poly",
    "PolynomialRing",
    "hermite_normal_form",
    "integral_section",
    "primitive_part",
    "AffineLatticeMap",
    "FacetForm",
    "InternalCheckError",
    "NormalFan",
    "Polytope",
    "dilate",
    "integral_affine_equivalent",
    "is_normalized",
    "is_unimodular_simplex",
    "normal_fan",
    "normalize_full_dim",
    "normalized_volume",
    "polytope_from_points",
    "projectively_equivalent",
    "translate",
]
