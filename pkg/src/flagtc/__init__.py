"""Mod-2 cohomology of semi-complete flag manifolds F(1^k, m) and of
non-orientable surfaces, zero-divisor products in tensor powers, and the
resulting bounds for higher topological complexity TC_s."""
from .f2poly import RawPoly, complete_symmetric, elementary_symmetric, parse_poly
from .flag_ring import FlagRing, RingElement, make_ring, normal_form, poincare_polynomial
from .grammar import parse_space, parse_zd_spec
from .kernels import BACKEND
from .surface_ring import SurfaceRing, make_surface, verify_surface_tcs
from .tensor_ring import (
    ResourceLimitError,
    TensorElement,
    TensorRing,
    ZDProductSpec,
    evaluate_zd_product,
    top_coefficient,
    zd_product_nonzero,
)
from .zcl_engine import (
    TCBound,
    corollary_lower_bound,
    exhaustive_search,
    gap_sequence,
    higher_certificate,
    sharpness_check,
    tc_report,
    theorem_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FlagRing", "RawPoly", "ResourceLimitError", "RingElement", "SurfaceRing",
    "TCBound", "TensorElement", "TensorRing", "ZDProductSpec", "complete_symmetric",
    "corollary_lower_bound", "elementary_symmetric", "evaluate_zd_product", "exhaustive_search",
    "gap_sequence", "higher_certificate", "make_ring", "make_surface", "normal_form",
    "parse_poly", "parse_space", "parse_zd_spec", "poincare_polynomial", "sharpness_check",
    "tc_report", "theorem_certificate", "top_coefficient", "verify_surface_tcs",
    "zd_product_nonzero",
]
