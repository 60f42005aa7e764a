"""Exact calculus for Lie algebroids, their deformation complexes and VB-algebroid derivations."""

from .algebroid import (
    BundleDerivation,
    Connection,
    FrameAlgebroid,
    check_anchor_compat,
    check_flatness,
    check_jacobi,
    gauge_algebroid,
)
from .defcomplex import DefCochain, differential, is_algebroid_derivation
from .im import (
    IMSectionCoords,
    IMTriple,
    LinearDecomposition,
    check_im_triple,
    compose_linear,
    decompose_linear,
    decomposition_differential,
    horizontal_from_triple,
    im_section_pde_check,
    internal_triple,
    theorem_equivalence_suite,
    trivial_core_im_check,
)
from .report import Report
from .specfile import SpecDocument
from .suite import load_fixture
from .symexpr import Polynomial, PolyMatrix, PolyVector, parse_expression
from .vb import (
    SplitVB,
    build_full_core,
    build_tangent,
    build_trivial_core,
    classify_cochain_linearity,
    euler_derivation,
    gauge_vb,
    validate_vb_axioms,
)

__version__ = "0.1.0"

__all__ = [
    "BundleDerivation",
    "Connection",
    "FrameAlgebroid",
    "check_anchor_compat",
    "check_flatness",
    "check_jacobi",
    "gauge_algebroid",
    "DefCochain",
    "differential",
    "is_algebroid_derivation",
    "IMSectionCoords",
    "IMTriple",
    "LinearDecomposition",
    "check_im_triple",
    "compose_linear",
    "decompose_linear",
    "decomposition_differential",
    "horizontal_from_triple",
    "im_section_pde_check",
    "internal_triple",
    "theorem_equivalence_suite",
    "trivial_core_im_check",
    "Report",
    "SpecDocument",
    "load_fixture",
    "Polynomial",
    "PolyMatrix",
    "PolyVector",
    "parse_expression",
    "SplitVB",
    "build_full_core",
    "build_tangent",
    "build_trivial_core",
    "classify_cochain_linearity",
    "euler_derivation",
    "gauge_vb",
    "validate_vb_axioms",
    "__version__",
]
