"""Exact matrix factorizations, Ext groups and Hochschild invariants of Landau-Ginzburg models."""

from .cech import CechCover, cech_ext, cech_hyper, sheafify
from .curved import (
    CurvatureMismatch,
    CurvedMap,
    MatrixFactorization,
    cokernel,
    cone,
    direct_sum,
    dual,
    external_tensor,
    shift,
    verify,
)
from .groebner import (
    INFINITE,
    FreeModuleMap,
    GroebnerBasis,
    ModulePresentation,
    homology,
    lift,
    normal_form,
    q_dimension,
    syzygies,
)
from .hochschild import (
    compare_hh,
    cy_symmetry_check,
    forms_complex,
    hh_cohomology,
    hh_homology,
    hh_via_diagonal,
    milnor_number,
    polyvector_complex,
)
from .homcx import HomComplex, Z2Complex, compose, ext, hom_complex
from .poly import (
    Polynomial,
    Ring,
    arith,
    parse_polynomial,
    partial_derivative,
    product_ring,
    variable_decompose,
    variable_split,
)
from .stabilization import diagonal_mf, koszul_stab, stabilize

__version__ = "0.1.0"
