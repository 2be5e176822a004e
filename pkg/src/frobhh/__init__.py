"""Hochschild homology of finite-dimensional commutative F_p-algebras with
Frobenius-twisted coefficients.

The package also carries the supporting pieces used to check those
computations, such as exact linear algebra over F_q and a closed-form
MacLane homology calculator.
"""

from .algebra import (
    AlgebraError,
    AlgebraPresentation,
    algebra_from_spec,
    algebra_from_structure,
    algebra_product,
    algebra_tensor,
    algebra_to_spec,
    finite_field_algebra,
    frobenius_power,
    load_algebra,
    psi,
    radical,
    truncated_poly,
    validate_algebra,
)
from .bar import tor_via_bar
from .bimodule import Bimodule, LeftModule, ModuleError, phi_twist, regular_bimodule, regular_module, residue_module
from .fq import FieldError, FieldSpec, FqMatrix, echelon_analyze, field_make, kernel, rank, rref
from .hochschild import (
    CapExceeded,
    HomologyReport,
    hh_cohomology,
    hh_complex,
    hh_homology,
    kunneth_check,
    step1_poly,
    twisted_homology,
)
from .maclane import HmlAnswer, hml_fp, hml_gamma, hml_hh_crosscheck, hml_phi, hml_vanishing
from .polyfunctor import functor_apply, functor_dim, gamma_sym_duality_check
from .simplicial import (
    TruncatedSimplicialRing,
    function_simplicial_ring,
    lemma21_witness,
    moore_homotopy,
    power_identity_check,
    simplicial_validate,
)

__version__ = "0.1.0"
