"""Exact computations with affine algebraic supergroups and their quotients."""

from .superlinalg import QQ, Field, ModP
from .superpoly import SuperPresentation, SuperElement, AlgebraMap, normal_form, truncated_basis
from .hopf import (
    HopfSuperalgebra,
    HopfError,
    Verdict,
    validate_hopf,
    associated_hopf_algebra,
    cotangent_data,
    lie_superalgebra,
    is_graded,
    gr_hopf_smash,
)
from .comod import SuperComodule, ComoduleAlgebra, coinvariants, cotensor_product
from .quotient import (
    prepare_pair,
    compute_z,
    compute_B1,
    build_quotient,
    check_affinity,
    check_galois,
    check_splitting,
    kappa_iso,
    theta_retraction,
    omega_graded,
    local_consistency_check,
    gr_quotient_check,
)

__version__ = "0.1.0"
