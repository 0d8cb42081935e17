"""Exact verification toolkit for s-matrices on pre-Lie algebras.

All arithmetic is over the rationals; every identity is checked on basis
elements with no tolerance.
"""

from .deformation import (
    CochainComplexSlice,
    DeformationReport,
    SubcomplexError,
    cochain_complex,
    cohomology_dims,
    deformation_report,
    deformations_equivalent,
    delta_rb_full,
    delta_s,
    is_nijenhuis,
    is_weak_homomorphism,
    nijenhuis_scan,
    tilde_basis,
    trivial_deformation,
    trivial_deformation_certificate,
)
from .exactla import PolyTensor, nullspace_basis, rank, solve, to_rational
from .phasespace import (
    DualBilinearMap,
    PhaseSpace,
    build_phase_space,
    compatible_prelie_from_symplectic,
    deform_phase_space,
    is_weak_phase_homomorphism,
    nijenhuis_phase_deformation,
    phase_deformation_pi,
    verify_phase_space,
)
from .prelie import (
    LieAlgebra,
    PreLieAlgebra,
    PreLieCochain,
    PreLieRepresentation,
    dual_operators,
    dual_representation,
    mult_operators,
    prelie_coboundary,
    regular_representation,
    sub_adjacent,
    verify_lie,
    verify_pre_lie,
    verify_representation,
)
from .report import (
    ConsistencyError,
    InputError,
    NotInvertibleError,
    PreconditionError,
    VerificationReport,
)
from .rotabaxter import (
    MapCochain,
    RBContext,
    delta_rb,
    graded_bracket,
    induced_prelie,
    is_rb_homomorphism,
    is_relative_rb,
    maurer_cartan_residual,
    rb_representation,
)
from .smatrix import (
    BilinearForm,
    SymTensor2,
    TensorCochain,
    induced_dual_products,
    is_s_matrix,
    pseudo_hessian,
    psi,
    r_sharp,
    s_bracket,
    s_equation_tensor,
    upsilon,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearForm",
    "CochainComplexSlice",
    "ConsistencyError",
    "DeformationReport",
    "DualBilinearMap",
    "InputError",
    "LieAlgebra",
    "MapCochain",
    "NotInvertibleError",
    "PhaseSpace",
    "PolyTensor",
    "PreLieAlgebra",
    "PreLieCochain",
    "PreLieRepresentation",
    "PreconditionError",
    "RBContext",
    "SubcomplexError",
    "SymTensor2",
    "TensorCochain",
    "VerificationReport",
    "build_phase_space",
    "cochain_complex",
    "cohomology_dims",
    "compatible_prelie_from_symplectic",
    "deform_phase_space",
    "deformation_report",
    "deformations_equivalent",
    "delta_rb",
    "delta_rb_full",
    "delta_s",
    "dual_operators",
    "dual_representation",
    "graded_bracket",
    "induced_dual_products",
    "induced_prelie",
    "is_nijenhuis",
    "is_rb_homomorphism",
    "is_relative_rb",
    "is_s_matrix",
    "is_weak_homomorphism",
    "is_weak_phase_homomorphism",
    "maurer_cartan_residual",
    "mult_operators",
    "nullspace_basis",
    "nijenhuis_phase_deformation",
    "nijenhuis_scan",
    "phase_deformation_pi",
    "prelie_coboundary",
    "pseudo_hessian",
    "psi",
    "r_sharp",
    "rank",
    "rb_representation",
    "regular_representation",
    "s_bracket",
    "s_equation_tensor",
    "solve",
    "sub_adjacent",
    "tilde_basis",
    "to_rational",
    "trivial_deformation",
    "trivial_deformation_certificate",
    "upsilon",
    "verify_lie",
    "verify_phase_space",
    "verify_pre_lie",
    "verify_representation",
]
