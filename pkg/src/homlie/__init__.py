"""Exact computations with Hom-Lie and Hom-associative algebras over Q.

Hom-algebras, their representations, free nilpotent multiplicative Hom-Lie
algebras, and a certified construction of faithful nilpotent representations
of nilpotent multiplicative nondegenerate Hom-Lie algebras.
"""

from .adopipe import (
    AdoCertificate,
    Grading,
    ado,
    check_alpha_derivation,
    distinguishing_rep,
    extend_by_derivation,
    find_grading,
    graded_faithful_rep,
    restrict_to_z_kernel,
    verify_certificate,
)
from .errors import HomLieError
from .exactla import Matrix, Subspace
from .freehl import (
    TwistPolynomial,
    free_multiplicative_nilpotent,
    present_as_quotient,
    universal_map,
)
from .homassoc import (
    commutator_algebra,
    endomorphism_hom_algebra,
    theorem_a_backward,
    theorem_a_forward,
)
from .homcore import (
    HomAlgebra,
    check_hom_lie,
    check_multiplicative,
    check_nondegenerate,
    current_algebra,
    lower_central_series,
    nilindex,
    strong_nilpotency_chain,
    untwist,
    yau_twist,
)
from .homrep import (
    HomRepresentation,
    adjoint_rep,
    check_rep,
    check_rep_multiplicative,
    direct_sum,
    rep_kernel,
    rep_nilindex,
    tensor_rep,
)

__all__ = [
    "AdoCertificate",
    "Grading",
    "HomAlgebra",
    "HomLieError",
    "HomRepresentation",
    "Matrix",
    "Subspace",
    "TwistPolynomial",
    "adjoint_rep",
    "ado",
    "check_alpha_derivation",
    "check_hom_lie",
    "check_multiplicative",
    "check_nondegenerate",
    "check_rep",
    "check_rep_multiplicative",
    "commutator_algebra",
    "current_algebra",
    "direct_sum",
    "distinguishing_rep",
    "endomorphism_hom_algebra",
    "extend_by_derivation",
    "find_grading",
    "free_multiplicative_nilpotent",
    "graded_faithful_rep",
    "lower_central_series",
    "nilindex",
    "present_as_quotient",
    "rep_kernel",
    "rep_nilindex",
    "restrict_to_z_kernel",
    "strong_nilpotency_chain",
    "tensor_rep",
    "theorem_a_backward",
    "theorem_a_forward",
    "universal_map",
    "untwist",
    "verify_certificate",
    "yau_twist",
]
