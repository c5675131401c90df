"""Exact computations with finite-dimensional Lie superalgebras."""

from .biderivations import (
    BiderDefinition,
    assemble_bider_constraints,
    extract_phi_psi,
    is_biderivation,
    is_super_skewsymmetric,
    is_supercommuting_fan_dai,
    solve_biderivations,
    solve_supercommuting_new,
    supercommuting_to_biderivation,
)
from .graded import (
    GeneralLinearMap,
    GradedBilinearMap,
    GradedLinearMap,
    SuperAlgebra,
    SuperVectorSpace,
    adjoint_left,
    adjoint_right,
    bracket,
    bracket_tensor,
    check_jacobi,
    check_super_skew,
    decompose_map,
    supercommutator_ops,
)
from .operators import (
    center,
    inner_derivations,
    inner_type2,
    is_complete,
    solve_type1,
    solve_type2,
    transform_f,
    transform_g,
)

__version__ = "0.1.0"
