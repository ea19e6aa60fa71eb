# zpm_actions/__init__.py
"""
zpm-actions: exact classification of Z_p^m actions on closed oriented surfaces.

Decides strong and weak equivalence from monodromy data, builds witness actions from
invariants, and enumerates weak classes, with a brute-force covering oracle for cross-checks.
"""

from .exceptions import (
    SurfaceActionError,
    NotPrimeError,
    DimensionMismatchError,
    SingularMatrixError,
    NotAlternatingError,
    NotAnIsometryError,
    ActionShapeError,
    InvalidActionError,
    ZeroBranchImageError,
    BranchSumError,
    NotSurjectiveError,
    ActionMismatchError,
    AdmissibilityError,
    ActionFileError,
    InstanceTooLargeError,
    ConfigError,
    InternalConsistencyError,
    OracleIncompleteError,
)
from .config import Limits, DEFAULT_LIMITS, load_limits
from .fields import FpScalar, FpMatrix, Subspace, rref, kernel_basis, solve, subspace_ops
from .symplectic import (
    AlternatingForm,
    SymplecticBasis,
    StandardSymplecticSpace,
    standard_form,
    radical,
    symplectic_basis,
    extend_isometry,
    sp_group,
    symplectic_generators,
    group_order,
    verify_reduction_surjectivity,
)
from .actions import ActionData, validate, load_action_file
from .invariants import (
    StrongInvariant,
    WeakInvariant,
    induced_form,
    total_genus,
    strong_invariant,
    strongly_equivalent,
    weak_invariant,
    weakly_equivalent,
    canonical_multiset,
    multiset_signature,
    signature_hash,
)
from .moduli import construct_action, enumerate_free_classes, enumerate_weak_classes
from .oracle import (
    PermutationCover,
    MoveOrbit,
    build_cover,
    cover_genus,
    move_orbit,
    brute_force_classes,
    cross_validate,
    is_realizable,
    random_action_data,
)
from .selfcheck import SelfCheckRunner, CheckJob, run_selfcheck

__all__ = [
    "SurfaceActionError",
    "NotPrimeError",
    "DimensionMismatchError",
    "SingularMatrixError",
    "NotAlternatingError",
    "NotAnIsometryError",
    "ActionShapeError",
    "InvalidActionError",
    "ZeroBranchImageError",
    "BranchSumError",
    "NotSurjectiveError",
    "ActionMismatchError",
    "AdmissibilityError",
    "ActionFileError",
    "InstanceTooLargeError",
    "ConfigError",
    "InternalConsistencyError",
    "OracleIncompleteError",
    "Limits",
    "DEFAULT_LIMITS",
    "load_limits",
    "FpScalar",
    "FpMatrix",
    "Subspace",
    "rref",
    "kernel_basis",
    "solve",
    "subspace_ops",
    "AlternatingForm",
    "SymplecticBasis",
    "StandardSymplecticSpace",
    "standard_form",
    "radical",
    "symplectic_basis",
    "extend_isometry",
    "sp_group",
    "symplectic_generators",
    "group_order",
    "verify_reduction_surjectivity",
    "ActionData",
    "validate",
    "load_action_file",
    "StrongInvariant",
    "WeakInvariant",
    "induced_form",
    "total_genus",
    "strong_invariant",
    "strongly_equivalent",
    "weak_invariant",
    "weakly_equivalent",
    "canonical_multiset",
    "multiset_signature",
    "signature_hash",
    "construct_action",
    "enumerate_free_classes",
    "enumerate_weak_classes",
    "PermutationCover",
    "MoveOrbit",
    "build_cover",
    "cover_genus",
    "move_orbit",
    "brute_force_classes",
    "cross_validate",
    "is_realizable",
    "random_action_data",
    "SelfCheckRunner",
    "CheckJob",
    "run_selfcheck",
]

# Kept in sync with pyproject.toml by hand
__version__ = "0.1.0"
__all__.append("__version__")
