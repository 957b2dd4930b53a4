"""Logical qubits in deformed and undeformed bosonic cat states under amplitude damping."""

__version__ = "0.1.0"

from .cat import (
    CatDiagnostics,
    LogicalBasis,
    build_logical_basis,
    delta,
    diagnose,
    find_xi_star,
    separation_d,
    sweep_xi,
)
from .channel import (
    KrausSet,
    apply_channel,
    fidelity_curve,
    fidelity_direct,
    fidelity_series,
    kraus_set,
)
from .deformation import (
    DeformationSpec,
    coherent_coefficients,
    deformed_annihilation,
    deformed_factorial_log,
    exp_f,
    f_value,
    laguerre,
    validate_on_space,
)
from .errors import (
    CatQubitError,
    InvariantError,
    NonConvergence,
    NonPositive,
    ParameterError,
    TailTooHeavy,
    ZeroDenominator,
)
from .fock import (
    DensityMatrix,
    FockSpace,
    FockVector,
    ladder_matrices,
    outer,
    tensor,
    trace_product,
)
from .gates import (
    CpsParams,
    RotationParams,
    cps_apply,
    cps_truth_table,
    logical_action,
    rotation_exact,
    rotation_split,
)
