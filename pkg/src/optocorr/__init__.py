"""Steady-state quantum correlations of a two-cavity optomechanical system
driven by two-mode squeezed light.

The pipeline: ModelParams -> drift/diffusion matrices -> steady-state
covariance (Lyapunov solve) -> per-pair entanglement (Simon criterion,
eta minus < 1/2) and Gaussian quantum discord. Sweep presets reproduce the
published parameter scans as CSV.
"""

from .errors import (
    DegenerateMeasuredMode,
    DomainError,
    InvalidSpec,
    NonPhysicalInput,
    NotBracketed,
    OptocorrError,
    ParseError,
    SingularSystem,
    ToleranceNotMet,
    UnitError,
    UnknownKey,
    UnknownPreset,
    UnstableDrift,
    UnstablePoint,
)
from .gaussian import (
    PAIR_LABELS,
    PairCM,
    PairInvariants,
    check_physical,
    entropy_f,
    gaussian_discord,
    nu_symplectic,
    pair_invariants,
    simon_eta_minus,
    symplectic_eigenvalues,
)
from .model import (
    C_LIGHT,
    HBAR,
    KB,
    ModelParams,
    PhysicalParams,
    build_diffusion,
    build_drift,
    cooperativity,
    is_stable,
    model_params_from_physical,
    squeeze_moments,
    steady_state,
    temperature_for_occupancy,
    thermal_occupancy,
)
from .steadystate import (
    LyapunovProblem,
    integrate_covariance,
    reduce_pair,
    solve_lyapunov,
)
from .sweeps import (
    CSV_HEADER,
    PRESET_C1_VALUES,
    PRESET_NAMES,
    PRESET_R_VALUES,
    SWEEP_VARIABLES,
    CorrelationReport,
    SweepSpec,
    evaluate_point,
    figure_preset,
    find_threshold,
    run_sweep,
    spec_meta,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "OptocorrError", "ParseError", "UnitError", "UnknownKey", "InvalidSpec",
    "UnknownPreset", "NonPhysicalInput", "DomainError",
    "DegenerateMeasuredMode", "UnstableDrift", "SingularSystem",
    "ToleranceNotMet", "NotBracketed", "UnstablePoint",
    # gaussian
    "PAIR_LABELS", "PairCM", "PairInvariants", "pair_invariants",
    "simon_eta_minus", "entropy_f", "nu_symplectic", "gaussian_discord",
    "symplectic_eigenvalues", "check_physical",
    # model
    "HBAR", "KB", "C_LIGHT",
    "ModelParams", "PhysicalParams", "thermal_occupancy",
    "temperature_for_occupancy", "squeeze_moments", "cooperativity",
    "steady_state", "build_drift", "build_diffusion", "is_stable",
    "model_params_from_physical",
    # steady state
    "LyapunovProblem", "solve_lyapunov", "integrate_covariance", "reduce_pair",
    # sweeps
    "SWEEP_VARIABLES", "PRESET_NAMES", "PRESET_R_VALUES", "PRESET_C1_VALUES",
    "SweepSpec", "CorrelationReport", "evaluate_point", "run_sweep",
    "figure_preset", "find_threshold", "write_csv", "spec_meta", "CSV_HEADER",
]
