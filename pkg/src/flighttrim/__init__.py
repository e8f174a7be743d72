"""Existence and enumeration of longitudinal trim equilibria for thrust-propelled vehicles."""

from .aero import (
    AeroModel,
    ModelMetadata,
    PassivityReport,
    SymmetryClass,
    SymmetryReport,
    bisym_flat_plate,
    check_passivity,
    counterexample_model,
    eval_coeffs,
    sine_stall_model,
    verify_bisymmetry,
    verify_symmetry,
)
from .config import ScenarioConfig, load_scenario
from .equilibria import (
    Equilibrium,
    EquilibriumFunction,
    EquilibriumSet,
    SolverConfig,
    Transversality,
    equilibrium_thrust,
    f_theta,
    find_equilibria,
    positive_thrust_subset,
    theta_zero,
)
from .errors import (
    CdOrderingError,
    ConfigError,
    ModelEvaluationError,
    ParseError,
    PreconditionError,
    RangeError,
    SymmetryVerificationError,
    TrimError,
    ValidationError,
    ZeroVectorError,
)
from .forces import FlightCondition, VehicleParams, aero_force, apparent_force, gravito_inertial_force
from .geometry import rotation, wrap
from .polar_io import PolarTable, build_model, extend_bisymmetric, extend_symmetric, load_bundled, parse_polar_csv, read_polar
from .theorems import (
    check_stall_condition,
    reproduce_lemma1,
    theorem1_brackets,
    theorem1_suite,
    theorem2_suite,
    thm2_diagnostics,
)

__version__ = "0.1.0"
