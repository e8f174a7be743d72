"""Aerodynamic characteristics c_L(alpha), c_D(alpha) as evaluatable models.

A model bundles the two coefficient laws with ``ka = rho * Sigma / 2`` and a
declared symmetry class. The class is never inferred: constructors declare it
and the checkers below verify it numerically on a uniform grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ModelEvaluationError
from .geometry import PI, sin_wrapped, uniform_circle, wrap

DEFAULT_SAMPLES = 720
ANALYTIC_TOL = 1e-9
TABULATED_TOL = 1e-6


class SymmetryClass(str, enum.Enum):
    GENERIC = "generic"
    SYMMETRIC = "symmetric"
    BISYMMETRIC = "bisymmetric"


@dataclass(frozen=True)
class ModelMetadata:
    rho: float | None = None
    sigma: float | None = None
    reynolds: float | None = None
    mach: float | None = None
    name: str | None = None


@dataclass(frozen=True)
class AeroModel:
    """Lift and drag coefficient laws of one body.

    ``lift`` and ``drag`` take angles of attack in radians (scalar or array,
    canonical in (-pi, pi]) and must accept numpy arrays elementwise.
    """

    lift: Callable
    drag: Callable
    ka: float
    symmetry_class: SymmetryClass = SymmetryClass.GENERIC
    metadata: ModelMetadata = field(default_factory=ModelMetadata)
    tabulated: bool = False
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.ka) and self.ka > 0):
            raise ValueError(f"ka must be positive and finite, got {self.ka!r}")
        object.__setattr__(self, "symmetry_class", SymmetryClass(self.symmetry_class))

    @property
    def name(self) -> str:
        return self.metadata.name or "unnamed"

    @property
    def default_tol(self) -> float:
        return TABULATED_TOL if self.tabulated else ANALYTIC_TOL

    def coeffs(self, alpha):
        """Vectorised (c_L, c_D) at canonical angles of attack."""
        cl = np.asarray(self.lift(alpha), dtype=float)
        cd = np.asarray(self.drag(alpha), dtype=float)
        if not (np.all(np.isfinite(cl)) and np.all(np.isfinite(cd))):
            raise ModelEvaluationError(f"model {self.name!r} returned non-finite coefficients")
        return cl, cd


def eval_coeffs(model: AeroModel, alpha: float) -> tuple[float, float]:
    """Return ``(c_L(alpha), c_D(alpha))`` for one angle of attack."""
    cl, cd = model.coeffs(wrap(alpha))
    return float(cl), float(cd)


def counterexample_model(c0: float, ka: float = 1.0) -> AeroModel:
    """c_L = sin(alpha), c_D = c0 + 1 - cos(alpha): passive, symmetric, not bisymmetric."""
    if not c0 > 0:
        raise ValueError("c0 must be positive")
    return AeroModel(
        lift=sin_wrapped,
        drag=lambda a: c0 + 1.0 - np.cos(a),
        ka=ka,
        symmetry_class=SymmetryClass.SYMMETRIC,
        metadata=ModelMetadata(name=f"counterexample(c0={c0:g})"),
        params={"c0": c0},
    )


def bisym_flat_plate(c0: float, c1: float, c2: float, ka: float = 1.0) -> AeroModel:
    """c_L = c1 sin(a) cos(a), c_D = c0 + c2 sin(a)^2; pi-periodic, odd lift, even drag."""
    if not (c0 > 0 and c1 >= 0 and c2 >= 0):
        raise ValueError("need c0 > 0, c1 >= 0, c2 >= 0")
    return AeroModel(
        lift=lambda a: c1 * sin_wrapped(a) * np.cos(a),
        drag=lambda a: c0 + c2 * sin_wrapped(a) ** 2,
        ka=ka,
        symmetry_class=SymmetryClass.BISYMMETRIC,
        metadata=ModelMetadata(name=f"bisym-flat-plate(c0={c0:g},c1={c1:g},c2={c2:g})"),
        params={"c0": c0, "c1": c1, "c2": c2},
    )


def sine_stall_model(c0: float = 0.01, ka: float = 1.0) -> AeroModel:
    """Synthetic symmetric law c_L = sin(2a), c_D = c0 + 2 sin(a/2)^2."""
    if not c0 > 0:
        raise ValueError("c0 must be positive")
    return AeroModel(
        lift=lambda a: 2.0 * sin_wrapped(a) * np.cos(a),
        drag=lambda a: c0 + 2.0 * np.sin(np.asarray(a) / 2.0) ** 2,
        ka=ka,
        symmetry_class=SymmetryClass.SYMMETRIC,
        metadata=ModelMetadata(name=f"sine-stall(c0={c0:g})"),
        params={"c0": c0},
    )


PRESETS = {
    "counterexample": counterexample_model,
    "bisym-flat-plate": bisym_flat_plate,
    "sine-stall": sine_stall_model,
}


@dataclass(frozen=True)
class SymmetryReport:
    passed: bool
    tol: float
    n_samples: int
    max_drag_parity: float
    max_lift_parity: float
    lift_at_zero: float
    lift_at_pi: float
    worst_alpha: float
    max_drag_period: float | None = None
    max_lift_period: float | None = None
    symmetric: bool | None = None

    @property
    def worst_alpha_deg(self) -> float:
        return math.degrees(self.worst_alpha)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["worst_alpha_deg"] = self.worst_alpha_deg
        return d


def _sample_grid(n_samples: int) -> np.ndarray:
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    return uniform_circle(n_samples)


def verify_symmetry(model: AeroModel, n_samples: int = DEFAULT_SAMPLES, tol: float | None = None) -> SymmetryReport:
    """Check the even-drag / odd-lift identities and c_L(0) = c_L(pi) = 0."""
    tol = model.default_tol if tol is None else tol
    a = _sample_grid(n_samples)
    cl, cd = model.coeffs(a)
    cl_m, cd_m = model.coeffs(wrap(-a))
    dev_d = np.abs(cd - cd_m)
    dev_l = np.abs(cl + cl_m)
    cl0, _ = eval_coeffs(model, 0.0)
    clpi, _ = eval_coeffs(model, PI)
    worst = int(np.argmax(np.maximum(dev_d, dev_l)))
    passed = bool(max(dev_d.max(), dev_l.max(), abs(cl0), abs(clpi)) <= tol)
    return SymmetryReport(
        passed=passed,
        tol=tol,
        n_samples=n_samples,
        max_drag_parity=float(dev_d.max()),
        max_lift_parity=float(dev_l.max()),
        lift_at_zero=abs(cl0),
        lift_at_pi=abs(clpi),
        worst_alpha=float(a[worst]),
    )


def verify_bisymmetry(model: AeroModel, n_samples: int = DEFAULT_SAMPLES, tol: float | None = None) -> SymmetryReport:
    """Check pi-periodicity of both coefficients on top of :func:`verify_symmetry`."""
    sym = verify_symmetry(model, n_samples, tol)
    a = _sample_grid(n_samples)
    cl, cd = model.coeffs(a)
    cl_p, cd_p = model.coeffs(wrap(a + PI))
    dev_d = np.abs(cd - cd_p)
    dev_l = np.abs(cl - cl_p)
    periodic = bool(max(dev_d.max(), dev_l.max()) <= sym.tol)
    worst_alpha = sym.worst_alpha
    if sym.passed:
        worst_alpha = float(a[int(np.argmax(np.maximum(dev_d, dev_l)))])
    return SymmetryReport(
        passed=periodic and sym.passed,
        tol=sym.tol,
        n_samples=n_samples,
        max_drag_parity=sym.max_drag_parity,
        max_lift_parity=sym.max_lift_parity,
        lift_at_zero=sym.lift_at_zero,
        lift_at_pi=sym.lift_at_pi,
        worst_alpha=worst_alpha,
        max_drag_period=float(dev_d.max()),
        max_lift_period=float(dev_l.max()),
        symmetric=sym.passed,
    )


def verify_declared_class(model: AeroModel, n_samples: int = DEFAULT_SAMPLES, tol: float | None = None):
    """Run the checker matching the model's declared class; None for generic models."""
    if model.symmetry_class is SymmetryClass.BISYMMETRIC:
        return verify_bisymmetry(model, n_samples, tol)
    if model.symmetry_class is SymmetryClass.SYMMETRIC:
        return verify_symmetry(model, n_samples, tol)
    return None


@dataclass(frozen=True)
class PassivityReport:
    passed: bool
    min_drag: float
    alpha_at_min: float
    n_samples: int

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "min_drag": self.min_drag,
            "alpha_at_min_deg": math.degrees(self.alpha_at_min),
            "n_samples": self.n_samples,
        }


def check_passivity(model: AeroModel, n_samples: int = DEFAULT_SAMPLES) -> PassivityReport:
    """Passivity of the aerodynamic force.

    The lift term is orthogonal to the airspeed, so ``v_a . F_a`` reduces to
    ``-ka |v_a|^3 c_D(alpha)`` and passivity holds iff c_D is nonnegative.
    """
    a = _sample_grid(n_samples)
    _, cd = model.coeffs(a)
    i = int(np.argmin(cd))
    return PassivityReport(
        passed=bool(cd[i] >= 0.0),
        min_drag=float(cd[i]),
        alpha_at_min=float(a[i]),
        n_samples=n_samples,
    )
