"""Angle of attack, aerodynamic force and apparent external force.

Conventions
-----------
* Inertial frame {e1, e2}; gravity points along **+e1** (g_vec = g e1), the
  VTOL-style convention. Hovering upright is therefore theta = 0 with the
  body axis i aligned with gravity.
* Thrust acts as ``T_vec = -T i`` so a positive thrust intensity T pushes
  against gravity when hovering at theta = 0.
* ``alpha = theta - gamma + pi - delta`` with gamma the airspeed direction.

All functions accept a scalar ``theta`` or a numpy array of orientations;
the vehicle and flight condition are fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .aero import AeroModel
from .geometry import E1, PI, as_vec2, atan2_angle, wrap


@dataclass(frozen=True)
class VehicleParams:
    mass: float
    gravity: float = 9.81
    delta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if not math.isfinite(self.gravity):
            raise ValueError("gravity must be finite")
        object.__setattr__(self, "delta", wrap(self.delta))


@dataclass(frozen=True)
class FlightCondition:
    """Reference velocity/acceleration and wind at one instant (inertial frame)."""

    v_ref: np.ndarray = field(default_factory=lambda: np.zeros(2))
    a_ref: np.ndarray = field(default_factory=lambda: np.zeros(2))
    v_wind: np.ndarray = field(default_factory=lambda: np.zeros(2))
    time: float = 0.0

    def __post_init__(self):
        for name in ("v_ref", "a_ref", "v_wind"):
            object.__setattr__(self, name, as_vec2(getattr(self, name)))

    def to_dict(self) -> dict:
        return {
            "v_ref": self.v_ref.tolist(),
            "a_ref": self.a_ref.tolist(),
            "v_wind": self.v_wind.tolist(),
            "time": self.time,
        }


@dataclass(frozen=True)
class ForceBreakdown:
    """Forces at one (or many) orientations. ``gamma``/``alpha`` are None at zero airspeed."""

    f_gr: np.ndarray
    f_aero: np.ndarray
    f_total: np.ndarray
    alpha: float | np.ndarray | None
    gamma: float | None
    airspeed: float


def relative_velocity(fc: FlightCondition) -> np.ndarray:
    """Reference velocity relative to the wind."""
    return fc.v_ref - fc.v_wind


def angle_of_attack(theta, gamma: float, delta: float):
    return wrap(np.asarray(theta, dtype=float) - gamma + PI - delta)


def gravito_inertial_force(vp: VehicleParams, fc: FlightCondition) -> np.ndarray:
    """m g e1 - m a_ref."""
    return vp.mass * vp.gravity * E1 - vp.mass * fc.a_ref


def aero_force(model: AeroModel, x_dot_a, theta, delta: float):
    """Aerodynamic force in inertial coordinates.

    Returns ``(force, alpha)``. For an array ``theta`` the force has shape
    ``(len(theta), 2)``. At zero airspeed the force vanishes and alpha is None.
    """
    v = as_vec2(x_dot_a)
    speed = math.hypot(v[0], v[1])
    shape = np.shape(theta)
    if speed == 0.0:
        return np.zeros(shape + (2,)), None
    gamma = atan2_angle(v)
    alpha = angle_of_attack(theta, gamma, delta)
    cl, cd = model.coeffs(alpha)
    sv = np.array([-v[1], v[0]])
    k = model.ka * speed
    force = k * (cl[..., None] * sv - cd[..., None] * v)
    return force, alpha


def aero_force_body(model: AeroModel, airspeed: float, alpha, delta: float) -> np.ndarray:
    """Aerodynamic force in body coordinates, built from the body-frame airspeed.

    The body components of the air velocity are
    ``(-|v| cos(alpha + delta), |v| sin(alpha + delta))``. Rotating the result
    by R(theta) must reproduce :func:`aero_force`.
    """
    alpha = np.asarray(alpha, dtype=float)
    va = airspeed * np.stack([-np.cos(alpha + delta), np.sin(alpha + delta)], axis=-1)
    cl, cd = model.coeffs(wrap(alpha))
    sva = np.stack([-va[..., 1], va[..., 0]], axis=-1)
    return model.ka * airspeed * (cl[..., None] * sva - cd[..., None] * va)


def apparent_force(model: AeroModel, vp: VehicleParams, fc: FlightCondition, theta) -> ForceBreakdown:
    """Apparent external force F = m g e1 + F_a - m a_ref evaluated at the reference."""
    f_gr = gravito_inertial_force(vp, fc)
    v = relative_velocity(fc)
    f_aero, alpha = aero_force(model, v, theta, vp.delta)
    speed = math.hypot(v[0], v[1])
    gamma = atan2_angle(v) if speed > 0 else None
    return ForceBreakdown(
        f_gr=f_gr,
        f_aero=f_aero,
        f_total=f_gr + f_aero,
        alpha=alpha,
        gamma=gamma,
        airspeed=speed,
    )
