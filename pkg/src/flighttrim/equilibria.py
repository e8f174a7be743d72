"""Equilibrium orientations: zeros of f_t(theta) = F(theta) . j(theta) on the circle.

The solver scans f_t on a uniform grid, shrinks every sign-change bracket
below ``theta_tol`` and inspects local minima of |f_t| for tangential
(grazing) zeros or pairs of roots hidden inside a single grid cell.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .aero import AeroModel
from .forces import FlightCondition, VehicleParams, gravito_inertial_force, relative_velocity
from .geometry import PI, TWO_PI, atan2_angle, circular_distance, uniform_circle, wrap


class Transversality(str, enum.Enum):
    SIGN_CHANGE = "sign_change"
    GRAZING = "grazing"


@dataclass(frozen=True)
class SolverConfig:
    """Root-finding settings.

    ``grazing_tol`` and ``root_tol`` are relative to ``1 + max|f_t|`` over the
    scan, ``continuum_tol`` is relative to the weight ``m g``.
    """

    scan_points: int = 3600
    theta_tol: float = 1e-10
    grazing_tol: float = 1e-7
    continuum_tol: float = 1e-9
    root_tol: float = 1e-7
    merge_tol: float = 1e-6

    def __post_init__(self):
        if self.scan_points < 8:
            raise ValueError("scan_points must be at least 8")
        for name in ("theta_tol", "grazing_tol", "continuum_tol", "root_tol", "merge_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SolverConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown solver settings: {sorted(unknown)}")
        return cls(**d)


class EquilibriumFunction:
    """f_t and the thrust T(theta) for one model, vehicle and flight condition."""

    def __init__(self, model: AeroModel, vp: VehicleParams, fc: FlightCondition):
        self.model = model
        self.vp = vp
        self.fc = fc
        self.f_gr = gravito_inertial_force(vp, fc)
        self.v_rw = relative_velocity(fc)
        self.airspeed = math.hypot(self.v_rw[0], self.v_rw[1])
        self.gamma = atan2_angle(self.v_rw) if self.airspeed > 0 else None

    def force(self, theta):
        """Apparent force rows F(theta), shape ``theta.shape + (2,)``."""
        theta = np.asarray(theta, dtype=float)
        if self.gamma is None:
            return np.broadcast_to(self.f_gr, theta.shape + (2,)).copy()
        alpha = wrap(theta - self.gamma + PI - self.vp.delta)
        cl, cd = self.model.coeffs(alpha)
        v = self.v_rw
        k = self.model.ka * self.airspeed
        f1 = self.f_gr[0] + k * (-cl * v[1] - cd * v[0])
        f2 = self.f_gr[1] + k * (cl * v[0] - cd * v[1])
        return np.stack([f1, f2], axis=-1)

    def __call__(self, theta):
        theta_arr = np.asarray(theta, dtype=float)
        out = self._raw(theta_arr)
        if not np.all(np.isfinite(out)):
            self.model.coeffs(self._alpha(theta_arr))  # raises ModelEvaluationError
        return float(out) if out.ndim == 0 else out

    def _alpha(self, theta):
        return wrap(theta - self.gamma + PI - self.vp.delta)

    def _raw(self, theta):
        # f = F . (-sin, cos) expanded so the hot loop stays a handful of ufuncs
        s, c = np.sin(theta), np.cos(theta)
        out = self.f_gr[1] * c - self.f_gr[0] * s
        if self.gamma is None:
            return out
        alpha = self._alpha(theta)
        cl = np.asarray(self.model.lift(alpha), dtype=float)
        cd = np.asarray(self.model.drag(alpha), dtype=float)
        k = self.model.ka * self.airspeed
        v1, v2 = self.v_rw
        return out + k * (cl * (v2 * s + v1 * c) + cd * (v1 * s - v2 * c))

    def thrust(self, theta):
        theta_arr = np.asarray(theta, dtype=float)
        f = self.force(theta_arr)
        out = f[..., 0] * np.cos(theta_arr) + f[..., 1] * np.sin(theta_arr)
        return float(out) if out.ndim == 0 else out


def f_theta(model: AeroModel, vp: VehicleParams, fc: FlightCondition, theta):
    """f_t(theta) = F^T R(theta) e2; zero exactly at equilibrium orientations."""
    return EquilibriumFunction(model, vp, fc)(theta)


def equilibrium_thrust(model: AeroModel, vp: VehicleParams, fc: FlightCondition, theta):
    """Thrust intensity F^T R(theta) e1 that balances the apparent force at ``theta``."""
    return EquilibriumFunction(model, vp, fc).thrust(theta)


def theta_zero(fc: FlightCondition, delta: float) -> float | None:
    """Orientation with zero angle of attack at the reference; None at zero airspeed."""
    v = relative_velocity(fc)
    if v[0] == 0.0 and v[1] == 0.0:
        return None
    return wrap(atan2_angle(v) - PI + delta)


@dataclass(frozen=True)
class Equilibrium:
    theta_e: float
    thrust: float
    transversality: Transversality
    bracket: tuple[float, float]
    residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "theta_deg": math.degrees(self.theta_e),
            "thrust_N": self.thrust,
            "transversality": self.transversality.value,
        }


@dataclass(frozen=True)
class EquilibriumSet:
    roots: tuple[Equilibrium, ...] = ()
    continuum: bool = False
    scan: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([r.theta_e for r in self.roots])

    @property
    def transversal(self) -> tuple[Equilibrium, ...]:
        return tuple(r for r in self.roots if r.transversality is Transversality.SIGN_CHANGE)

    @property
    def exists(self) -> bool:
        return self.continuum or bool(self.roots)


def refine_brackets(func, lo: np.ndarray, hi: np.ndarray, flo: np.ndarray, tol: float) -> np.ndarray:
    """Shrink sign-change brackets until they are at most ``tol`` wide.

    Each round tries the false-position point c and probes c - h and c + h in
    one vectorised call, with h a thousandth of the bracket (never below
    0.45 tol). When the probes straddle the root the bracket collapses to
    width 2h, so smooth roots take three or four rounds. Rounds that fail
    to halve a bracket are followed by a plain bisection step, so the worst
    case stays that of bisection.
    """
    lo, hi, flo = lo.astype(float), hi.astype(float), flo.astype(float)
    if lo.size == 0:
        return lo
    fhi = np.atleast_1d(func(hi)).astype(float)
    eps = 0.45 * tol
    active = (hi - lo) > tol
    bisect_next = np.zeros(lo.shape, dtype=bool)
    for _ in range(200):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        a, b, fa, fb = lo[idx], hi[idx], flo[idx], fhi[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            c = a - fa * (b - a) / (fb - fa)
        c = np.where(bisect_next[idx] | ~np.isfinite(c), 0.5 * (a + b), c)
        h = np.maximum(eps, 1e-3 * (b - a))
        c = np.clip(c, a + h, b - h)
        p1, p2 = c - h, c + h
        fp = np.atleast_1d(func(np.concatenate([p1, p2])))
        f1, f2 = fp[: idx.size], fp[idx.size :]
        width = b - a
        left = np.sign(f1) != np.sign(fa)
        mid = ~left & (np.sign(f2) != np.sign(f1))
        right = ~left & ~mid
        na = np.where(left, a, np.where(mid, p1, p2))
        nb = np.where(left, p1, np.where(mid, p2, b))
        nfa = np.where(left, fa, np.where(mid, f1, f2))
        nfb = np.where(left, f1, np.where(mid, f2, fb))
        # exact zeros collapse the bracket onto the probe
        z1, z2 = f1 == 0.0, f2 == 0.0
        na = np.where(z1, p1, np.where(z2, p2, na))
        nb = np.where(z1, p1, np.where(z2, p2, nb))
        lo[idx], hi[idx], flo[idx], fhi[idx] = na, nb, nfa, nfb
        bisect_next[idx] = (nb - na) > 0.5 * width
        active[idx] = (nb - na) > tol
    return 0.5 * (lo + hi)


def _scan_nodes(n: int, anchors) -> np.ndarray:
    nodes = uniform_circle(n)
    if anchors:
        nodes = np.union1d(nodes, wrap(np.asarray(anchors, dtype=float)))
    return nodes


def find_equilibria(
    model: AeroModel,
    vp: VehicleParams,
    fc: FlightCondition,
    cfg: SolverConfig | None = None,
    keep_scan: bool = False,
) -> EquilibriumSet:
    """All equilibrium orientations at one instant.

    The uniform scan is augmented with the zero-angle-of-attack orientation
    theta0 and theta0 + pi, where f_t often changes sign.
    """
    cfg = cfg or SolverConfig()
    func = EquilibriumFunction(model, vp, fc)
    t0 = theta_zero(fc, vp.delta)
    nodes = _scan_nodes(cfg.scan_points, [] if t0 is None else [t0, t0 + PI])
    vals = func(nodes)
    fmax = float(np.max(np.abs(vals)))
    weight = vp.mass * abs(vp.gravity) or vp.mass
    scan = (nodes, vals) if keep_scan else None
    if fmax <= cfg.continuum_tol * weight:
        return EquilibriumSet(roots=(), continuum=True, scan=scan)

    scale = 1.0 + fmax
    n = nodes.size
    # cell i spans nodes[i] -> nodes[i+1], the last one wraps through pi
    right = np.append(nodes[1:], nodes[0] + TWO_PI)
    vr = np.roll(vals, -1)
    found: list[tuple[float, Transversality, tuple[float, float]]] = []

    for i in np.flatnonzero(vals == 0.0):
        prev, nxt = vals[i - 1], vals[(i + 1) % n]
        kind = Transversality.SIGN_CHANGE if prev * nxt < 0 else Transversality.GRAZING
        found.append((float(nodes[i]), kind, (float(nodes[i - 1]), float(nodes[(i + 1) % n]))))

    cells = np.flatnonzero(vals * vr < 0)
    roots = refine_brackets(func, nodes[cells], right[cells], vals[cells], cfg.theta_tol)
    for c, r in zip(cells, roots):
        found.append((float(r), Transversality.SIGN_CHANGE, (float(nodes[c]), float(right[c]))))

    found.extend(_inspect_minima(func, nodes, vals, scale, cfg))

    merged = _merge(found, cfg.merge_tol)
    if merged:
        thetas = np.array([m[0] for m in merged])
        thrusts = np.atleast_1d(func.thrust(thetas))
        resid = np.atleast_1d(np.abs(func(thetas)))
    eqs = tuple(
        Equilibrium(
            theta_e=m[0],
            thrust=float(thrusts[k]),
            transversality=m[1],
            bracket=(wrap(m[2][0]), wrap(m[2][1])),
            residual=float(resid[k]),
        )
        for k, m in enumerate(merged)
    )
    return EquilibriumSet(roots=eqs, continuum=False, scan=scan)


def _inspect_minima(func, nodes, vals, scale, cfg):
    """Refine local minima of |f| that show no sign change on the grid."""
    n = nodes.size
    a = np.abs(vals)
    prev, nxt = np.roll(vals, 1), np.roll(vals, -1)
    cand = (
        (a <= np.abs(prev))
        & (a <= np.abs(nxt))
        & (vals * prev > 0)
        & (vals * nxt > 0)
        & (a <= 1e-2 * scale)
    )
    out = []
    for i in np.flatnonzero(cand):
        lo = nodes[i - 1] if i > 0 else nodes[-1] - TWO_PI
        hi = nodes[i + 1] if i + 1 < n else nodes[0] + TWO_PI
        s = math.copysign(1.0, vals[i])
        res = minimize_scalar(
            lambda t: s * func(t), bounds=(lo, hi), method="bounded", options={"xatol": cfg.theta_tol}
        )
        t_star, f_star = float(res.x), s * float(res.fun)
        if f_star * s < 0:
            # two transversal roots hidden inside the cell pair
            for a_, b_ in ((lo, t_star), (t_star, hi)):
                fa = func(a_)
                r = refine_brackets(func, np.array([a_]), np.array([b_]), np.array([fa]), cfg.theta_tol)[0]
                out.append((float(r), Transversality.SIGN_CHANGE, (float(a_), float(b_))))
        elif abs(f_star) <= cfg.grazing_tol * scale:
            out.append((t_star, Transversality.GRAZING, (float(lo), float(hi))))
    return out


def _merge(found, tol):
    items = sorted(((wrap(t), k, b) for t, k, b in found), key=lambda x: x[0])
    merged: list = []
    for t, k, b in items:
        if merged and circular_distance(t, merged[-1][0]) <= tol:
            if merged[-1][1] is Transversality.GRAZING and k is Transversality.SIGN_CHANGE:
                merged[-1] = (t, k, b)
            continue
        merged.append((t, k, b))
    if len(merged) > 1 and circular_distance(merged[0][0], merged[-1][0]) <= tol:
        first, last = merged[0], merged.pop()
        if first[1] is Transversality.GRAZING and last[1] is Transversality.SIGN_CHANGE:
            merged[0] = last
            merged.sort(key=lambda x: x[0])
    return merged


def positive_thrust_subset(eqs: EquilibriumSet) -> EquilibriumSet:
    """Equilibria whose thrust intensity is nonnegative."""
    return EquilibriumSet(
        roots=tuple(r for r in eqs.roots if r.thrust >= 0.0),
        continuum=eqs.continuum,
        scan=eqs.scan,
    )
