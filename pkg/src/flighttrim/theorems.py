"""Mechanical checks of the existence results for longitudinal trim.

* passivity of the aerodynamic force does not imply an equilibrium
  (:func:`reproduce_lemma1` rebuilds the explicit counterexample);
* symmetric shapes with thrust along the symmetry axis have at least two
  equilibria, bisymmetric shapes always have one with nonnegative thrust
  (:func:`theorem1_suite`);
* symmetric shapes meeting the stall condition have an equilibrium for any
  thrust direction (:func:`check_stall_condition`, :func:`thm2_diagnostics`,
  :func:`theorem2_suite`).

The universally quantified claims are falsification-tested on random flight
conditions; one violation fails a suite.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .aero import AeroModel, PassivityReport, SymmetryClass, check_passivity, counterexample_model, verify_bisymmetry, verify_symmetry
from .equilibria import (
    EquilibriumFunction,
    SolverConfig,
    find_equilibria,
    positive_thrust_subset,
    refine_brackets,
    theta_zero,
)
from .errors import CdOrderingError, PreconditionError
from .forces import FlightCondition, VehicleParams, gravito_inertial_force, relative_velocity
from .geometry import PI, atan2_angle, rotation, uniform_circle, wrap

SIN_DELTA_TOL = 1e-12


class Theorem1Item(str, enum.Enum):
    ITEM_I = "item_i"
    ITEM_II = "item_ii"
    NOT_APPLICABLE = "not_applicable"


def check_theorem1_applicability(model: AeroModel, delta: float, n_samples: int = 720, tol: float | None = None) -> Theorem1Item:
    """Which part of the two-equilibria / positive-thrust result covers this model and delta."""
    if model.symmetry_class is SymmetryClass.BISYMMETRIC and verify_bisymmetry(model, n_samples, tol).passed:
        return Theorem1Item.ITEM_II
    if model.symmetry_class is not SymmetryClass.GENERIC and verify_symmetry(model, n_samples, tol).passed:
        if abs(math.sin(delta)) <= SIN_DELTA_TOL:
            return Theorem1Item.ITEM_I
    return Theorem1Item.NOT_APPLICABLE


@dataclass(frozen=True)
class CertifiedBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    root: float | None

    @property
    def certified(self) -> bool:
        return self.root is not None


def theorem1_brackets(model: AeroModel, vp: VehicleParams, fc: FlightCondition, tol: float = 1e-10) -> list[CertifiedBracket]:
    """The two half-turn brackets [t0 - pi, t0] and [t0, t0 + pi] with a refined root in each.

    t0 is the zero-angle-of-attack orientation. At zero airspeed it is
    replaced by a quarter turn past the direction of the gravito-inertial
    force, which puts one of its two zeros in each bracket. Returns an empty
    list when f_t vanishes identically.
    """
    func = EquilibriumFunction(model, vp, fc)
    t0 = theta_zero(fc, vp.delta)
    if t0 is None:
        f_gr = gravito_inertial_force(vp, fc)
        if not np.any(f_gr):
            return []
        t0 = atan2_angle(f_gr) + PI / 2
    out = []
    for lo, hi in ((t0 - PI, t0), (t0, t0 + PI)):
        f_lo, f_hi = func(lo), func(hi)
        root = None
        if f_lo == 0.0:
            root = lo
        elif f_hi == 0.0:
            root = hi
        elif f_lo * f_hi < 0:
            root = float(refine_brackets(func, np.array([lo]), np.array([hi]), np.array([f_lo]), tol)[0])
        out.append(CertifiedBracket(lo, hi, f_lo, f_hi, None if root is None else wrap(root)))
    return out


@dataclass(frozen=True)
class StallConditionReport:
    satisfied: bool
    alpha_s: float | None
    margin: float | None
    cd0: float
    cd_pi: float
    grid: int

    @property
    def alpha_s_deg(self) -> float | None:
        return None if self.alpha_s is None else math.degrees(self.alpha_s)

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "alpha_s_deg": self.alpha_s_deg,
            "margin": self.margin,
            "cd0": self.cd0,
            "cd_pi": self.cd_pi,
            "grid": self.grid,
        }


def check_stall_condition(model: AeroModel, grid: int = 1800) -> StallConditionReport:
    """Smallest alpha_s in (0, pi/2) with c_L > 0 and tan(a) c_L(a) <= c_D(a) - c_D(pi).

    ``grid`` intervals divide (0, pi/2); the default resolves 0.05 deg.
    ``margin`` is the minimum of ``tan(a) c_L(a) - (c_D(a) - c_D(pi))`` over
    grid angles with positive lift, so a nonpositive margin means satisfied.
    """
    if grid < 16:
        raise ValueError("grid must be at least 16")
    _, cd0 = model.coeffs(0.0)
    _, cd_pi = model.coeffs(PI)
    cd0, cd_pi = float(cd0), float(cd_pi)
    if not cd_pi > cd0:
        raise CdOrderingError(f"need c_D(pi) > c_D(0), got c_D(0)={cd0!r}, c_D(pi)={cd_pi!r}")
    a = np.arange(1, grid) * (PI / 2 / grid)
    cl, cd = model.coeffs(a)
    margin = np.tan(a) * cl - (cd - cd_pi)
    lifting = cl > 0
    ok = lifting & (margin <= 0)
    best = float(margin[lifting].min()) if lifting.any() else None
    if ok.any():
        i = int(np.argmax(ok))
        return StallConditionReport(True, float(a[i]), best, cd0, cd_pi, grid)
    return StallConditionReport(False, None, best, cd0, cd_pi, grid)


@dataclass(frozen=True)
class ThmTwoDiagnostics:
    """Quantities of the existence argument for symmetric shapes with sin(delta) != 0.

    With K = ka |v_rw|^2, for any abar
    ``f(t0 - abar) f(t0 + abar) = K^2 (sin^2(delta) delta_a(abar)^2 - lambda_b(abar)^2)``.
    """

    a_t: float
    b_t: float
    theta0: float
    k_scale: float
    delta: float
    cd0: float
    cd_pi: float
    delta_a: Callable = field(repr=False)
    lambda_b: Callable = field(repr=False)
    alpha_s: float | None = None
    alpha_bar_a: float | None = None
    bracket: tuple[float, float] | None = None
    bracket_kind: str | None = None
    grazing: bool = False
    root: float | None = None

    def product_identity_rhs(self, alpha_bar):
        return self.k_scale**2 * (
            math.sin(self.delta) ** 2 * self.delta_a(alpha_bar) ** 2 - self.lambda_b(alpha_bar) ** 2
        )


def thm2_diagnostics(
    model: AeroModel,
    vp: VehicleParams,
    fc: FlightCondition,
    alpha_s: float | None = None,
    tol: float = 1e-10,
) -> ThmTwoDiagnostics:
    """Compute a_t, b_t, Delta_a, Lambda_b and, when possible, a certified root bracket.

    If ``alpha_s`` is None it is taken from :func:`check_stall_condition` when
    the drag ordering allows. The bracket is [t0, t0 + pi] whenever f changes
    sign there, otherwise [t0 - abar, t0 + abar] with Delta_a(abar) = 0
    located between 0 and alpha_s.
    """
    delta = vp.delta
    sd = math.sin(delta)
    if abs(sd) <= SIN_DELTA_TOL:
        raise PreconditionError("sin(delta) == 0: the thrust is along the symmetry axis")
    v = relative_velocity(fc)
    speed2 = float(v @ v)
    if speed2 == 0.0:
        raise PreconditionError("zero relative airspeed: f_t reduces to the gravito-inertial term")
    k = model.ka * speed2
    t0 = theta_zero(fc, delta)
    p = gravito_inertial_force(vp, fc) @ rotation(t0)
    a_t = float(p[1] / (model.ka * sd * speed2))
    b_t = float(p[0] / k)
    cd0 = float(model.coeffs(0.0)[1])
    cd_pi = float(model.coeffs(PI)[1])
    cdelta = math.cos(delta)

    def delta_a(ab):
        cl, cd = model.coeffs(wrap(np.asarray(ab, dtype=float)))
        return (a_t - cd) * np.cos(ab) + cl * np.sin(ab)

    def lambda_b(ab):
        cl, cd = model.coeffs(wrap(np.asarray(ab, dtype=float)))
        return (b_t + cd * cdelta) * np.sin(ab) + cl * np.cos(ab) * cdelta

    if alpha_s is None and cd_pi > cd0:
        alpha_s = check_stall_condition(model).alpha_s

    diag = dict(a_t=a_t, b_t=b_t, theta0=t0, k_scale=k, delta=delta, cd0=cd0, cd_pi=cd_pi,
                delta_a=delta_a, lambda_b=lambda_b, alpha_s=alpha_s)
    func = EquilibriumFunction(model, vp, fc)

    def certify(lo, hi, kind, **extra):
        f_lo, f_hi = func(lo), func(hi)
        if f_lo * f_hi > 0:
            return ThmTwoDiagnostics(**diag, **extra)
        if f_lo == 0.0 or f_hi == 0.0:
            root = lo if f_lo == 0.0 else hi
            return ThmTwoDiagnostics(**diag, **extra, bracket=(lo, hi), bracket_kind=kind, grazing=True, root=wrap(root))
        root = float(refine_brackets(func, np.array([lo]), np.array([hi]), np.array([f_lo]), tol)[0])
        return ThmTwoDiagnostics(**diag, **extra, bracket=(lo, hi), bracket_kind=kind, root=wrap(root))

    if (a_t - cd0) * (cd_pi - a_t) <= 0:
        return certify(t0, t0 + PI, "half_turn")
    if not (cd0 < a_t < cd_pi) or alpha_s is None:
        return ThmTwoDiagnostics(**diag)
    d_s = float(delta_a(alpha_s))
    if d_s > 0:
        return ThmTwoDiagnostics(**diag)
    if d_s == 0.0:
        ab = float(alpha_s)
    else:
        ab = float(refine_brackets(delta_a, np.array([0.0]), np.array([alpha_s]), np.array([a_t - cd0]), tol)[0])
    res = certify(t0 - ab, t0 + ab, "stall", alpha_bar_a=ab)
    if d_s == 0.0 and res.bracket is not None:
        res = dataclasses.replace(res, grazing=True)
    return res


@dataclass(frozen=True)
class Lemma1Report:
    c0: float
    ka: float
    mass: float
    gravity: float
    delta: float
    samples: int
    f_max: float
    f_min: float
    max_dev_from_one: float
    equilibrium_count: int
    continuum: bool
    passivity: PassivityReport

    @property
    def reproduced(self) -> bool:
        return self.equilibrium_count == 0 and not self.continuum and self.passivity.passed

    def to_dict(self) -> dict:
        return {
            "check": "lemma1",
            "satisfied": self.reproduced,
            "c0": self.c0,
            "ka": self.ka,
            "mass": self.mass,
            "gravity": self.gravity,
            "delta_deg": math.degrees(self.delta),
            "samples": self.samples,
            "f_max": self.f_max,
            "f_min": self.f_min,
            "max_dev_from_one": self.max_dev_from_one,
            "equilibrium_count": self.equilibrium_count,
            "continuum": self.continuum,
            "passivity": self.passivity.to_dict(),
        }


def lemma1_setup(c0: float = 0.1, ka: float = 1.0, m: float = 1.0, g: float = 9.81, delta: float = PI / 2, a_ref=None):
    """Model, vehicle and flight condition of the passive counterexample.

    Relative airspeed (0, 1/sqrt(ka)) points along e2 with ka |v|^2 = 1, and
    a_ref = (g, -(c0 + 1)/m) makes the gravito-inertial force (0, c0 + 1).
    """
    if not (c0 > 0 and ka > 0):
        raise ValueError("c0 and ka must be positive")
    model = counterexample_model(c0, ka)
    vp = VehicleParams(mass=m, gravity=g, delta=delta)
    if a_ref is None:
        a_ref = (g, -(c0 + 1.0) / m)
    fc = FlightCondition(v_ref=(0.0, 1.0 / math.sqrt(ka)), a_ref=a_ref, v_wind=(0.0, 0.0))
    return model, vp, fc


def reproduce_lemma1(
    c0: float = 0.1,
    ka: float = 1.0,
    m: float = 1.0,
    g: float = 9.81,
    delta: float = PI / 2,
    a_ref=None,
    samples: int = 3600,
    cfg: SolverConfig | None = None,
) -> Lemma1Report:
    """Evaluate f_t of the counterexample over the circle and run the solver on it."""
    model, vp, fc = lemma1_setup(c0, ka, m, g, delta, a_ref)
    f = EquilibriumFunction(model, vp, fc)(uniform_circle(samples))
    eqs = find_equilibria(model, vp, fc, cfg)
    return Lemma1Report(
        c0=c0,
        ka=ka,
        mass=m,
        gravity=g,
        delta=vp.delta,
        samples=samples,
        f_max=float(f.max()),
        f_min=float(f.min()),
        max_dev_from_one=float(np.max(np.abs(f - 1.0))),
        equilibrium_count=len(eqs),
        continuum=eqs.continuum,
        passivity=check_passivity(model),
    )


def sample_flight_condition(
    rng: np.random.Generator,
    max_speed: float = 30.0,
    max_wind: float = 10.0,
    accel_bound: float = 2 * 9.81,
) -> FlightCondition:
    """Reference speed U[0, max_speed], wind speed U[0, max_wind], uniform directions,
    acceleration components U[-accel_bound, accel_bound]."""
    s, ps = rng.uniform(0, max_speed), rng.uniform(-PI, PI)
    w, pw = rng.uniform(0, max_wind), rng.uniform(-PI, PI)
    a = rng.uniform(-accel_bound, accel_bound, size=2)
    return FlightCondition(
        v_ref=(s * math.cos(ps), s * math.sin(ps)),
        a_ref=a,
        v_wind=(w * math.cos(pw), w * math.sin(pw)),
    )


@dataclass
class SuiteReport:
    check: str
    model: str
    scenario_count: int = 0
    failures: int = 0
    worst_case: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.scenario_count > 0 and self.failures == 0

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "model": self.model,
            "satisfied": self.satisfied,
            "scenario_count": self.scenario_count,
            "failures": self.failures,
            "worst_case": self.worst_case,
            "notes": list(self.notes),
        }
        d.update(self.extra)
        return d


def _arc_offsets(thetas, t0):
    return np.array([wrap(t - t0) for t in thetas])


def _covers_both_half_turns(eqs, t0) -> bool:
    """True if distinct transversal roots lie in [t0 - pi, t0] and [t0, t0 + pi]."""
    d = _arc_offsets([r.theta_e for r in eqs.transversal], t0)
    lower = np.flatnonzero((d <= 0) | (d == PI))
    upper = np.flatnonzero(d >= 0)
    return any(i != j for i in lower for j in upper)


def antisymmetry_residual(func: EquilibriumFunction, thetas) -> float:
    """max |f(t + pi) + f(t)| relative to the size of the terms that make up f."""
    thetas = np.asarray(thetas, dtype=float)
    f0, f1 = func(thetas), func(thetas + PI)
    scale = float(np.linalg.norm(func.f_gr))
    if func.gamma is not None:
        cl, cd = func.model.coeffs(func._alpha(thetas))
        scale = scale + func.model.ka * func.airspeed**2 * (np.abs(cl) + np.abs(cd))
    scale = np.maximum(scale, np.finfo(float).tiny)
    return float(np.max(np.abs(f0 + f1) / scale))


def theorem1_suite(
    model: AeroModel,
    vp: VehicleParams,
    n: int,
    rng: np.random.Generator,
    deltas=None,
    cfg: SolverConfig | None = None,
    theta_probes: int = 100,
) -> SuiteReport:
    """Falsification run of the symmetric / bisymmetric existence result.

    Each delta in ``deltas`` (default: the vehicle's own) gets ``n`` random
    flight conditions. Item i requires at least two transversal equilibria,
    one in each half-turn around t0; item ii requires a nonnegative-thrust
    equilibrium and f(t + pi) = -f(t).
    """
    deltas = [vp.delta] if deltas is None else list(deltas)
    rep = SuiteReport(check="theorem1", model=model.name)
    min_count, worst_resid, min_pos = None, 0.0, None
    items = set()
    for delta in deltas:
        v = dataclasses.replace(vp, delta=delta)
        item = check_theorem1_applicability(model, v.delta)
        items.add(item.value)
        if item is Theorem1Item.NOT_APPLICABLE:
            rep.notes.append(f"not applicable at delta={math.degrees(v.delta):.6g} deg")
            rep.failures += 1
            continue
        for _ in range(n):
            fc = sample_flight_condition(rng, accel_bound=2 * abs(vp.gravity))
            eqs = find_equilibria(model, v, fc, cfg)
            rep.scenario_count += 1
            ok = True
            if eqs.continuum:
                pass
            elif item is Theorem1Item.ITEM_I:
                brackets = theorem1_brackets(model, v, fc)
                t0 = theta_zero(fc, v.delta)
                cnt = len(eqs.transversal)
                ok = all(b.certified for b in brackets) and cnt >= 2
                if t0 is not None:
                    ok = ok and _covers_both_half_turns(eqs, t0)
                if min_count is None or cnt < min_count:
                    min_count = cnt
                    rep.worst_case = {"transversal_roots": cnt, "delta_deg": math.degrees(v.delta), "condition": fc.to_dict()}
            else:
                func = EquilibriumFunction(model, v, fc)
                resid = antisymmetry_residual(func, rng.uniform(-PI, PI, size=theta_probes))
                pos = len(positive_thrust_subset(eqs))
                ok = pos >= 1 and resid <= 1e-11
                worst_resid = max(worst_resid, resid)
                if min_pos is None or pos < min_pos:
                    min_pos = pos
                    rep.worst_case = {"positive_thrust_roots": pos, "delta_deg": math.degrees(v.delta), "condition": fc.to_dict()}
            if not ok:
                rep.failures += 1
    rep.extra["items"] = sorted(items)
    if "item_ii" in items:
        rep.worst_case["max_antisymmetry_residual"] = worst_resid
    return rep


def delta_grid(count: int = 36) -> np.ndarray:
    return uniform_circle(count)


def theorem2_suite(
    model: AeroModel,
    vp: VehicleParams,
    n: int,
    rng: np.random.Generator,
    deltas=None,
    cfg: SolverConfig | None = None,
) -> SuiteReport:
    """Falsification run of the stall-condition existence result.

    ``deltas`` defaults to 36 evenly spaced thrust offsets, cycled over the
    ``n`` scenarios; pass an array of length ``n`` to pair each scenario with
    its own offset.
    """
    rep = SuiteReport(check="theorem2", model=model.name)
    sym = verify_symmetry(model)
    if model.symmetry_class is SymmetryClass.GENERIC or not sym.passed:
        rep.notes.append("model is not verified symmetric")
        rep.failures += 1
        return rep
    stall = check_stall_condition(model)
    rep.extra.update(alpha_s_deg=stall.alpha_s_deg, margin=stall.margin)
    if not stall.satisfied:
        rep.notes.append("stall condition not satisfied; nothing is claimed")
        rep.failures += 1
        return rep
    deltas = delta_grid() if deltas is None else np.asarray(deltas, dtype=float)
    min_count = None
    for i in range(n):
        v = dataclasses.replace(vp, delta=float(deltas[i % len(deltas)]))
        fc = sample_flight_condition(rng, accel_bound=2 * abs(vp.gravity))
        eqs = find_equilibria(model, v, fc, cfg)
        rep.scenario_count += 1
        ok = eqs.exists
        if abs(math.sin(v.delta)) > SIN_DELTA_TOL and theta_zero(fc, v.delta) is not None:
            diag = thm2_diagnostics(model, v, fc, alpha_s=stall.alpha_s)
            if diag.bracket is None:
                ok = False
                rep.notes.append(f"no certified bracket at scenario {i}")
            elif diag.grazing:
                rep.notes.append(f"grazing bracket endpoint at scenario {i}")
        cnt = len(eqs)
        if min_count is None or cnt < min_count:
            min_count = cnt
            rep.worst_case = {"roots": cnt, "delta_deg": math.degrees(v.delta), "condition": fc.to_dict()}
        if not ok:
            rep.failures += 1
    return rep
