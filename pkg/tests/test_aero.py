import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flighttrim.aero import (
    AeroModel,
    SymmetryClass,
    bisym_flat_plate,
    check_passivity,
    counterexample_model,
    eval_coeffs,
    sine_stall_model,
    verify_bisymmetry,
    verify_declared_class,
    verify_symmetry,
)
from flighttrim.errors import ModelEvaluationError
from flighttrim.geometry import PI


def test_counterexample_coefficients():
    m = counterexample_model(0.1)
    assert eval_coeffs(m, 0.0) == (0.0, pytest.approx(0.1))
    cl, cd = eval_coeffs(m, PI / 2)
    assert cl == pytest.approx(1.0) and cd == pytest.approx(1.1)
    assert eval_coeffs(m, PI)[0] == 0.0


def test_eval_coeffs_wraps_input():
    m = sine_stall_model()
    assert eval_coeffs(m, 0.3 + 2 * PI) == pytest.approx(eval_coeffs(m, 0.3))


def test_counterexample_is_symmetric_not_bisymmetric():
    m = counterexample_model(0.1)
    assert verify_symmetry(m).passed
    rep = verify_bisymmetry(m)
    assert not rep.passed and rep.symmetric
    assert rep.max_drag_period == pytest.approx(2.0, rel=1e-3)


def test_flat_plate_is_bisymmetric():
    rep = verify_bisymmetry(bisym_flat_plate(0.05, 1.2, 1.0))
    assert rep.passed
    assert rep.max_lift_period <= 1e-15


def test_sine_stall_is_symmetric():
    assert verify_symmetry(sine_stall_model()).passed
    assert not verify_bisymmetry(sine_stall_model()).passed


def test_asymmetric_model_fails():
    cambered = AeroModel(lift=lambda a: 0.2 + np.sin(a), drag=lambda a: 0.1 + 0 * a, ka=1.0)
    rep = verify_symmetry(cambered)
    assert not rep.passed
    assert rep.lift_at_zero == pytest.approx(0.2)
    assert verify_declared_class(cambered) is None


def test_declared_class_dispatch():
    assert verify_declared_class(bisym_flat_plate(0.05, 1, 1)).max_drag_period is not None
    assert verify_declared_class(counterexample_model(0.1)).max_drag_period is None


def test_passivity():
    assert check_passivity(counterexample_model(0.1)).passed
    thrusting = AeroModel(lift=lambda a: 0 * a, drag=lambda a: np.cos(a), ka=1.0)
    rep = check_passivity(thrusting)
    assert not rep.passed
    assert rep.min_drag == pytest.approx(-1.0)
    assert abs(rep.alpha_at_min) == pytest.approx(PI)


def test_non_finite_coefficients_raise():
    bad = AeroModel(lift=lambda a: np.where(np.asarray(a) > 1, np.nan, 0.0), drag=lambda a: 1 + 0 * a, ka=1.0)
    with pytest.raises(ModelEvaluationError):
        bad.coeffs(np.array([0.0, 2.0]))


@pytest.mark.parametrize("ka", [0.0, -1.0, math.inf])
def test_bad_ka(ka):
    with pytest.raises(ValueError):
        counterexample_model(0.1, ka=ka)


def test_bad_preset_parameters():
    with pytest.raises(ValueError):
        counterexample_model(0.0)
    with pytest.raises(ValueError):
        bisym_flat_plate(-0.1, 1, 1)


def test_symmetry_class_is_coerced():
    m = AeroModel(lift=np.sin, drag=lambda a: 1 + 0 * a, ka=1.0, symmetry_class="symmetric")
    assert m.symmetry_class is SymmetryClass.SYMMETRIC


@given(st.floats(-PI, PI), st.floats(0.01, 1), st.floats(0, 3), st.floats(0, 3))
def test_flat_plate_identities(a, c0, c1, c2):
    m = bisym_flat_plate(c0, c1, c2)
    cl, cd = eval_coeffs(m, a)
    cl_m, cd_m = eval_coeffs(m, -a)
    cl_p, cd_p = eval_coeffs(m, a + PI)
    assert cd == pytest.approx(cd_m, abs=1e-12) and cl == pytest.approx(-cl_m, abs=1e-12)
    assert cd == pytest.approx(cd_p, abs=1e-12) and cl == pytest.approx(cl_p, abs=1e-12)
