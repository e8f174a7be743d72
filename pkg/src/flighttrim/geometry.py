"""Planar vectors, rotations and angle arithmetic.

Angles are radians everywhere inside the package. The canonical
representative of an angle is taken in the half-open interval (-pi, pi].
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ZeroVectorError

PI = math.pi
TWO_PI = 2.0 * math.pi

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])

# R(pi/2): rotates a vector by 90 degrees anticlockwise.
S = np.array([[0.0, -1.0], [1.0, 0.0]])


def vec2(x1, x2) -> np.ndarray:
    """Build a finite planar vector."""
    v = np.array([x1, x2], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector components must be finite, got {v!r}")
    return v


def as_vec2(v) -> np.ndarray:
    """Coerce a length-2 sequence to a finite float vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {arr.shape}")
    return vec2(arr[0], arr[1])


def rotation(theta: float) -> np.ndarray:
    """Rotation matrix R(theta); its columns are the body axes in the inertial frame."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def wrap(theta):
    """Map an angle (scalar or array) to (-pi, pi].

    The reduction uses ``fmod`` and two Sterbenz-exact corrections, so the
    result equals ``theta`` modulo the float value of 2*pi without rounding.
    """
    if np.ndim(theta) == 0:
        x = float(theta)
        if not math.isfinite(x):
            raise ValueError(f"cannot wrap non-finite angle {theta!r}")
        r = math.fmod(x, TWO_PI)
        if r > PI:
            r -= TWO_PI
        elif r <= -PI:
            r += TWO_PI
        return r
    x = np.asarray(theta, dtype=float)
    if not np.isfinite(x).all():
        raise ValueError("cannot wrap non-finite angles")
    r = np.fmod(x, TWO_PI)
    # adding or subtracting 0.0 leaves r untouched
    return r - TWO_PI * (r > PI) + TWO_PI * (r <= -PI)


def atan2_angle(v) -> float:
    """Direction of ``v`` measured from e1, in (-pi, pi]."""
    x1, x2 = float(v[0]), float(v[1])
    if x1 == 0.0 and x2 == 0.0:
        raise ZeroVectorError("direction of the zero vector is undefined")
    return wrap(math.atan2(x2, x1))


def sin_wrapped(alpha):
    """sin(alpha) for alpha in [-pi, pi], evaluated so that sin(+-pi) == 0 exactly.

    For |alpha| > pi/2 the argument is reflected through +-pi, which is exact
    in floating point, so the float value of pi behaves as a true zero of sine.
    """
    a = np.asarray(alpha, dtype=float)
    r = np.where(np.abs(a) > PI / 2, np.copysign(PI, a) - a, a)
    out = np.sin(r)
    return float(out) if out.ndim == 0 else out


def circular_distance(a, b):
    """Smallest absolute angular separation between ``a`` and ``b``."""
    return np.abs(wrap(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))


def uniform_circle(n: int) -> np.ndarray:
    """``n`` equally spaced angles covering (-pi, pi], the last one being pi."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.linspace(-PI, PI, n + 1)[1:]
