"""Dyadic Green's tensor of free space and of a perfectly reflecting plate.

The plate is the plane z = 0. Its scattering part is the free-space tensor
evaluated at the image of the source point, right-multiplied by the
reflection matrix diag(-1, -1, 1).

The delta-function contact term of the free-space tensor is real and only
supported at zero separation, so it never enters an imaginary part and is
not represented here.
"""

from __future__ import annotations

import math

import numpy as np

from .model import (
    CONSTANTS,
    DipoleVector,
    DomainError,
    Environment,
    Position3,
    check_above_mirror,
    check_frequency,
)

#: Separations below this are refused by :func:`free_space_green`.
MIN_SEPARATION = 1e-15

#: Below this value of k*rho the imaginary part is taken from its Taylor series.
SERIES_THRESHOLD = 1e-2

_REFLECTION = np.diag([-1.0, -1.0, 1.0])


def reflection_matrix() -> np.ndarray:
    return _REFLECTION.copy()


def image_position(r) -> Position3:
    """Mirror image (x, y, -z) of a point above the plate."""
    r = check_above_mirror(Position3.of(r), "source position")
    return Position3(r.x, r.y, -r.z)


def image_dipole(d) -> DipoleVector:
    """Image dipole R.d: lateral components flip, the normal one is kept."""
    d = DipoleVector.of(d)
    return DipoleVector(-d.dx, -d.dy, d.dz)


def _separation(r, rp):
    rho_vec = Position3.of(r).as_array() - Position3.of(rp).as_array()
    return rho_vec, float(np.linalg.norm(rho_vec))


def _im_series(x: float) -> tuple[float, float]:
    # Im G0 = (k/6pi) [a I + b ee]; truncation error < 1e-20 for x < 1e-2
    x2 = x * x
    a = 1.0 + x2 * (-1.0 / 5.0 + x2 * (3.0 / 280.0 - x2 / 3780.0))
    b = x2 * (1.0 / 10.0 + x2 * (-1.0 / 140.0 + x2 / 5040.0))
    return a, b


def _im_direct(x: float) -> tuple[float, float]:
    s, c = math.sin(x), math.cos(x)
    x3 = x * x * x
    a = 1.5 * (s / x + c / (x * x) - s / x3)
    b = 1.5 * (3.0 * s / x3 - 3.0 * c / (x * x) - s / x)
    return a, b


def _im_coefficients(x: float) -> tuple[float, float]:
    if x < SERIES_THRESHOLD:
        return _im_series(x)
    return _im_direct(x)


def im_free_space_green(r, rp, omega: float) -> np.ndarray:
    """Imaginary part of the free-space Green's tensor, 1/m.

    Finite for every pair of points, including ``r == rp`` where it equals
    ``omega/(6 pi c)`` times the identity. Small separations use the Taylor
    expansion in ``k rho`` to avoid cancellation.
    """
    omega = check_frequency(omega)
    k = omega / CONSTANTS.c
    rho_vec, rho = _separation(r, rp)
    scale = k / (6.0 * math.pi)
    if rho == 0.0:
        return scale * np.eye(3)
    a, b = _im_coefficients(k * rho)
    e = rho_vec / rho
    return scale * (a * np.eye(3) + b * np.outer(e, e))


def free_space_green(r, rp, omega: float) -> np.ndarray:
    """Free-space Green's tensor G0(r, rp, omega) for distinct points.

    Returns a complex 3x3 array in 1/m. The real part follows the closed
    form directly; the imaginary part goes through the cancellation-free
    evaluator shared with :func:`im_free_space_green`.
    """
    omega = check_frequency(omega)
    rho_vec, rho = _separation(r, rp)
    if rho < MIN_SEPARATION:
        raise DomainError(
            f"points closer than {MIN_SEPARATION} m; use im_free_space_green for the coincidence limit"
        )
    k = omega / CONSTANTS.c
    x = k * rho
    e = rho_vec / rho
    ee = np.outer(e, e)
    # -(c^2 / 4 pi w^2 rho^3) = -1 / (4 pi k^2 rho^3)
    pref = -1.0 / (4.0 * math.pi * k * k * rho**3)
    cx, sx = math.cos(x), math.sin(x)
    # Re of e^{ix}(1 - ix - x^2) and e^{ix}(3 - 3ix - x^2)
    re_t = cx * (1.0 - x * x) + x * sx
    re_l = cx * (3.0 - x * x) + 3.0 * x * sx
    real = pref * (re_t * np.eye(3) - re_l * ee)
    a, b = _im_coefficients(x)
    imag = (k / (6.0 * math.pi)) * (a * np.eye(3) + b * ee)
    return real + 1j * imag


def scattering_green(r, rp, omega: float) -> np.ndarray:
    """Scattering part G1(r, rp) = G0(r, rp*) . R of the perfect mirror."""
    r = check_above_mirror(Position3.of(r), "field point")
    return free_space_green(r, image_position(rp), omega) @ _REFLECTION


def total_green(env, r, rp, omega: float) -> np.ndarray:
    """Full Green's tensor of the environment.

    At ``r == rp`` the real part of the bulk term diverges; only its finite
    imaginary part is kept there, so the result is meaningful for decay
    rates but not for level shifts.
    """
    env = Environment(env)
    if env is Environment.PERFECT_MIRROR:
        check_above_mirror(Position3.of(r), "field point")
        check_above_mirror(Position3.of(rp), "source point")
    _, rho = _separation(r, rp)
    if rho < MIN_SEPARATION:
        bulk = 1j * im_free_space_green(r, rp, omega)
    else:
        bulk = free_space_green(r, rp, omega)
    if env is Environment.FREE_SPACE:
        return bulk
    return bulk + scattering_green(r, rp, omega)


def im_total_green(env, r, rp, omega: float) -> np.ndarray:
    """Imaginary part of :func:`total_green`, valid at coincidence too."""
    env = Environment(env)
    im = im_free_space_green(r, rp, omega)
    if env is Environment.FREE_SPACE:
        return im
    return im + im_scattering_green(r, rp, omega)


def im_scattering_green(r, rp, omega: float) -> np.ndarray:
    r = check_above_mirror(Position3.of(r), "field point")
    return im_free_space_green(r, image_position(rp), omega) @ _REFLECTION
