"""Single-atom, interference and collective Dicke decay rates.

All rates are contractions of the imaginary part of a Green's tensor with
real transition dipoles, ``(2 mu0 w0^2 / hbar) dA . Im G(rA, rB, w0) . dB``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from . import green
from .model import (
    CONSTANTS,
    DickeParity,
    DipoleVector,
    DomainError,
    Environment,
    PairConfig,
    Position3,
    RateResult,
    check_frequency,
)


class AsymptoticRegime(enum.Enum):
    """Limits with closed-form rates.

    For the mirror, RETARDED means atom B stays close to the plate while
    atom A and both interatomic distances are many wavelengths.
    """

    NON_RETARDED = "nret"
    RETARDED = "ret"


def _prefactor(omega0: float) -> float:
    return 2.0 * CONSTANTS.mu0 * omega0**2 / CONSTANTS.hbar


def _contract(d1: np.ndarray, im_g: np.ndarray, d2: np.ndarray) -> float:
    return float(d1 @ im_g @ d2)


def free_single_atom_rate(d, omega0: float) -> float:
    """Free-space rate |d|^2 w0^3 / (3 pi eps0 hbar c^3)."""
    omega0 = check_frequency(omega0)
    d = DipoleVector.of(d)
    c = CONSTANTS
    return d.norm**2 * omega0**3 / (3.0 * math.pi * c.eps0 * c.hbar * c.c**3)


def single_atom_rate(d, r, omega0: float, env=Environment.FREE_SPACE) -> float:
    omega0 = check_frequency(omega0)
    dv = DipoleVector.of(d).as_array()
    r = Position3.of(r)
    im_g = green.im_total_green(env, r, r, omega0)
    return _prefactor(omega0) * _contract(dv, im_g, dv)


def interference_rate(d_a, d_b, r_a, r_b, omega0: float, env=Environment.FREE_SPACE) -> float:
    """Signed cross rate coupling two emitters through Im G(rA, rB)."""
    omega0 = check_frequency(omega0)
    r_a, r_b = Position3.of(r_a), Position3.of(r_b)
    if r_a == r_b:
        raise DomainError("atom positions coincide")
    im_g = green.im_total_green(env, r_a, r_b, omega0)
    return _prefactor(omega0) * _contract(
        DipoleVector.of(d_a).as_array(), im_g, DipoleVector.of(d_b).as_array()
    )


def _pair_parts(cfg: PairConfig, im_g) -> tuple[float, float, float]:
    """(Gamma_A, Gamma_B, Gamma_AB) for a given Im G evaluator."""
    a, b = cfg.atom_a, cfg.atom_b
    da, db = a.dipole.as_array(), b.dipole.as_array()
    ra, rb = a.position, b.position
    pref = _prefactor(cfg.omega0)
    return (
        pref * _contract(da, im_g(ra, ra, cfg.omega0), da),
        pref * _contract(db, im_g(rb, rb, cfg.omega0), db),
        pref * _contract(da, im_g(ra, rb, cfg.omega0), db),
    )


def _combine(parts, sign: int) -> float:
    g_a, g_b, g_ab = parts
    return 0.5 * (g_a + g_b) + sign * g_ab


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0.0 else math.nan


def collective_rate(cfg: PairConfig) -> RateResult:
    """Decay rate of the symmetric or antisymmetric single-excitation state.

    ``gamma_bulk`` uses only the free-space tensor and ``gamma_scatter``
    only the mirror's scattering tensor, so that
    ``gamma_total == gamma_bulk + gamma_scatter`` up to rounding.
    """
    sign = int(cfg.parity)
    bulk = _pair_parts(cfg, green.im_free_space_green)
    if cfg.environment is Environment.PERFECT_MIRROR:
        scatter = _pair_parts(cfg, green.im_scattering_green)
    else:
        scatter = (0.0, 0.0, 0.0)
    g_a, g_b, g_ab = (p + q for p, q in zip(bulk, scatter))
    total = 0.5 * (g_a + g_b) + sign * g_ab

    free_a = free_single_atom_rate(cfg.atom_a.dipole, cfg.omega0)
    free_b = free_single_atom_rate(cfg.atom_b.dipole, cfg.omega0)
    return RateResult(
        gamma_total=total,
        gamma_A=g_a,
        gamma_B=g_b,
        gamma_AB=g_ab,
        gamma_bulk=_combine(bulk, sign),
        gamma_scatter=_combine(scatter, sign),
        scaled_pair_sum=_ratio(total, free_a + free_b),
        scaled_single=_ratio(total, free_a),
        parity=cfg.parity,
    )


def free_space_interference_closed_form(d_a, d_b, z: float, omega0: float) -> float:
    """Free-space interference rate for atoms separated by ``z`` along the z axis.

    Uses the trigonometric closed form in ``lam = z w0 / c``; loses relative
    accuracy for ``lam`` well below 1e-2 because of cancellation.
    """
    omega0 = check_frequency(omega0)
    z = float(z)
    if not z > 0.0:
        raise DomainError(f"z: separation must be positive, got {z}")
    da, db = DipoleVector.of(d_a).as_array(), DipoleVector.of(d_b).as_array()
    c = CONSTANTS
    lam = z * omega0 / c.c
    dot = float(da @ db)
    zz = da[2] * db[2]
    s, co = math.sin(lam), math.cos(lam)
    bracket = (dot - 3.0 * zz) * (lam * co - s) + (dot - zz) * lam * lam * s
    return bracket / (2.0 * math.pi * c.eps0 * c.hbar * z**3)


def asymptotic_rate(regime, cfg: PairConfig) -> float:
    """Distance-independent limiting rate built from dipole dot products.

    Antisymmetric states flip the sign of the interference products.
    """
    regime = AsymptoticRegime(regime)
    da = cfg.atom_a.dipole.as_array()
    db = cfg.atom_b.dipole.as_array()
    sign = int(cfg.parity)
    c = CONSTANTS
    pref = c.mu0 * cfg.omega0**3 / (6.0 * math.pi * c.c * c.hbar)

    if cfg.environment is Environment.FREE_SPACE:
        total = da @ da + db @ db
        if regime is AsymptoticRegime.NON_RETARDED:
            total += 2.0 * sign * (da @ db)
        return pref * float(total)

    da_img = green.image_dipole(cfg.atom_a.dipole).as_array()
    db_img = green.image_dipole(cfg.atom_b.dipole).as_array()
    if regime is AsymptoticRegime.NON_RETARDED:
        total = (da @ da + da @ da_img + db @ db + db @ db_img
                 + 2.0 * sign * (da @ db + da @ db_img))
    else:
        total = da @ da + db @ db + db @ db_img
    return pref * float(total)


def survival_probability(gamma: float, t: float) -> float:
    """Probability exp(-gamma t) of still finding the initial state at time t."""
    gamma, t = float(gamma), float(t)
    if gamma < 0.0 or t < 0.0 or not (math.isfinite(gamma) and math.isfinite(t)):
        raise DomainError(f"survival_probability needs gamma >= 0 and t >= 0, got {gamma}, {t}")
    return math.exp(-gamma * t)


def parity_pair(cfg: PairConfig) -> tuple[RateResult, RateResult]:
    """Symmetric and antisymmetric results for the same geometry."""
    return (collective_rate(cfg.with_parity(DickeParity.SYMMETRIC)),
            collective_rate(cfg.with_parity(DickeParity.ANTISYMMETRIC)))
