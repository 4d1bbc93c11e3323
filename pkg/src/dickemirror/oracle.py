"""Brute-force cross-checks that share no code with the analytic tensors.

Two independent routes:

* :func:`mode_sum_im_green` integrates the transverse projector of plane
  waves over all propagation directions.
* :func:`radiated_power_rate` integrates the classical far-field power of
  the coherently superposed dipoles (plus image dipoles above a mirror).

Unknown overall constants are fixed by anchor conditions evaluated with the
same quadrature: the coincidence value omega/(6 pi c) for the mode sum and
the isolated-dipole rate for the radiated power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import CONSTANTS, ConfigError, Environment, PairConfig, Position3, check_frequency


@dataclass(frozen=True)
class QuadratureSpec:
    """Product rule: Gauss-Legendre in cos(theta) times uniform points in phi."""

    order_theta: int = 64
    order_phi: int = 128
    rtol: float = 1e-8
    scheme: str = "gauss-legendre x uniform-phi"

    def __post_init__(self):
        if self.order_theta < 4 or self.order_phi < 4:
            raise ConfigError(f"quadrature order must be >= 4, got {self.order_theta}, {self.order_phi}")
        if not self.rtol > 0.0:
            raise ConfigError(f"quadrature tolerance must be positive, got {self.rtol}")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.order_theta, 2 * self.order_phi, self.rtol)


DEFAULT_QUADRATURE = QuadratureSpec()


@lru_cache(maxsize=32)
def _directions(order_theta: int, order_phi: int, upper_only: bool):
    """Unit vectors and solid-angle weights, shapes (N, 3) and (N,)."""
    u, w_u = np.polynomial.legendre.leggauss(order_theta)
    if upper_only:
        u, w_u = 0.5 * (u + 1.0), 0.5 * w_u
    phi = 2.0 * math.pi * np.arange(order_phi) / order_phi
    w_phi = 2.0 * math.pi / order_phi
    cos_t = np.repeat(u, order_phi)
    sin_t = np.sqrt(np.clip(1.0 - cos_t**2, 0.0, None))
    ph = np.tile(phi, order_theta)
    n = np.column_stack([sin_t * np.cos(ph), sin_t * np.sin(ph), cos_t])
    w = np.repeat(w_u, order_phi) * w_phi
    n.setflags(write=False)
    w.setflags(write=False)
    return n, w


def _projector_moment(n, weights, phase_weights):
    # sum_j w_j f_j (I - n_j n_j), accumulated in a fixed order
    wf = weights * phase_weights
    return np.sum(wf) * np.eye(3) - np.einsum("j,ja,jb->ab", wf, n, n)


def mode_sum_im_green(r, rp, omega: float, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """Im G0(r, rp, omega) as a plane-wave sum over the unit sphere."""
    omega = check_frequency(omega)
    k = omega / CONSTANTS.c
    n, w = _directions(quad.order_theta, quad.order_phi, False)
    rho = Position3.of(r).as_array() - Position3.of(rp).as_array()
    raw = _projector_moment(n, w, np.cos(k * (n @ rho)))
    anchor = _projector_moment(n, w, np.ones(len(w)))
    norm = (omega / (6.0 * math.pi * CONSTANTS.c)) / (np.trace(anchor) / 3.0)
    return norm * raw


def _far_field_power(n, w, k, sources) -> float:
    """Solid-angle integral of |sum_s (I - nn).d_s exp(-i k n.r_s)|^2."""
    amp = np.zeros((len(w), 3), dtype=complex)
    for d, r in sources:
        d_perp = d[None, :] - (n @ d)[:, None] * n
        amp += d_perp * np.exp(-1j * k * (n @ r))[:, None]
    return float(np.sum(w * np.sum(np.abs(amp) ** 2, axis=1)))


def radiated_power_rate(cfg: PairConfig, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Collective rate from the total far-field power of the dipole ensemble.

    Each atom radiates with amplitude 1/sqrt(2) and the relative sign of the
    Dicke state. Above a mirror every dipole is paired with its image
    ``(-dx, -dy, dz)`` at ``(x, y, -z)`` and only the upper half-space of
    directions is integrated. The result is normalised so that a single
    isolated dipole gives its free-space rate.
    """
    omega = cfg.omega0
    c = CONSTANTS
    k = omega / c.c
    amp_b = float(int(cfg.parity))
    sources = []
    for atom, a in ((cfg.atom_a, 1.0), (cfg.atom_b, amp_b)):
        d = atom.dipole.as_array() * (a / math.sqrt(2.0))
        r = atom.position.as_array()
        sources.append((d, r))
        if cfg.environment is Environment.PERFECT_MIRROR:
            sources.append((d * np.array([-1.0, -1.0, 1.0]), r * np.array([1.0, 1.0, -1.0])))

    upper = cfg.environment is Environment.PERFECT_MIRROR
    n, w = _directions(quad.order_theta, quad.order_phi, upper)
    power = _far_field_power(n, w, k, sources)

    # anchor: unit isolated dipole, full sphere, same theta/phi orders
    n_full, w_full = _directions(quad.order_theta, quad.order_phi, False)
    unit = np.array([0.0, 0.0, 1.0])
    anchor = _far_field_power(n_full, w_full, k, [(unit, np.zeros(3))])
    unit_rate = omega**3 / (3.0 * math.pi * c.eps0 * c.hbar * c.c**3)
    return unit_rate * power / anchor
