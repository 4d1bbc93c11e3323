"""Shared value types, physical constants and unit conventions.

Everything is SI: lengths in m, angular frequencies in rad/s, dipole
moments in C m, rates in 1/s.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.constants as _sc


class DomainError(ValueError):
    """Raised when an input lies outside the physical domain of an operation."""


class ConfigError(ValueError):
    """Raised for malformed sweep, preset or command-line configuration."""


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants used by every formula in the package.

    ``c`` and ``mu0`` are the CODATA values shipped with scipy; ``eps0`` is
    derived as ``1/(mu0 c**2)`` so that ``c**2 mu0 eps0 == 1`` holds to
    rounding (scipy's tabulated epsilon_0 is off by ~1.2e-12 relative).
    """

    c: float = _sc.c  # 299792458.0 m/s, exact
    mu0: float = _sc.mu_0  # 1.25663706127e-06 N/A^2
    eps0: float = 1.0 / (_sc.mu_0 * _sc.c**2)  # 8.8541878188...e-12 F/m
    hbar: float = _sc.hbar  # 1.0545718176461565e-34 J s


CONSTANTS = PhysicalConstants()

#: Hydrogen 2p -> 1s angular frequency used for every figure preset.
OMEGA_HYDROGEN = 1.55e16

#: Default transition-dipole magnitude (one atomic unit, e a0) for CLI output.
DEFAULT_DIPOLE = _sc.e * _sc.physical_constants["Bohr radius"][0]


def _as_triple(values, what: str) -> tuple[float, float, float]:
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise DomainError(f"{what} needs exactly 3 components, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{what} has non-finite components: {arr.tolist()}")
    return float(arr[0]), float(arr[1]), float(arr[2])


@dataclass(frozen=True)
class Position3:
    """A point in space, metres."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _as_triple((self.x, self.y, self.z), "position")

    @classmethod
    def of(cls, value) -> "Position3":
        if isinstance(value, cls):
            return value
        return cls(*_as_triple(value, "position"))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class DipoleVector:
    """Real transition dipole moment d^{eg} = d^{ge}, C m."""

    dx: float
    dy: float
    dz: float

    def __post_init__(self):
        _as_triple((self.dx, self.dy, self.dz), "dipole")

    @classmethod
    def of(cls, value) -> "DipoleVector":
        if isinstance(value, cls):
            return value
        return cls(*_as_triple(value, "dipole"))

    def as_array(self) -> np.ndarray:
        return np.array([self.dx, self.dy, self.dz])

    @property
    def norm(self) -> float:
        return math.sqrt(self.dx**2 + self.dy**2 + self.dz**2)


class Environment(enum.Enum):
    FREE_SPACE = "free"
    PERFECT_MIRROR = "mirror"


class DickeParity(enum.IntEnum):
    SYMMETRIC = 1
    ANTISYMMETRIC = -1

    @classmethod
    def parse(cls, text: str) -> "DickeParity":
        key = str(text).strip().lower()
        if key in ("sym", "symmetric", "+", "+1", "1"):
            return cls.SYMMETRIC
        if key in ("anti", "antisym", "antisymmetric", "-", "-1"):
            return cls.ANTISYMMETRIC
        raise ConfigError(f"parity: unknown value {text!r} (use sym or anti)")


def check_frequency(omega: float) -> float:
    """Validate an angular frequency and return it as a float."""
    omega = float(omega)
    if not math.isfinite(omega) or omega <= 0.0:
        raise DomainError(f"omega0: angular frequency must be positive and finite, got {omega}")
    return omega


def check_above_mirror(r: Position3, what: str = "position") -> Position3:
    if not r.z > 0.0:
        raise DomainError(f"{what}: z = {r.z} is not above the mirror plane z = 0")
    return r


def transition_wavelength(omega0: float) -> float:
    """Vacuum wavelength 2 pi c / omega0 of a transition, in metres."""
    return 2.0 * math.pi * CONSTANTS.c / check_frequency(omega0)


@dataclass(frozen=True)
class Atom:
    position: Position3
    dipole: DipoleVector

    @classmethod
    def of(cls, position, dipole) -> "Atom":
        return cls(Position3.of(position), DipoleVector.of(dipole))


@dataclass(frozen=True)
class PairConfig:
    """Two identical emitters sharing one excitation, in a given environment."""

    atom_a: Atom
    atom_b: Atom
    omega0: float = OMEGA_HYDROGEN
    parity: DickeParity = DickeParity.SYMMETRIC
    environment: Environment = Environment.FREE_SPACE

    def __post_init__(self):
        check_frequency(self.omega0)
        object.__setattr__(self, "parity", DickeParity(self.parity))
        object.__setattr__(self, "environment", Environment(self.environment))
        if self.atom_a.position == self.atom_b.position:
            raise DomainError("atom positions coincide")
        if self.environment is Environment.PERFECT_MIRROR:
            check_above_mirror(self.atom_a.position, "zA")
            check_above_mirror(self.atom_b.position, "zB")

    @classmethod
    def build(cls, r_a, d_a, r_b, d_b, omega0=OMEGA_HYDROGEN,
              parity=DickeParity.SYMMETRIC, environment=Environment.FREE_SPACE) -> "PairConfig":
        return cls(Atom.of(r_a, d_a), Atom.of(r_b, d_b), omega0, parity, environment)

    def with_parity(self, parity) -> "PairConfig":
        return PairConfig(self.atom_a, self.atom_b, self.omega0, DickeParity(parity), self.environment)

    def with_environment(self, environment) -> "PairConfig":
        return PairConfig(self.atom_a, self.atom_b, self.omega0, self.parity, Environment(environment))


@dataclass(frozen=True)
class RateResult:
    """Decomposed collective decay rate of one Dicke state.

    ``gamma_A``/``gamma_B`` are the single-atom rates in the given
    environment, ``gamma_AB`` the interference rate. ``gamma_bulk`` and
    ``gamma_scatter`` split ``gamma_total`` into the free-space and the
    mirror-reflection contributions. Scaled values are normalised by the
    free-space single-atom rates and are NaN when those vanish.
    """

    gamma_total: float
    gamma_A: float
    gamma_B: float
    gamma_AB: float
    gamma_bulk: float
    gamma_scatter: float
    scaled_pair_sum: float
    scaled_single: float
    parity: DickeParity = field(default=DickeParity.SYMMETRIC)

    def as_dict(self) -> dict[str, float]:
        return {
            "gamma_total": self.gamma_total,
            "gamma_A": self.gamma_A,
            "gamma_B": self.gamma_B,
            "gamma_AB": self.gamma_AB,
            "gamma_bulk": self.gamma_bulk,
            "gamma_scatter": self.gamma_scatter,
            "scaled_pair_sum": self.scaled_pair_sum,
            "scaled_single": self.scaled_single,
        }

    def check(self, rtol: float = 1e-12) -> None:
        """Assert the decomposition identity and non-negativity."""
        scale = abs(self.gamma_A) + abs(self.gamma_B) + abs(self.gamma_AB)
        expected = 0.5 * (self.gamma_A + self.gamma_B) + int(self.parity) * self.gamma_AB
        if abs(self.gamma_total - expected) > rtol * scale:
            raise AssertionError(f"decomposition identity violated: {self.gamma_total} != {expected}")
        if self.gamma_total < -rtol * (abs(self.gamma_A) + abs(self.gamma_B)):
            raise AssertionError(f"negative collective rate {self.gamma_total}")
