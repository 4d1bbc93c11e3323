"""Randomised oracle suites behind the ``validate`` subcommand."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import green, oracle, rates
from .model import (
    CONSTANTS,
    OMEGA_HYDROGEN,
    DickeParity,
    Environment,
    PairConfig,
    Position3,
    transition_wavelength,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} max_err={self.max_error:.3e}  tol={self.tolerance:.1e}"


def random_unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_pair(rng: np.random.Generator, env: Environment, omega0: float = OMEGA_HYDROGEN,
                krho=(0.1, 30.0), z_range=(1e-3, 10.0), parity=None) -> PairConfig:
    """Random geometry and dipoles; heights in units of the wavelength."""
    k = omega0 / CONSTANTS.c
    lam = transition_wavelength(omega0)
    while True:
        z_b = rng.uniform(*z_range) * lam
        r_b = np.array([rng.uniform(-1, 1) * lam, rng.uniform(-1, 1) * lam, z_b])
        r_a = r_b + rng.uniform(*krho) / k * random_unit(rng)
        if env is Environment.FREE_SPACE or z_range[0] * lam <= r_a[2] <= z_range[1] * lam:
            break
    if parity is None:
        parity = DickeParity(int(rng.choice([1, -1])))
    return PairConfig.build(r_a, random_unit(rng), r_b, random_unit(rng), omega0, parity, env)


def check_coincidence(quad=oracle.DEFAULT_QUADRATURE, omega0: float = OMEGA_HYDROGEN) -> list[CheckResult]:
    r = Position3(1e-8, -2e-8, 3e-8)
    ref = omega0 / (6.0 * math.pi * CONSTANTS.c) * np.eye(3)
    scale = ref[0, 0]
    analytic = np.max(np.abs(green.im_free_space_green(r, r, omega0) - ref)) / scale
    mode = np.max(np.abs(oracle.mode_sum_im_green(r, r, omega0, quad) - ref)) / scale
    return [CheckResult("coincidence limit (analytic)", analytic, 1e-12),
            CheckResult("coincidence limit (mode sum)", mode, 1e-8)]


def check_mode_sum(n: int, rng, quad=oracle.DEFAULT_QUADRATURE, omega0: float = OMEGA_HYDROGEN) -> CheckResult:
    k = omega0 / CONSTANTS.c
    scale = k / (6.0 * math.pi)
    worst = 0.0
    for _ in range(n):
        r = rng.normal(size=3) * 1e-7
        rp = r + rng.uniform(0.1, 30.0) / k * random_unit(rng)
        diff = green.im_free_space_green(r, rp, omega0) - oracle.mode_sum_im_green(r, rp, omega0, quad)
        worst = max(worst, float(np.max(np.abs(diff))) / scale)
    return CheckResult("Im G0 vs mode sum", worst, 1e-8)


def check_symmetry(n: int, rng, omega0: float = OMEGA_HYDROGEN) -> CheckResult:
    lam = transition_wavelength(omega0)
    worst = 0.0
    for _ in range(n):
        r, rp = rng.normal(size=3) * lam, rng.normal(size=3) * lam
        g1 = green.free_space_green(r, rp, omega0)
        g2 = green.free_space_green(rp, r, omega0).T
        worst = max(worst, float(np.max(np.abs(g1 - g2)) / np.max(np.abs(g1))))
    return CheckResult("transposition symmetry", worst, 1e-12)


def check_closed_form(n: int, rng, omega0: float = OMEGA_HYDROGEN) -> CheckResult:
    k = omega0 / CONSTANTS.c
    worst = 0.0
    for _ in range(n):
        lam = rng.uniform(0.05, 50.0)
        z = lam / k
        da, db = random_unit(rng), random_unit(rng)
        ref = rates.free_single_atom_rate(da, omega0)
        closed = rates.free_space_interference_closed_form(da, db, z, omega0)
        contracted = rates.interference_rate(da, db, [0, 0, z], [0, 0, 0], omega0)
        worst = max(worst, abs(closed - contracted) / ref)
    return CheckResult("closed form vs Im G contraction", worst, 1e-10)


def check_radiated_power(n: int, rng, quad=oracle.DEFAULT_QUADRATURE,
                         omega0: float = OMEGA_HYDROGEN) -> CheckResult:
    worst = 0.0
    for i in range(n):
        env = Environment.FREE_SPACE if i % 2 == 0 else Environment.PERFECT_MIRROR
        cfg = random_pair(rng, env, omega0)
        res = rates.collective_rate(cfg)
        power = oracle.radiated_power_rate(cfg, quad)
        floor = 1e-12 * (abs(res.gamma_A) + abs(res.gamma_B))
        worst = max(worst, max(abs(power - res.gamma_total) - floor, 0.0) / abs(res.gamma_total))
    return CheckResult("radiated power vs collective rate", worst, 1e-6)


def check_sum_rule(n: int, rng, omega0: float = OMEGA_HYDROGEN) -> list[CheckResult]:
    worst_sum = 0.0
    worst_neg = 0.0
    for i in range(n):
        env = Environment.FREE_SPACE if i % 2 == 0 else Environment.PERFECT_MIRROR
        cfg = random_pair(rng, env, omega0)
        plus, minus = rates.parity_pair(cfg)
        total = plus.gamma_A + plus.gamma_B
        worst_sum = max(worst_sum, abs(plus.gamma_total + minus.gamma_total - total) / total)
        worst_neg = max(worst_neg, -min(plus.gamma_total, minus.gamma_total) / total)
    return [CheckResult("sum rule G+ + G- = GA + GB", worst_sum, 1e-12),
            CheckResult("positivity of G+-", max(worst_neg, 0.0), 1e-12)]


def run_all(samples: int = 200, seed: int = 0, quad=oracle.DEFAULT_QUADRATURE) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    checks = check_coincidence(quad)
    checks.append(check_mode_sum(min(samples, 50), rng, quad))
    checks.append(check_symmetry(max(samples, 1000), rng))
    checks.append(check_closed_form(max(samples, 1000), rng))
    checks.append(check_radiated_power(samples, rng, quad))
    checks += check_sum_rule(samples, rng)
    return checks
