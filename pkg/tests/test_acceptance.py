"""Exit criteria, one test each; every test prints a PASS/FAIL line with the observed error."""

import math

import numpy as np
import pytest

from dickemirror import green, oracle, rates, scenarios
from dickemirror.model import CONSTANTS, DickeParity, Environment, PairConfig
from dickemirror.validation import random_pair

from conftest import IM_COINCIDENT, K0, LAM0, W0

FREE = Environment.FREE_SPACE
MIRROR = Environment.PERFECT_MIRROR
SYM = DickeParity.SYMMETRIC
ANTI = DickeParity.ANTISYMMETRIC
D = 6.3e-30
XX = (D, 0.0, 0.0)
ZZ = (0.0, 0.0, D)
GAMMA_FREE = D**2 * W0**3 / (3 * math.pi * CONSTANTS.eps0 * CONSTANTS.hbar * CONSTANTS.c**3)

# configurations shared by the randomised criteria, collected for the sum rule
_RANDOM_CONFIGS = []


def check(report, number, name, error, tol):
    ok = bool(error <= tol)
    report(f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {name}: observed {error:.3e}, tolerance {tol:.1e}")
    assert ok, f"criterion {number} ({name}): {error:.3e} > {tol:.1e}"


def pair(z_a, z_b, d, parity=SYM, env=FREE):
    return PairConfig.build((0, 0, z_a), d, (0, 0, z_b), d, W0, parity, env)


def test_01_coincidence_limit(report):
    r = (2e-9, -1e-9, 5e-9)
    ref = IM_COINCIDENT * np.eye(3)
    analytic = np.max(np.abs(green.im_free_space_green(r, r, W0) - ref)) / IM_COINCIDENT
    mode = np.max(np.abs(oracle.mode_sum_im_green(r, r, W0, oracle.QuadratureSpec(64, 128)) - ref))
    check(report, 1, "Im G0(r,r) = w/(6 pi c) I, analytic", analytic, 1e-12)
    check(report, 1, "Im G0(r,r) = w/(6 pi c) I, mode sum order 64", mode / IM_COINCIDENT, 1e-8)


def test_02_transposition_symmetry(report):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        r, rp = rng.normal(size=3) * LAM0, rng.normal(size=3) * LAM0
        omega = W0 * rng.uniform(0.1, 10.0)
        g = green.free_space_green(r, rp, omega)
        gt = green.free_space_green(rp, r, omega).T
        worst = max(worst, float(np.max(np.abs(g - gt)) / np.max(np.abs(g))))
    check(report, 2, "G0(r,r') = G0(r',r)^T over 1000 pairs", worst, 1e-12)


def test_03_free_space_superradiance(report):
    res = rates.collective_rate(pair(1e-3 * LAM0, 0.0, XX))
    ratio = res.gamma_total / (res.gamma_A + res.gamma_B)
    check(report, 3, "symmetric rho = 1e-3 lambda0: |ratio - 1|", abs(ratio - 1.0), 1e-3)


def test_04_free_space_subradiance(report):
    res = rates.collective_rate(pair(1e-3 * LAM0, 0.0, XX, ANTI))
    ratio = res.gamma_total / (res.gamma_A + res.gamma_B)
    check(report, 4, "antisymmetric rho = 1e-3 lambda0: ratio", ratio, 1e-3)


def test_05_retarded_limit(report):
    rho = 100 * LAM0
    worst = 0.0
    for d in (XX, ZZ):
        for parity in (SYM, ANTI):
            res = rates.collective_rate(pair(rho, 0.0, d, parity))
            worst = max(worst, abs(res.gamma_total / (res.gamma_A + res.gamma_B) - 0.5))
    check(report, 5, "rho = 100 lambda0: |ratio - 1/2|", worst, 3 / (2 * K0 * rho))


def test_06_closed_form_vs_contraction(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(1000):
        lam = rng.uniform(0.05, 50.0)
        da, db = rng.normal(size=3), rng.normal(size=3)
        da, db = da / np.linalg.norm(da) * D, db / np.linalg.norm(db) * D
        closed = rates.free_space_interference_closed_form(da, db, lam / K0, W0)
        path = rates.interference_rate(da, db, (0, 0, lam / K0), (0, 0, 0), W0)
        worst = max(worst, abs(closed - path) / GAMMA_FREE)
    check(report, 6, "closed form vs Im G path, 1000 samples (rel. to Gamma_A)", worst, 1e-10)


def test_07_oracle_equivalence(report):
    rng = np.random.default_rng(7)
    quad = oracle.QuadratureSpec(64, 128)
    worst = 0.0
    for i in range(200):
        env = FREE if i % 2 == 0 else MIRROR
        cfg = random_pair(rng, env, W0)
        _RANDOM_CONFIGS.append(cfg)
        res = rates.collective_rate(cfg)
        power = oracle.radiated_power_rate(cfg, quad)
        worst = max(worst, abs(power - res.gamma_total) / res.gamma_total)
    check(report, 7, "radiated power vs collective rate, 200 configs", worst, 1e-6)


def test_08_mirror_near_zone_doubling(report):
    z = 1e-3 * LAM0
    res = rates.collective_rate(pair(2 * z, z, ZZ, SYM, MIRROR))
    target = 2 * (2 * GAMMA_FREE)
    check(report, 8, "mirror zz near zone: |Gamma / 2(GA+GB)_free - 1|", abs(res.gamma_total / target - 1), 1e-2)


def test_09_mirror_near_zone_suppression(report):
    z = 1e-3 * LAM0
    res = rates.collective_rate(pair(2 * z, z, XX, SYM, MIRROR))
    check(report, 9, "mirror xx near zone: Gamma / (GA+GB)_free", res.scaled_pair_sum, 1e-2)


def test_10_mirror_retarded_limit(report):
    res = rates.collective_rate(pair(100 * LAM0, 1e-9, ZZ, SYM, MIRROR))
    check(report, 10, "zB = 10 A, zA = 100 lambda0: |Gamma / 1.5 GA - 1|",
          abs(res.gamma_total / (1.5 * GAMMA_FREE) - 1), 1e-2)


def test_11_sum_rule(report):
    rng = np.random.default_rng(11)
    configs = list(_RANDOM_CONFIGS)
    for i in range(400):
        configs.append(random_pair(rng, FREE if i % 2 else MIRROR, W0, krho=(1e-4, 60.0)))
    worst = 0.0
    for cfg in configs:
        plus, minus = rates.parity_pair(cfg)
        total = plus.gamma_A + plus.gamma_B
        worst = max(worst, abs(plus.gamma_total + minus.gamma_total - total) / total)
    check(report, 11, f"Gamma+ + Gamma- = GA + GB over {len(configs)} configs", worst, 1e-12)


@pytest.mark.parametrize("parity", ["symmetric", "antisymmetric"])
def test_12_node_antinode_presets(report, parity):
    ids = ("fig3", "fig4", "fig5") if parity == "symmetric" else ("fig6", "fig7", "fig8")
    dev = {}
    for fig_id in ids:
        mirror_zz, free_zz, mirror_xx, free_xx = scenarios.run_preset(scenarios.figure_preset(fig_id))
        dev[fig_id] = (scenarios.mean_abs_deviation(mirror_zz, free_zz),
                       scenarios.mean_abs_deviation(mirror_xx, free_xx))
    near, node, antinode = (dev[i] for i in ids)
    for j, orient in enumerate(("zz", "xx")):
        # margin > 0 means the ordering holds
        margin = min(near[j] - node[j], node[j] - antinode[j])
        report(f"    {parity} {orient}: deviation 10A {near[j]:.4f}, node {node[j]:.4f}, antinode {antinode[j]:.4f}")
        check(report, 12, f"{parity} {orient}: 10A > node > antinode (negative margin)", -margin, 0.0)


def test_13_golden_determinism(report):
    worst = 0
    for fig_id in ("fig1", "fig3"):
        preset = scenarios.figure_preset(fig_id)
        runs = [scenarios.csv_text(scenarios.run_preset(preset, workers=w)) for w in (1, 1, 4)]
        worst = max(worst, sum(r != runs[0] for r in runs[1:]))
    check(report, 13, "fig1/fig3 CSV byte-identical across runs and thread counts (mismatches)", worst, 0)
