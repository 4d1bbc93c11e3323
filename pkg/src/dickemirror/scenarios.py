"""Parameter sweeps, figure presets and their CSV/SVG output."""

from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .model import (
    DEFAULT_DIPOLE,
    OMEGA_HYDROGEN,
    Atom,
    ConfigError,
    DickeParity,
    DipoleVector,
    Environment,
    PairConfig,
    Position3,
    RateResult,
    transition_wavelength,
)
from .rates import collective_rate

CSV_COLUMNS = (
    "z_A_m",
    "gamma_total_si",
    "gamma_A_si",
    "gamma_B_si",
    "gamma_AB_si",
    "gamma_bulk_si",
    "gamma_scatter_si",
    "scaled_pair_sum",
    "scaled_single",
)

ORIENTATIONS = {"zz": (0.0, 0.0, 1.0), "xx": (1.0, 0.0, 0.0)}
NORMALIZATIONS = ("pair_sum", "single_atom")
ANGSTROM = 1e-10


def orientation_dipoles(name: str, magnitude: float = DEFAULT_DIPOLE) -> tuple[DipoleVector, DipoleVector]:
    try:
        unit = ORIENTATIONS[name]
    except KeyError:
        raise ConfigError(f"orient: unknown orientation {name!r} (use zz or xx)") from None
    d = DipoleVector(*(magnitude * u for u in unit))
    return d, d


@dataclass(frozen=True)
class SweepSpec:
    """One curve: atom A moved along z while everything else stays fixed.

    ``varied="z_A"`` sets A's height directly; ``varied="rho"`` places A at
    ``r_B + rho z``. The abscissa reported is always A's z coordinate.
    """

    template: PairConfig
    varied: str = "z_A"
    start: float = 0.0
    stop: float = 0.0
    count: int = 2000
    spacing: str = "linear"
    orientation: str = "custom"
    normalization: str = "single_atom"
    label: str = ""
    style: str = "solid"

    def __post_init__(self):
        if self.varied not in ("z_A", "rho"):
            raise ConfigError(f"varied: must be z_A or rho, got {self.varied!r}")
        if self.spacing not in ("linear", "log"):
            raise ConfigError(f"spacing: must be linear or log, got {self.spacing!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ConfigError(f"normalization: must be one of {NORMALIZATIONS}, got {self.normalization!r}")
        if int(self.count) != self.count or self.count < 2:
            raise ConfigError(f"count: need at least 2 samples, got {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not 0.0 < self.start < self.stop:
            raise ConfigError(f"range: need 0 < min < max, got [{self.start}, {self.stop}]")
        if self.varied == "z_A" and self.start <= self.template.atom_b.position.z:
            raise ConfigError(
                f"range: min {self.start} must lie above atom B at z = {self.template.atom_b.position.z}"
            )

    def abscissa(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, int(self.count))
        return np.linspace(self.start, self.stop, int(self.count))

    def config_at(self, value: float) -> PairConfig:
        t = self.template
        rb = t.atom_b.position
        ra = t.atom_a.position
        if self.varied == "z_A":
            pos = Position3(ra.x, ra.y, float(value))
        else:
            pos = Position3(rb.x, rb.y, rb.z + float(value))
        return replace(t, atom_a=Atom(pos, t.atom_a.dipole))


@dataclass(frozen=True)
class SweepTable:
    spec: SweepSpec
    z_a: np.ndarray
    results: tuple[RateResult, ...]

    @property
    def label(self) -> str:
        return self.spec.label

    def __len__(self) -> int:
        return len(self.results)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.results])

    def scaled(self) -> np.ndarray:
        name = "scaled_pair_sum" if self.spec.normalization == "pair_sum" else "scaled_single"
        return self.column(name)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Evaluate :func:`collective_rate` at every sample of the sweep.

    Rows come back in abscissa order whatever ``workers`` is; each point is
    computed independently, so the numbers do not depend on the thread count.
    """
    xs = spec.abscissa()
    configs = [spec.config_at(x) for x in xs]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = tuple(pool.map(collective_rate, configs))
    else:
        results = tuple(collective_rate(c) for c in configs)
    for r in results:
        r.check()
    z_a = np.array([c.atom_a.position.z for c in configs])
    return SweepTable(spec, z_a, results)


@dataclass(frozen=True)
class FigurePreset:
    id: str
    title: str
    sweeps: tuple[SweepSpec, ...]
    normalization: str
    x_label: str = "z_A (m)"


FIGURE_IDS = ("fig1", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8")

# z_B of the fixed atom: 10 Angstrom, node, antinode
_MIRROR_FIGURES = {
    "fig3": (DickeParity.SYMMETRIC, 10 * ANGSTROM, "10 A"),
    "fig4": (DickeParity.SYMMETRIC, 1.2e-7, "node"),
    "fig5": (DickeParity.SYMMETRIC, 1.5e-7, "antinode"),
    "fig6": (DickeParity.ANTISYMMETRIC, 10 * ANGSTROM, "10 A"),
    "fig7": (DickeParity.ANTISYMMETRIC, 1.2e-7, "node"),
    "fig8": (DickeParity.ANTISYMMETRIC, 1.5e-7, "antinode"),
}

# (environment, orientation, label, style) per curve, as in the figure captions
_MIRROR_CURVES = (
    (Environment.PERFECT_MIRROR, "zz", "mirror zz", "red dashed"),
    (Environment.FREE_SPACE, "zz", "free zz", "blue solid"),
    (Environment.PERFECT_MIRROR, "xx", "mirror xx", "orange dotted"),
    (Environment.FREE_SPACE, "xx", "free xx", "green dashdot"),
)


def figure_preset(fig_id: str, count: int = 2000, omega0: float = OMEGA_HYDROGEN,
                  dipole: float = DEFAULT_DIPOLE, fig1_orientation: str = "xx") -> FigurePreset:
    """Resolve a figure id into its set of sweeps.

    fig1 is the free-space separation sweep for both Dicke states. fig3-fig5
    (symmetric) and fig6-fig8 (antisymmetric) move atom A above a fixed atom
    B at 10 A, 1.2e-7 m and 1.5e-7 m, from 10 A above B up to ten
    wavelengths, with and without the mirror.
    """
    lam = transition_wavelength(omega0)
    if fig_id == "fig1":
        da, db = orientation_dipoles(fig1_orientation, dipole)
        sweeps = []
        for parity, label, style in ((DickeParity.SYMMETRIC, "symmetric", "blue solid"),
                                     (DickeParity.ANTISYMMETRIC, "antisymmetric", "red dashed")):
            template = PairConfig(Atom(Position3(0.0, 0.0, 1.0), da), Atom(Position3(0.0, 0.0, 0.0), db),
                                  omega0, parity, Environment.FREE_SPACE)
            sweeps.append(SweepSpec(template, "rho", 10 * ANGSTROM, 100 * lam, count,
                                    orientation=fig1_orientation, normalization="pair_sum",
                                    label=label, style=style))
        return FigurePreset("fig1", "free space, both Dicke states", tuple(sweeps), "pair_sum", "rho (m)")

    if fig_id not in _MIRROR_FIGURES:
        raise ConfigError(f"figure: unknown id {fig_id!r} (choose from {', '.join(FIGURE_IDS)})")
    parity, z_b, where = _MIRROR_FIGURES[fig_id]
    sweeps = []
    for env, orient, label, style in _MIRROR_CURVES:
        da, db = orientation_dipoles(orient, dipole)
        template = PairConfig(Atom(Position3(0.0, 0.0, z_b + 1.0), da), Atom(Position3(0.0, 0.0, z_b), db),
                              omega0, parity, env)
        sweeps.append(SweepSpec(template, "z_A", z_b + 10 * ANGSTROM, 10 * lam, count,
                                orientation=orient, normalization="single_atom",
                                label=label, style=style))
    title = f"{parity.name.lower()} state, z_B = {z_b:g} m ({where})"
    return FigurePreset(fig_id, title, tuple(sweeps), "single_atom")


def run_preset(preset: FigurePreset, workers: int = 1) -> list[SweepTable]:
    return [run_sweep(s, workers) for s in preset.sweeps]


def mean_abs_deviation(a: SweepTable, b: SweepTable) -> float:
    """Mean |difference| between two curves sampled on the same abscissa."""
    if not np.array_equal(a.z_a, b.z_a):
        raise ConfigError("curves are sampled on different abscissae")
    return float(np.mean(np.abs(a.scaled() - b.scaled())))


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows(table: SweepTable):
    for z, r in zip(table.z_a, table.results):
        yield [_fmt(z), _fmt(r.gamma_total), _fmt(r.gamma_A), _fmt(r.gamma_B), _fmt(r.gamma_AB),
               _fmt(r.gamma_bulk), _fmt(r.gamma_scatter), _fmt(r.scaled_pair_sum), _fmt(r.scaled_single)]


def csv_text(tables: SweepTable | Sequence[SweepTable]) -> str:
    """CSV for one sweep, or long-format CSV with a leading ``curve`` column for several."""
    if isinstance(tables, SweepTable):
        lines = [",".join(CSV_COLUMNS)]
        lines += [",".join(row) for row in _rows(tables)]
    else:
        lines = [",".join(("curve",) + CSV_COLUMNS)]
        for t in tables:
            if "," in t.label or "\n" in t.label:
                raise ConfigError(f"curve label {t.label!r} cannot be written to CSV")
            lines += [",".join([t.label] + row) for row in _rows(t)]
    return "\n".join(lines) + "\n"


def emit_csv(tables, path) -> None:
    """Write :func:`csv_text` to ``path`` via a temporary file and rename."""
    try:
        _atomic_write(path, csv_text(tables))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(path) -> dict[str, list]:
    """Parse a file written by :func:`emit_csv` into columns."""
    import csv

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols: dict[str, list] = {h: [] for h in header}
        for row in reader:
            for h, v in zip(header, row):
                cols[h].append(v if h == "curve" else float(v))
    return cols


_STROKES = {
    "red": "#d62728", "blue": "#1f77b4", "orange": "#ff7f0e", "green": "#2ca02c", "black": "#000000",
}
_DASHES = {"solid": None, "dashed": "8,5", "dotted": "1.5,4", "dashdot": "8,4,1.5,4"}


def _stroke(style: str) -> tuple[str, str | None]:
    parts = style.split()
    color = next((_STROKES[p] for p in parts if p in _STROKES), "#000000")
    dash = next((_DASHES[p] for p in parts if p in _DASHES), None)
    return color, dash


def svg_text(tables: Sequence[SweepTable], title: str = "", x_label: str = "z_A (m)",
             y_label: str = "scaled decay rate", width: int = 720, height: int = 480) -> str:
    if isinstance(tables, SweepTable):
        tables = [tables]
    if not tables or any(len(t) == 0 for t in tables):
        raise ConfigError("svg: cannot plot an empty curve")
    ys = [t.scaled() for t in tables]
    finite = np.concatenate([y[np.isfinite(y)] for y in ys])
    if finite.size == 0:
        raise ConfigError("svg: no finite values to plot")
    xmin = min(float(t.z_a[0]) for t in tables)
    xmax = max(float(t.z_a[-1]) for t in tables)
    ymin, ymax = float(finite.min()), float(finite.max())
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    pad = 0.05 * (ymax - ymin)
    ymin, ymax = ymin - pad, ymax + pad
    left, right, top, bottom = 80, 180, 40, 60
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + pw * (x - xmin) / (xmax - xmin)

    def py(y):
        return top + ph * (1.0 - (y - ymin) / (ymax - ymin))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        xv = xmin + (xmax - xmin) * i / 4
        yv = ymin + (ymax - ymin) * i / 4
        out.append(f'<text x="{px(xv):.2f}" y="{top + ph + 18}" font-size="11" '
                   f'text-anchor="middle">{xv:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{py(yv) + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" font-size="13" '
               f'text-anchor="middle">{_escape(x_label)}</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.1f}" font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.1f})">{_escape(y_label)}</text>')
    if title:
        out.append(f'<text x="{left + pw / 2:.1f}" y="24" font-size="14" '
                   f'text-anchor="middle">{_escape(title)}</text>')
    for i, (t, y) in enumerate(zip(tables, ys)):
        color, dash = _stroke(t.spec.style)
        pts = " ".join(f"{px(x):.2f},{py(v):.2f}" for x, v in zip(t.z_a, y) if math.isfinite(v))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{pts}"/>')
        ly = top + 20 + 20 * i
        out.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 42}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{left + pw + 48}" y="{ly + 4}" font-size="12">{_escape(t.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg(tables, path, title: str = "", x_label: str = "z_A (m)",
             y_label: str = "scaled decay rate") -> None:
    text = svg_text(tables, title, x_label, y_label)
    try:
        _atomic_write(path, text)
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror or exc}") from exc
