"""Command-line entry point: ``dickemirror {rate,sweep,figure,validate}``.

Exit codes: 0 success, 1 domain/configuration error (or a failed
validation), 2 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import oracle, scenarios, validation
from .model import (
    DEFAULT_DIPOLE,
    OMEGA_HYDROGEN,
    ConfigError,
    DickeParity,
    DipoleVector,
    DomainError,
    Environment,
    PairConfig,
    transition_wavelength,
)
from .rates import collective_rate


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"non-finite number {text!r}")
    return value


def _vector(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return tuple(_float(p) for p in parts)


def _add_pair_flags(p: argparse.ArgumentParser, sweep: bool) -> None:
    p.add_argument("--config", help="file of 'key = value' lines; flags override it")
    p.add_argument("--env", choices=["free", "mirror"])
    p.add_argument("--omega0", type=_float, help="transition angular frequency, rad/s")
    p.add_argument("--parity", help="sym or anti")
    p.add_argument("--orient", help="zz or xx (both dipoles)")
    p.add_argument("--dA", type=_vector, help="dipole of atom A, C m, as x,y,z")
    p.add_argument("--dB", type=_vector, help="dipole of atom B, C m, as x,y,z")
    p.add_argument("--dipole", type=_float, help="dipole magnitude for --orient, C m")
    p.add_argument("--zB", type=_float, help="height of atom B, m")
    if sweep:
        p.add_argument("--varied", choices=["z_A", "rho"])
        p.add_argument("--min", type=_float, dest="min", help="first abscissa value, m")
        p.add_argument("--max", type=_float, dest="max", help="last abscissa value, m")
        p.add_argument("--count", type=int)
        p.add_argument("--spacing", choices=["linear", "log"])
        p.add_argument("--normalization", choices=list(scenarios.NORMALIZATIONS))
        p.add_argument("--out", help="CSV output path")
        p.add_argument("--svg", help="optional SVG output path")
        p.add_argument("--workers", type=int)
    else:
        p.add_argument("--zA", type=_float, help="height of atom A, m")
        p.add_argument("--rA", type=_vector, help="position of atom A, m, as x,y,z")
        p.add_argument("--rB", type=_vector, help="position of atom B, m, as x,y,z")
        p.add_argument("--csv", help="also write the result as CSV to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dickemirror", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rate = sub.add_parser("rate", help="collective decay rate of one configuration")
    _add_pair_flags(rate, sweep=False)

    sweep = sub.add_parser("sweep", help="sweep atom A and write CSV (+ SVG)")
    _add_pair_flags(sweep, sweep=True)

    fig = sub.add_parser("figure", help="materialise a figure preset")
    fig.add_argument("id", help=", ".join(scenarios.FIGURE_IDS))
    fig.add_argument("--config")
    fig.add_argument("--out")
    fig.add_argument("--svg")
    fig.add_argument("--count", type=int)
    fig.add_argument("--workers", type=int)
    fig.add_argument("--orient", help="dipole orientation for fig1 (zz or xx)")

    val = sub.add_parser("validate", help="run the oracle suites")
    val.add_argument("--config")
    val.add_argument("--samples", type=int)
    val.add_argument("--seed", type=int)
    val.add_argument("--order-theta", type=int, dest="order_theta")
    val.add_argument("--order-phi", type=int, dest="order_phi")
    return parser


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.lstrip("-").replace("-", "_")] = value
    return values


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def _merge_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> argparse.Namespace:
    """Fill flags that were not given on the command line from the config file."""
    if not getattr(args, "config", None):
        return args
    actions = {a.dest: a for a in _subparser(parser, args.command)._actions}
    for key, text in read_config(args.config).items():
        action = actions.get(key)
        if action is None or key in ("help", "config", "id"):
            raise ConfigError(f"{args.config}: unknown key {key!r}")
        if getattr(args, key) is not None:
            continue
        try:
            value = action.type(text) if action.type else text
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise ConfigError(f"{args.config}: {key}: {exc}") from None
        if action.choices is not None and value not in action.choices:
            raise ConfigError(f"{args.config}: {key}: invalid choice {value!r}")
        setattr(args, key, value)
    return args


def _get(args, name, default):
    value = getattr(args, name, None)
    return default if value is None else value


def _dipoles(args) -> tuple[DipoleVector, DipoleVector]:
    if args.dA is not None or args.dB is not None:
        if args.dA is None or args.dB is None:
            raise ConfigError("dA/dB: give both explicit dipoles or use --orient")
        return DipoleVector(*args.dA), DipoleVector(*args.dB)
    return scenarios.orientation_dipoles(_get(args, "orient", "zz"), _get(args, "dipole", DEFAULT_DIPOLE))


def _environment(args) -> Environment:
    return Environment(_get(args, "env", "free"))


def _rate_config(args) -> PairConfig:
    d_a, d_b = _dipoles(args)
    if args.rA is not None:
        r_a = args.rA
    elif args.zA is not None:
        r_a = (0.0, 0.0, args.zA)
    else:
        raise ConfigError("zA: position of atom A is required (--zA or --rA)")
    if args.rB is not None:
        r_b = args.rB
    elif args.zB is not None:
        r_b = (0.0, 0.0, args.zB)
    else:
        raise ConfigError("zB: position of atom B is required (--zB or --rB)")
    return PairConfig.build(r_a, d_a, r_b, d_b, _get(args, "omega0", OMEGA_HYDROGEN),
                            DickeParity.parse(_get(args, "parity", "sym")), _environment(args))


def _cmd_rate(args, out) -> int:
    cfg = _rate_config(args)
    result = collective_rate(cfg)
    result.check()
    lam = transition_wavelength(cfg.omega0)
    rows = [
        ("environment", cfg.environment.value),
        ("parity", cfg.parity.name.lower()),
        ("omega0_rad_s", f"{cfg.omega0:.6g}"),
        ("lambda0_m", f"{lam:.6g}"),
    ] + [(k, f"{v:.10g}") for k, v in result.as_dict().items()]
    width = max(len(k) for k, _ in rows)
    for key, value in rows:
        print(f"{key:<{width}} = {value}", file=out)
    if args.csv:
        spec_row = scenarios.SweepTable(None, [cfg.atom_a.position.z], (result,))
        scenarios.emit_csv(spec_row, args.csv)
    return 0


def _cmd_sweep(args, out) -> int:
    if not args.out:
        raise ConfigError("out: CSV output path is required")
    env = _environment(args)
    omega0 = _get(args, "omega0", OMEGA_HYDROGEN)
    lam = transition_wavelength(omega0)
    varied = _get(args, "varied", "z_A")
    z_b = _get(args, "zB", 10 * scenarios.ANGSTROM if env is Environment.PERFECT_MIRROR else 0.0)
    d_a, d_b = _dipoles(args)
    template = PairConfig.build((0.0, 0.0, z_b + 1.0), d_a, (0.0, 0.0, z_b), d_b, omega0,
                                DickeParity.parse(_get(args, "parity", "sym")), env)
    default_min = z_b + 10 * scenarios.ANGSTROM if varied == "z_A" else 10 * scenarios.ANGSTROM
    spec = scenarios.SweepSpec(
        template, varied, _get(args, "min", default_min), _get(args, "max", 10 * lam),
        _get(args, "count", 2000), _get(args, "spacing", "linear"),
        orientation=_get(args, "orient", "custom"),
        normalization=_get(args, "normalization", "single_atom"),
        label=f"{env.value} {template.parity.name.lower()}",
    )
    table = scenarios.run_sweep(spec, _get(args, "workers", 1))
    scenarios.emit_csv(table, args.out)
    if args.svg:
        scenarios.emit_svg([table], args.svg, y_label=f"scaled rate ({spec.normalization})")
    print(f"wrote {len(table)} rows to {args.out}", file=out)
    return 0


def _cmd_figure(args, out) -> int:
    kwargs = {"count": _get(args, "count", 2000)}
    if args.orient:
        kwargs["fig1_orientation"] = args.orient
    preset = scenarios.figure_preset(args.id, **kwargs)
    tables = scenarios.run_preset(preset, _get(args, "workers", 1))
    path = args.out or f"{preset.id}.csv"
    scenarios.emit_csv(tables, path)
    if args.svg:
        scenarios.emit_svg(tables, args.svg, title=f"{preset.id}: {preset.title}", x_label=preset.x_label,
                           y_label=f"scaled rate ({preset.normalization})")
    print(f"{preset.id}: {len(tables)} curves x {len(tables[0])} rows -> {path}", file=out)
    return 0


def _cmd_validate(args, out) -> int:
    quad = oracle.QuadratureSpec(_get(args, "order_theta", 64), _get(args, "order_phi", 128))
    start = time.perf_counter()
    checks = validation.run_all(_get(args, "samples", 200), _get(args, "seed", 0), quad)
    for c in checks:
        print(c.line(), file=out)
    ok = all(c.passed for c in checks)
    print(f"{'all checks passed' if ok else 'VALIDATION FAILED'} "
          f"({time.perf_counter() - start:.1f} s)", file=out)
    return 0 if ok else 1


_COMMANDS = {"rate": _cmd_rate, "sweep": _cmd_sweep, "figure": _cmd_figure, "validate": _cmd_validate}


def run(argv=None, out=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = _merge_config(parser, args)
        return _COMMANDS[args.command](args, out)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
