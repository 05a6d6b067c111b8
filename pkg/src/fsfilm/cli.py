"""Command-line front end.

    fsfilm run --config run.cfg [--out FILE] [--format csv|gnuplot]
    fsfilm preset --id fig1 [--out FILE] [--format csv|gnuplot]
    fsfilm point --omega 1e14 --d 1e-6 --theta 0 --p 0.3 [--variant thin-kd]

Exit status: 0 on success, 1 on invalid input or I/O failure, 2 on a
numerical failure (quadrature non-convergence, degenerate denominator).
"""
import argparse
import sys

from . import __version__, quadrature
from .config import load_config
from .output import emit, format_value, render
from .physics import SODIUM, FilmConfig, ModelVariant, WaveConfig, evaluate
from .sweep import PRESET_IDS, figure_preset, run_sweep

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def _write(result, fmt, out):
    if out:
        emit(result, fmt, out)
    else:
        sys.stdout.write(render(result, fmt))


def _cmd_run(args):
    cfg = load_config(args.config)
    fmt = args.format or cfg.format
    _write(run_sweep(cfg.sweep, workers=args.workers), fmt, args.out or cfg.out)


def _cmd_preset(args):
    spec = figure_preset(args.id).spec
    _write(run_sweep(spec, workers=args.workers), args.format or "csv", args.out)


def _complex_fields(name, z):
    if z is None:
        return [(f"{name}_re", "none"), (f"{name}_im", "none")]
    return [(f"{name}_re", format_value(z.real)), (f"{name}_im", format_value(z.imag))]


def _cmd_point(args):
    film = FilmConfig(args.d, args.p, complex(args.G))
    wave = WaveConfig(args.omega, args.theta)
    c = evaluate(SODIUM, film, wave, ModelVariant.parse(args.variant), args.rel_tol)
    fields = [("T", format_value(c.T)), ("R", format_value(c.R)), ("A", format_value(c.A))]
    for name in ("sigma_d", "Z1", "Z2", "P1", "P2"):
        fields += _complex_fields(name, getattr(c, name))
    for key, value in fields:
        print(f"{key} = {value}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fsfilm",
        description="Transmission, reflection and absorption of p-waves by thin metal films.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="sweep described by a key = value config file")
    run.add_argument("--config", required=True)
    run.add_argument("--out")
    run.add_argument("--format", choices=("csv", "gnuplot"))
    run.add_argument("--workers", type=int, default=1)
    run.set_defaults(func=_cmd_run)

    preset = sub.add_parser("preset", help="regenerate one of the sodium figures as data")
    preset.add_argument("--id", required=True, choices=PRESET_IDS)
    preset.add_argument("--out")
    preset.add_argument("--format", choices=("csv", "gnuplot"))
    preset.add_argument("--workers", type=int, default=1)
    preset.set_defaults(func=_cmd_preset)

    point = sub.add_parser("point", help="single sodium-film evaluation with diagnostics")
    point.add_argument("--omega", type=float, required=True, help="angular frequency [rad/s]")
    point.add_argument("--d", type=float, required=True, help="film thickness [cm]")
    point.add_argument("--theta", type=float, default=0.0, help="incidence angle [rad]")
    point.add_argument("--p", type=float, required=True, help="specularity in [0, 1]")
    point.add_argument("--variant", default=ModelVariant.THIN_KD.value,
                       help="full-kd, thin-kd or low-freq (default: thin-kd)")
    point.add_argument("--G", default="1", help="field-penetration factor, may be complex")
    point.add_argument("--rel-tol", type=float, default=quadrature.DEFAULT_REL_TOL)
    point.set_defaults(func=_cmd_point)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are validation failures here
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        args.func(args)
    except ArithmeticError as exc:
        print(f"fsfilm: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        filename = f": {exc.filename}" if exc.filename else ""
        print(f"fsfilm: {exc.strerror or exc}{filename}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"fsfilm: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
