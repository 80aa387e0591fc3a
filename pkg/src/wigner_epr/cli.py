"""Command-line front end: ``wigner-epr <mode> [options]``.

Exit status: 0 when every residual passes, 1 when any row is flagged,
2 on a usage or output error.
"""

from __future__ import annotations

import argparse
import sys

from .sweep import (
    FORMATS,
    MODES,
    TOL_ENV,
    Axis,
    SweepSpec,
    SweepSpecError,
    default_tolerance,
    format_rows,
    report_compensation,
    run_sweep,
)

_HELP = {
    "delta-surface": "Wigner angle delta over (v/c, V/c) for the orthogonal observer",
    "epsilon-surface": "polarization rotation epsilon over (V/c, phi)",
    "chsh-massive": "CHSH value of the spin pair under the fixed setting over (v/c, V/c)",
    "chsh-massless": "CHSH value of the photon pair under the fixed setting over (V/c, phi)",
    "compensation-check": "summary of how well the compensated settings restore 2 sqrt 2",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _axis(text: str) -> Axis:
    try:
        return Axis.parse(text)
    except SweepSpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wigner-epr",
        description="Parameter sweeps of Wigner rotations, EPR correlations and CHSH values.",
        epilog=f"Set {TOL_ENV} to override the residual tolerance (default 1e-9).",
    )
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    for mode in MODES:
        p = sub.add_parser(mode, help=_HELP[mode], description=_HELP[mode])
        p.add_argument("--grid-xi", type=_axis, metavar="A:B:N", help="particle velocity v/c grid (or a,b,c list)")
        p.add_argument("--grid-chi", type=_axis, metavar="A:B:N", help="observer velocity V/c grid")
        p.add_argument("--grid-phi", type=_axis, metavar="A:B:N", help="observer azimuth grid in radians (pi allowed)")
        p.add_argument("--format", choices=FORMATS, default="csv", dest="fmt")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=0, help="seed for --samples")
        p.add_argument("--samples", type=int, default=0, help="extra random points drawn within the grid bounds")
    return parser


def spec_from_args(args: argparse.Namespace) -> SweepSpec:
    kw = {}
    for name in ("xi", "chi", "phi"):
        axis = getattr(args, f"grid_{name}")
        if axis is not None:
            kw[name] = axis
    return SweepSpec(
        mode=args.mode, fmt=args.fmt, seed=args.seed, samples=args.samples, tolerance=default_tolerance(), **kw
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        spec.validate()
        if spec.mode == "compensation-check":
            summary = report_compensation(spec)
            rows = [summary]
            flagged = summary["flagged_rows"] > 0
        else:
            rows = run_sweep(spec)
            flagged = any(r["flagged"] for r in rows)
    except SweepSpecError as exc:
        parser.print_usage(sys.stderr)
        print(f"wigner-epr: error: {exc}", file=sys.stderr)
        return 2
    text = format_rows(rows, spec.fmt)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"wigner-epr: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 1 if flagged else 0


if __name__ == "__main__":
    sys.exit(main())
