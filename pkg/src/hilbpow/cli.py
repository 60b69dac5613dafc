"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a verdict failed,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .families import DEFAULT_K_MAX, FamilyKind, FamilySpec, is_reduction
from .hilbert import EMPTY, data_or_empty, dimension, length, series_of_quotient_ring
from .monomial import MonomialIdeal, saturate
from .newton import integral_closure, relative_integral_closure
from .report import DEFAULT_VERDICTS, ExperimentManifest, Job, ManifestError, load_manifest, render, run
from .textio import IdealParseError, format_ideal, parse_ideal

EXIT_OK, EXIT_USAGE, EXIT_VERDICT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _ring_args(p):
    p.add_argument("--ring", type=int, required=True, metavar="N", help="number of variables")
    p.add_argument("--ideal", required=True, help='generators, e.g. "x1^2*x2, x3"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbpow", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hilbpow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hilbert", help="Hilbert series and coefficients of S/I")
    _ring_args(p)
    p.add_argument("--out")

    p = sub.add_parser("family", help="run one family of subquotients")
    _ring_args(p)
    p.add_argument("--ideal-j", help="second ideal for SYMBOLIC_J_VS_POWER, CLOSURE_PAIR, REES_PAIR")
    p.add_argument("--family", required=True, choices=[k.value for k in FamilyKind])
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--gmax", type=int, default=6)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--format", choices=["json", "tsv", "plotdata"], default="json")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run every job of a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--format", choices=["json", "tsv", "plotdata"], default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker count")
    p.add_argument("--timings", action="store_true", help="include per-job seconds in JSON")
    p.add_argument("--out")

    p = sub.add_parser("closure", help="integral closure and relative integral closure")
    _ring_args(p)
    p.add_argument("--out")

    p = sub.add_parser("saturate", help="saturation I : J^inf (J defaults to the maximal ideal)")
    _ring_args(p)
    p.add_argument("--by", help="ideal J to saturate by")
    p.add_argument("--out")

    p = sub.add_parser("reduction", help="least n with J I^n = I^(n+1)")
    _ring_args(p)
    p.add_argument("--ideal-j", required=True)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--out")
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _cmd_hilbert(args) -> int:
    I = parse_ideal(args.ideal, args.ring)
    h = series_of_quotient_ring(I)
    data = data_or_empty(h)
    d = dimension(h)
    out = {
        "ideal": format_ideal(I),
        "series": str(h),
        "numerator": list(h.numerator),
        "dimension": "EMPTY" if d is EMPTY else d,
        "data": data.to_json(),
        "length": length(h) if d is EMPTY or d == 0 else None,
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def _cmd_family(args) -> int:
    n = args.ring
    I = parse_ideal(args.ideal, n)
    J = parse_ideal(args.ideal_j, n) if args.ideal_j else None
    try:
        spec = FamilySpec(FamilyKind(args.family), I, J, (args.kmin, args.kmax))
    except ValueError as exc:
        raise ManifestError(str(exc), job=args.family) from exc
    ideals = {"I": I} if J is None else {"I": I, "J": J}
    job = Job(args.family, spec, tuple(DEFAULT_VERDICTS[spec.kind]), args.nmax)
    manifest = ExperimentManifest(n, ideals, [job], g_max=args.gmax)
    report = run(manifest)
    _emit(render(report, args.format), args.out)
    return _report_exit(report)


def _report_exit(report) -> int:
    if report.any_job_error:
        return EXIT_INTERNAL
    if report.any_failed_verdict:
        return EXIT_VERDICT
    return EXIT_OK


def _cmd_verify(args) -> int:
    path = Path(args.manifest)
    manifest = load_manifest(path.read_text(encoding="utf-8"), path.parent)
    report = run(manifest, workers=args.jobs)
    _emit(render(report, args.format, timings=args.timings), args.out)
    return _report_exit(report)


def _cmd_closure(args) -> int:
    I = parse_ideal(args.ideal, args.ring)
    out = {
        "ideal": format_ideal(I),
        "closure": format_ideal(integral_closure(I)),
        "relative_closure": format_ideal(relative_integral_closure(I)),
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def _cmd_saturate(args) -> int:
    I = parse_ideal(args.ideal, args.ring)
    J = parse_ideal(args.by, args.ring) if args.by else MonomialIdeal.maximal(args.ring)
    out = {"ideal": format_ideal(I), "by": format_ideal(J), "saturation": format_ideal(saturate(I, J))}
    _emit(_dump(out), args.out)
    return EXIT_OK


def _cmd_reduction(args) -> int:
    I = parse_ideal(args.ideal, args.ring)
    J = parse_ideal(args.ideal_j, args.ring)
    n = is_reduction(J, I, args.nmax)
    out = {"I": format_ideal(I), "J": format_ideal(J), "n_max": args.nmax, "reduction_n": n}
    _emit(_dump(out), args.out)
    return EXIT_OK


COMMANDS = {
    "hilbert": _cmd_hilbert,
    "family": _cmd_family,
    "verify": _cmd_verify,
    "closure": _cmd_closure,
    "saturate": _cmd_saturate,
    "reduction": _cmd_reduction,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (IdealParseError, ManifestError, OSError, ValueError) as exc:
        print(f"hilbpow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"hilbpow: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
