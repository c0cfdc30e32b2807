"""``canonical-spectra`` command line front end.

Data goes to ``--output`` or stdout while diagnostics go to stderr.  Exit
status 0 means success and 1 a failed verification check; invalid input or
configuration gives 2 and a failed computation gives 3.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from typing import Optional, Sequence

import mpmath as mp

from . import eigensolver, number_theory, plotting, scan, verification
from .errors import ConfigurationError, DomainError, SpectraError
from .spectral_matrix import NATIVE_BITS, check_precision

log = logging.getLogger("canonical_spectra")

PRECISION_ENV = "CANONICAL_SPECTRA_PRECISION"
SPECTRUM_COLUMNS = ("alpha", "n", "mu", "lambda", "delta", "residual", "method", "precision_bits")
SCAN_COLUMNS = ("mu", "log_abs_det_scaled", "smallest_singular_value")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return NATIVE_BITS
    try:
        return check_precision(int(raw))
    except ValueError:
        raise ConfigurationError(f"{PRECISION_ENV}={raw!r} is not a valid precision (integer >= 53)") from None


def format_number(x, precision_bits: int) -> str:
    """Shortest text that parses back to the same value at ``precision_bits``."""
    if precision_bits <= NATIVE_BITS:
        return repr(float(x))
    with mp.workprec(precision_bits):
        return mp.nstr(mp.mpf(x), mp.libmp.repr_dps(precision_bits))


def record_row(record: eigensolver.EigenvalueRecord) -> dict:
    bits = record.precision_bits
    return {
        "alpha": record.alpha,
        "n": record.n,
        "mu": format_number(record.mu, bits),
        "lambda": format_number(record.lam, bits),
        "delta": format_number(record.delta, bits),
        "residual": format_number(record.residual, bits),
        "method": record.method.value,
        "precision_bits": bits,
    }


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary sibling and rename, so readers never see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, output: Optional[str]) -> None:
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def _render(rows: list[dict], columns, fmt: str, series: Optional[plotting.Series]) -> str:
    if fmt == "csv":
        return to_csv(rows, columns)
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if series is None:
        raise DomainError("nothing to plot for this command")
    return plotting.render_svg(series)


def cmd_spectrum(args) -> int:
    records = eigensolver.spectrum(args.alpha, args.count, args.precision)
    rows = [record_row(r) for r in records]
    series = plotting.spectrum_series(args.alpha, records)
    emit(_render(rows, SPECTRUM_COLUMNS, args.format, series), args.output)
    if args.plot:
        write_atomic(args.plot, plotting.render_svg(series))
    return EXIT_OK


def cmd_scan(args) -> int:
    lo, hi, step = scan.parse_range(args.mu)
    rows = scan.scan(args.alpha, lo, hi, step, args.precision)
    series = plotting.scan_series(args.alpha, rows)
    if args.minima:
        minima = scan.local_minima(rows, args.alpha, args.precision)
        data = [{"mu_min": repr(m)} for m in minima]
        columns = ("mu_min",)
    else:
        data = [{"mu": repr(r.mu), "log_abs_det_scaled": repr(r.log_abs_det_scaled), "smallest_singular_value": repr(r.smallest_singular_value)} for r in rows]
        columns = SCAN_COLUMNS
    emit(_render(data, columns, args.format, series), args.output)
    if args.plot:
        write_atomic(args.plot, plotting.render_svg(series))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verification.run_suite(args.check, alpha=args.alpha, alpha_max=args.alpha_max)
    if args.format == "json":
        text = json.dumps(
            {
                "suite": report.name,
                "passed": report.passed,
                "checks": [{"name": c.name, "passed": c.passed, "measured": c.measured, "expected": c.expected} for c in report.checks],
            },
            indent=2,
        ) + "\n"
    else:
        lines = [c.line() for c in report.checks]
        lines.append(f"{report.name}: {'PASS' if report.passed else 'FAIL'} ({sum(c.passed for c in report.checks)}/{len(report.checks)})")
        text = "\n".join(lines) + "\n"
    emit(text, args.output)
    if args.plot:
        if report.series is None:
            log.warning("suite %s has no plottable series; --plot ignored", report.name)
        else:
            write_atomic(args.plot, plotting.render_svg(report.series))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_rationality(args) -> int:
    verdict = number_theory.is_cos_rational(args.alpha)
    include = True if args.full_certificate else None
    emit(json.dumps(number_theory.verdict_to_json(verdict, include), indent=2) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canonical-spectra", description="Eigenvalues of clamped (-1)^a u^(2a) = lambda u on [0, 1].")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json", "svg"), precision=True):
        if precision:
            p.add_argument("--precision", type=int, default=None, help=f"working precision in bits (default ${PRECISION_ENV} or {NATIVE_BITS})")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", "-o", help="write data here instead of stdout")

    p = sub.add_parser("spectrum", help="first eigenvalues for one alpha")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--plot", metavar="SVG", help="also write a delta_n plot")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", help="determinant and smallest singular value on a mu grid")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--mu", required=True, metavar="LO:HI:STEP", help="grid in raw mu units")
    p.add_argument("--minima", action="store_true", help="emit refined local minima of the smallest singular value")
    p.add_argument("--plot", metavar="SVG", help="also write the scan plot (mu in units of pi)")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--check", required=True, choices=verification.SUITE_NAMES)
    p.add_argument("--alpha", type=int, default=5, help="order for the asymptotics suite")
    p.add_argument("--alpha-max", type=int, default=6, help="largest order for the lambda-min suite")
    p.add_argument("--plot", metavar="SVG", help="also write the suite's measured series")
    # each suite fixes the precision its tolerances need
    common(p, formats=("text", "json"), precision=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rationality", help="certificate for the rationality of cos(pi/alpha)")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--full-certificate", action="store_true", help="include every witness coefficient")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_rationality)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)
    try:
        if hasattr(args, "precision"):
            args.precision = default_precision() if args.precision is None else check_precision(args.precision)
        return args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except Exception as exc:
        # keep exit 1 reserved for failed checks
        log.debug("unexpected failure", exc_info=True)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
