"""
Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 usage or validation
error, 3 numerical failure.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from mirrorwell import __version__
from mirrorwell.config import settings
from mirrorwell.exceptions import Error, NumericalError, ValidationError
from mirrorwell.export import (
    curve_for,
    records_to_csv,
    records_to_json,
    render_potential_svg,
    render_records_text,
    render_svg,
    render_table_csv,
    render_table_json,
    render_table_text,
    to_csv,
)
from mirrorwell.logging_config import configure_logging, get_logger
from mirrorwell.oracle import cross_check
from mirrorwell.polyparams import parameter_set
from mirrorwell.potentials import evaluate, potential_spec
from mirrorwell.run_context import run_context
from mirrorwell.services import compute_spectrum, resolve_states, sample_states, well_kind
from mirrorwell.spectrum import splitting_table
from mirrorwell.tables import build_table
from mirrorwell.validation import parse_index_list, parse_real, parse_sector, validate_degree

logger = get_logger(__name__)

FORMATS = ("text", "csv", "json", "svg")
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3
EXIT_CODES_HELP = """exit codes:
  0  success (verify: PASS)
  1  verify: FAIL, some level deviates by more than --tol
  2  invalid input
  3  numerical failure (window exhausted, grid too coarse, insufficient decay)
"""


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
        logger.debug("Output written", path=out, size=len(text))
    else:
        sys.stdout.write(text)


def _require_format(args, allowed: Sequence[str]) -> str:
    if args.format not in allowed:
        raise ValidationError(f"format {args.format} is not available for {args.command}; choose from {', '.join(allowed)}")
    return args.format


def _optional_real(text: Optional[str], name: str) -> Optional[float]:
    return None if text is None else parse_real(text, name)


def cmd_tables(args) -> int:
    fmt = _require_format(args, ("text", "csv", "json"))
    table = build_table(args.which, parallel=args.parallel)
    render = {"text": render_table_text, "csv": render_table_csv, "json": render_table_json}[fmt]
    _emit(render(table), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    fmt = _require_format(args, ("text", "csv", "json"))
    report = compute_spectrum(
        args.potential,
        parse_real(args.separation, "separation"),
        args.count,
        sector=parse_sector(args.sector),
        e_max=_optional_real(args.e_max, "e-max"),
        step=_optional_real(args.step, "step"),
        g=parse_real(args.coupling, "coupling"),
    )
    render = {"text": render_records_text, "csv": records_to_csv, "json": records_to_json}[fmt]
    _emit(render(report.records), args.out)
    if not report.complete:
        sys.stderr.write(f"warning: {report.message}\n")
    return EXIT_OK


def cmd_poly(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    n = validate_degree(args.n)
    params = parameter_set(n)
    sector = parse_sector(args.sector)
    if fmt == "json":
        payload = params.model_dump()
        if sector is not None:
            payload.pop("odd_params" if sector.value == "even" else "even_params")
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK

    lines = []
    if sector is None or sector.value == "even":
        lines.append(f"n={n} even ({params.even_count}): " + ", ".join(f"{d:.6g}" for d in params.even_params))
    if sector is None or sector.value == "odd":
        lines.append(f"n={n} odd ({params.odd_count}): " + ", ".join(f"{d:.6g}" for d in params.odd_params))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_wavefn(args) -> int:
    fmt = "svg" if args.svg else "csv" if args.csv else args.format
    if fmt == "text":
        fmt = "csv"
    kind = well_kind(args.potential)
    d = parse_real(args.separation, "separation")
    sector = parse_sector(args.sector)
    indices = parse_index_list(args.index) if args.index is not None else None
    energy = _optional_real(args.energy, "energy")

    states = resolve_states(kind, d, indices=indices, energy=energy, sector=sector)
    sampled = sample_states(
        kind,
        d,
        states,
        x_min=_optional_real(args.x_min, "x-min"),
        x_max=_optional_real(args.x_max, "x-max"),
        points=args.points,
        unit_norm=not args.raw,
    )

    if fmt == "svg":
        energies = ", ".join(f"{w.energy:.6g}" for w in sampled)
        _emit(render_svg([curve_for(w) for w in sampled], f"d={d:g}, E={energies}, {kind.value}"), args.out)
    elif fmt == "json":
        payload = [w.to_response().model_dump(mode="json") for w in sampled]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        if len(sampled) != 1:
            raise ValidationError("CSV export holds a single state; pass one index or use --format json")
        _emit(to_csv(sampled[0]), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    kind = well_kind(args.potential)
    report = cross_check(kind, parse_real(args.separation, "separation"), args.count, tolerance=parse_real(args.tol, "tol"))
    if fmt == "json":
        _emit(report.model_dump_json(indent=2) + "\n", args.out)
    else:
        lines = [f"{'k':>3}  {'sector':<6} {'connection':>16} {'oracle':>16} {'deviation':>11}"]
        for row in report.rows:
            sector = row.sector.value if row.sector else "-"
            lines.append(f"{row.index:>3}  {sector:<6} {row.connection:>16.10f} {row.oracle:>16.10f} {row.deviation:>11.3e}")
        verdict = "PASS" if report.passed else "FAIL"
        lines.append(f"max deviation {report.max_deviation:.3e} (tolerance {report.tolerance:g}, oracle error {report.oracle_est_error:.1e}): {verdict}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_splitting(args) -> int:
    fmt = _require_format(args, ("text", "json"))
    kind = well_kind(args.potential)
    rows = splitting_table(parse_real(args.separation, "separation"), args.levels, kind)
    if fmt == "json":
        _emit(json.dumps([row.model_dump() for row in rows], sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"{'n':>2} {'E_n^e':>14} {'E_n^o':>14} {'gap':>12} {'eps_e':>12} {'eps_o':>12}"]
        for row in rows:
            lines.append(
                f"{row.level:>2} {row.even:>14.9f} {row.odd:>14.9f} {row.gap:>12.4e} {row.epsilon_even:>12.4e} {row.epsilon_odd:>12.4e}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_potential(args) -> int:
    fmt = _require_format(args, ("csv", "json", "svg", "text"))
    spec = potential_spec(args.potential, d=parse_real(args.separation, "separation"), g=parse_real(args.coupling, "coupling"))
    x_max = _optional_real(args.x_max, "x-max")
    x_min = _optional_real(args.x_min, "x-min")
    x_max = spec.d + 4.0 if x_max is None else x_max
    x_min = -x_max if x_min is None else x_min
    if not x_min < x_max or args.points < 2:
        raise ValidationError("potential plot needs x-min < x-max and at least 2 points")
    xs = np.linspace(x_min, x_max, args.points)

    if fmt == "svg":
        _emit(render_potential_svg(spec, xs, y_cap=_optional_real(args.y_max, "y-max")), args.out)
        return EXIT_OK
    values = np.asarray(evaluate(spec, xs), dtype=float)
    if fmt == "json":
        payload = {"potential": spec.name, "d": spec.d, "xs": xs.tolist(), "values": [v if np.isfinite(v) else None for v in values.tolist()]}
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = ["x,V"] + [f"{x:.17g},{v:.17g}" for x, v in zip(xs, values)]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("mirrorwell.main:app", host=args.host or settings.api_host, port=args.port or settings.api_port, log_config=None)
    return EXIT_OK


def _add_output(parser: argparse.ArgumentParser, default: str = "text") -> None:
    parser.add_argument("--format", choices=FORMATS, default=default, help=f"Output format (default: {default})")
    parser.add_argument("--out", help="Write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorwell",
        description="Exact spectra of the mirror symmetric double and single wells",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="Verbose colored logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="Regenerate table 1-4")
    p.add_argument("which", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--parallel", action="store_true", help="Compute rows in a process pool")
    _add_output(p)
    p.set_defaults(handler=cmd_tables)

    p = sub.add_parser("spectrum", help="Lowest eigenvalues of a catalog potential")
    p.add_argument("-p", "--potential", required=True)
    p.add_argument("-d", "--separation", default="0")
    p.add_argument("-n", "--count", type=int, default=7)
    p.add_argument("-g", "--coupling", default="1")
    p.add_argument("--sector", default="both")
    p.add_argument("--e-max", dest="e_max")
    p.add_argument("--step")
    _add_output(p)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("poly", help="Separations with closed-form states of energy 2n+1")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--sector", default="both")
    _add_output(p)
    p.set_defaults(handler=cmd_poly)

    p = sub.add_parser("wavefn", help="Sample eigenfunctions as CSV, JSON or SVG")
    p.add_argument("-p", "--potential", required=True)
    p.add_argument("-d", "--separation", required=True)
    p.add_argument("-E", "--energy")
    p.add_argument("--index")
    p.add_argument("--sector", default="both")
    p.add_argument("--x-min", dest="x_min")
    p.add_argument("--x-max", dest="x_max")
    p.add_argument("--points", type=int, default=801)
    p.add_argument("--raw", action="store_true", help="Skip unit normalization")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--csv", action="store_true")
    _add_output(p, default="csv")
    p.set_defaults(handler=cmd_wavefn)

    p = sub.add_parser(
        "verify",
        help="Cross-check against the finite-difference oracle",
        description="Cross-check against the finite-difference oracle. Exits 0 on PASS and 1 on FAIL.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("-p", "--potential", required=True)
    p.add_argument("-d", "--separation", required=True)
    p.add_argument("-n", "--count", type=int, default=7)
    p.add_argument("--tol", default="1e-5")
    _add_output(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("splitting", help="Even/odd pairs and their gaps")
    p.add_argument("-p", "--potential", default="D")
    p.add_argument("-d", "--separation", required=True)
    p.add_argument("--levels", type=int, default=4)
    _add_output(p)
    p.set_defaults(handler=cmd_splitting)

    p = sub.add_parser("potential", help="Sample or plot a catalog potential")
    p.add_argument("-p", "--potential", required=True)
    p.add_argument("-d", "--separation", default="0")
    p.add_argument("-g", "--coupling", default="1")
    p.add_argument("--x-min", dest="x_min")
    p.add_argument("--x-max", dest="x_max")
    p.add_argument("--y-max", dest="y_max")
    p.add_argument("--points", type=int, default=401)
    _add_output(p, default="csv")
    p.set_defaults(handler=cmd_potential)

    p = sub.add_parser("serve", help="Run the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(
        debug=args.debug or settings.debug_mode,
        log_file_path=settings.log_file_path,
        log_level=settings.log_level,
        rotation_hours=settings.log_rotation_hours,
        retention_days=settings.log_retention_days,
    )

    with run_context() as run_id:
        logger.debug("Command started", command=args.command, run_id=run_id)
        try:
            return args.handler(args)
        except ValidationError as e:
            sys.stderr.write(f"error: {e.message}\n")
            return EXIT_USAGE
        except NumericalError as e:
            sys.stderr.write(f"numerical failure [{e.error_code}]: {e.message}\n")
            return EXIT_NUMERICAL
        except Error as e:
            sys.stderr.write(f"error: {e.message}\n")
            return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
