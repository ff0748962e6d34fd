"""Command-line front end.

Exit codes: 0 success, 1 input/IO error or failed checks, 2 usage error,
3 internal invariant violation (for example a homogeneity mismatch).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .ledger import ledger
from .report import InputError, density_report, dumps, ledger_markdown, ledger_report, load_point, suite_report
from .suites import ORACLE_TOL, SUITES, run_suite
from .symbols import HomogeneityError, JetDepthError, UnsupportedOrderError
from .torsion import density

REPORT_DIR_ENV = "SPECTORSION_REPORT_DIR"

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

INTERNAL_ERRORS = (HomogeneityError, JetDepthError, UnsupportedOrderError)


def report_dir() -> Path:
    return Path(os.environ.get(REPORT_DIR_ENV, "reports"))


def resolve_out(out: Optional[str], default_name: str) -> Path:
    """Explicit absolute paths win; relative ones land in the report directory if the env var is set."""
    if out is None:
        return report_dir() / default_name
    path = Path(out)
    if not path.is_absolute() and REPORT_DIR_ENV in os.environ:
        return report_dir() / path
    return path


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _read_point(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_point(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.seed, args.trials, args.tol)
    doc = suite_report(args.suite, args.seed, args.trials, checks)
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        detail = f" ({c['detail']})" if c["detail"] else ""
        print(f"{status} [{c['suite']}] {c['name']}{detail}")
    out = resolve_out(args.out, f"verify-{args.suite}-seed{args.seed}.json")
    _write(out, dumps(doc))
    print(f"{'all checks passed' if doc['passed'] else 'some checks FAILED'}; report written to {out}")
    return EXIT_OK if doc["passed"] else EXIT_INPUT


def cmd_density(args) -> int:
    spec = _read_point(args.input)
    point = spec["point"]
    reports = [density(point, mode) for mode in spec["modes"]]
    doc = density_report(point, reports, spec["thm47_variant"], args.seed)
    out = resolve_out(args.out, f"density-{Path(args.input).stem}.json")
    _write(out, dumps(doc))
    for r in reports:
        print(f"{point.kind} n={point.n} mode={r.mode}: total {r.total} x Vol*trid = {r.numeric_density.real:.10g}"
              + (f" {r.numeric_density.imag:+.10g}i" if r.numeric_density.imag else ""))
    print(f"report written to {out}")
    return EXIT_OK


def cmd_ledger(args) -> int:
    spec = _read_point(args.input)
    led = ledger(spec["point"])
    if args.format == "markdown":
        text = ledger_markdown(led)
        suffix = "md"
    else:
        text = dumps(ledger_report(led, args.seed))
        suffix = "json"
    out = resolve_out(args.out, f"ledger-{Path(args.input).stem}.{suffix}")
    _write(out, text)
    print(f"ledger with {len(led.rows)} rows written to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectorsion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=None, help="per-suite default when omitted")
    v.add_argument("--tol", type=float, default=ORACLE_TOL, help="numeric oracle tolerance")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="compute term densities for a point file")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out")
    d.add_argument("--seed", type=int, default=None, help="recorded in the report")
    d.set_defaults(func=cmd_density)

    led = sub.add_parser("ledger", help="emit the discrepancy ledger for a point file")
    led.add_argument("--in", dest="input", required=True)
    led.add_argument("--out")
    led.add_argument("--format", choices=["json", "markdown"], default="json")
    led.add_argument("--seed", type=int, default=None, help="recorded in the report")
    led.set_defaults(func=cmd_ledger)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be positive")
    if getattr(args, "tol", 0) < 0:
        parser.error("--tol must be non-negative")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INTERNAL_ERRORS as exc:
        print(f"internal invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
