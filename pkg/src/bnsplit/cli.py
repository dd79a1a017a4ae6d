"""Command-line interface: ``bnsplit compute | verify | jones | cube``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 size guard.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .complex import BNComplex
from .cube import DEFAULT_MAX_CROSSINGS, Cube, CubeSizeError, EdgeError
from .diagram import PDError, parse_pd
from .homology import THEORIES, compute
from .verify import CHECKS, FAULTS, jones_polynomial, laurent_str, run_checks

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

_FAULT_PRAGMA = re.compile(r"^\s*#!\s*fault\s+(\S+)", re.MULTILINE)


def _read_pd(arg: str) -> tuple[str, str]:
    """Return ``(text, name)`` from a file path or inline PD text."""
    path = Path(arg)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8"), path.stem
    except OSError:
        pass
    return arg, ""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnsplit",
        description="Khovanov / Bar-Natan homology over F2 and checks of the reduced splitting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("pd", help="PD file or inline PD text, e.g. 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'")
        p.add_argument(
            "--max-crossings",
            type=int,
            default=DEFAULT_MAX_CROSSINGS,
            help=f"size guard on the number of crossings (default {DEFAULT_MAX_CROSSINGS})",
        )

    p = sub.add_parser("compute", help="print a homology report")
    common(p)
    p.add_argument("--theory", choices=THEORIES, default="kh")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("verify", help="run identity checks; exit 1 if any fails")
    common(p)
    p.add_argument(
        "--checks",
        default="all",
        help="comma-separated subset of " + ",".join(CHECKS) + " (default: all)",
    )
    p.add_argument(
        "--fault",
        choices=sorted(FAULTS),
        help="run on a deliberately broken complex (negative control); "
        "a '#!fault NAME' line in the PD file does the same",
    )
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("jones", help="print the state-sum Jones polynomial")
    common(p)

    p = sub.add_parser("cube", help="debug dump of the cube of resolutions")
    common(p)
    return parser


def _select_checks(arg: str) -> list[str]:
    if arg == "all":
        return list(CHECKS)
    names = [s.strip() for s in arg.split(",") if s.strip()]
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise PDError(f"unknown check(s): {', '.join(unknown)}")
    return names


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    out = sys.stdout
    try:
        text, name = _read_pd(args.pd)
        diagram = parse_pd(text, name=name)
        if args.command == "compute":
            bn = BNComplex(Cube(diagram, args.max_crossings))
            module = compute(bn, args.theory, name or str(diagram))
            out.write(module.to_json() + "\n" if args.format == "json" else module.table())
            return EXIT_OK
        if args.command == "jones":
            cube = Cube(diagram, args.max_crossings)
            out.write(laurent_str(jones_polynomial(cube)) + "\n")
            return EXIT_OK
        if args.command == "cube":
            out.write(Cube(diagram, args.max_crossings).dump())
            return EXIT_OK
        checks = _select_checks(args.checks)
        fault = args.fault
        if fault is None:
            m = _FAULT_PRAGMA.search(text)
            if m:
                fault = m.group(1)
                if fault not in FAULTS:
                    raise PDError(f"unknown fault {fault!r} in pragma")
        reports = run_checks(diagram, checks, fault, args.max_crossings)
    except CubeSizeError as exc:
        print(f"bnsplit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PDError, EdgeError) as exc:
        print(f"bnsplit: {exc}", file=sys.stderr)
        return EXIT_INPUT

    ok = all(r.passed for r in reports)
    if args.format == "json":
        payload = {
            "diagram": name or str(diagram),
            "fault": fault,
            "status": "pass" if ok else "fail",
            "reports": [r.to_dict() for r in reports],
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        for r in reports:
            print(r.summary(), file=sys.stderr)
    else:
        for r in reports:
            out.write(r.summary() + "\n")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
