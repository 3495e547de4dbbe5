"""The cutforge command line: run .cut programs, an interactive REPL, and the
window-verification harness.

Exit codes: 0 on success, 1 when a verification suite reports failures, 2 on
usage, parse, or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import idealcalc, lang, oracle
from .errors import CutforgeError, CutSyntaxError, EvalError
from .idealcalc import ValuedField
from .lexgroup import GroupSignature
from .oracle import WindowSpec


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutforge",
        description="Exact arithmetic of final segments and valuation-ring ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a .cut program")
    run.add_argument("file", help="path to the program")
    run.add_argument("--json", action="store_true", help="emit values as JSON lines")

    sub.add_parser("repl", help="interactive session")

    verify = sub.add_parser("verify", help="run oracle and identity suites")
    verify.add_argument("--group", required=True, help="signature, e.g. Z,Z or Q^2")
    verify.add_argument("--anchor-bound", type=int, default=2)
    verify.add_argument("--box", type=int, default=6, help="window radius")
    verify.add_argument("--samples", type=int, default=2000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--suite",
        choices=("seg", "ideal", "m-properties", "all"),
        default="all",
    )
    verify.add_argument("--json", action="store_true", help="emit the report as JSON")
    verify.add_argument(
        "--report-dir",
        default=None,
        help="also write checks.csv and summary.png into this directory",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "repl":
        return _cmd_repl()
    return _cmd_verify(args)


def _cmd_run(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"cutforge: cannot read {path}: {exc}", file=sys.stderr)
        return 2
    try:
        program = lang.parse(text)
        values = lang.eval_program(program)
    except (CutSyntaxError, EvalError, CutforgeError) as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        return 2
    for value in values:
        print(lang.to_json(value) if args.json else lang.print_value(value))
    return 0


def _cmd_repl() -> int:
    env = lang.Env()
    print("cutforge repl; start with 'group Z,Z' (Ctrl-D to quit)")
    while True:
        try:
            line = input("cut> ")
        except EOFError:
            print()
            return 0
        except KeyboardInterrupt:
            print()
            return 0
        if not line.strip():
            continue
        try:
            program = lang.parse(line)
            for stmt in program.statements:
                value = lang.eval_statement(stmt, env)
                if value is not None:
                    print(lang.print_value(value))
        except (CutSyntaxError, EvalError, CutforgeError) as exc:
            print(f"error: {exc}")


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        sig = GroupSignature.parse(args.group)
    except CutforgeError as exc:
        print(f"cutforge: bad group {args.group!r}: {exc}", file=sys.stderr)
        return 2
    if args.box < 1 or args.anchor_bound < 1:
        print("cutforge: box and anchor bound must be positive", file=sys.stderr)
        return 2
    window = WindowSpec(radius=args.box, sample_count=args.samples, seed=args.seed)
    denominators = (1,) if sig.is_all_int else (1, 2)
    field = ValuedField(sig)

    from .report import CheckRow, rows_from_agreements, rows_from_checks

    rows: list[CheckRow] = []
    payload: dict = {"group": str(sig), "suites": {}}
    if args.suite in ("seg", "all"):
        seg_reports = oracle.run_seg_suite(sig, args.anchor_bound, window, denominators=denominators)
        rows += rows_from_agreements(seg_reports)
        payload["suites"]["seg"] = [lang.value_to_jsonable(r) for r in seg_reports]
    if args.suite in ("ideal", "all"):
        ideal_checks = idealcalc.run_ideal_suite(
            field, args.anchor_bound, denominators, seed=args.seed
        )
        rows += rows_from_checks("ideal", ideal_checks)
        payload["suites"]["ideal"] = [
            {
                "name": c.name,
                "description": c.description,
                "instances": c.instances,
                "failures": list(c.failures),
                "passed": c.passed,
            }
            for c in ideal_checks
        ]
    if args.suite in ("m-properties", "all"):
        m_report = idealcalc.verify_m_properties(field, args.anchor_bound, denominators)
        rows += rows_from_checks("m-properties", m_report.checks)
        payload["suites"]["m-properties"] = lang.value_to_jsonable(m_report)["checks"]

    passed = all(r.passed for r in rows)
    payload["passed"] = passed
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for row in rows:
            status = "pass" if row.passed else "FAIL"
            print(
                f"[{status}] {row.suite}:{row.name} "
                f"({row.mode}, {row.instances} instances, {row.failures} failures)"
            )
        print(f"verify {sig}: {'all checks passed' if passed else 'FAILURES PRESENT'}")
    if args.report_dir is not None:
        from .report import write_report

        paths = write_report(rows, Path(args.report_dir), f"cutforge verify {sig}")
        if not args.json:
            for p in paths:
                print(f"wrote {p}")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
