"""Command-line entry point: ``hopfact run <config>`` and ``hopfact all``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .quotient import WordBudgetExceeded
from .scenario import (ScenarioError, bundled_scenarios, emit_report, load_scenario, run_scenario,
                       validate)


def _write(data: bytes, out: Optional[str]) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="hopfact", description="Exact verification of Hopf actions on integral models.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario config")
    run.add_argument("config")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--cutoff", type=int, default=None, help="override the degree cutoff D")
    run.add_argument("--out", default=None, help="write the report to this path")
    every = sub.add_parser("all", help="run every bundled scenario")
    every.add_argument("--format", choices=("text", "json"), default="json")
    every.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            cfg = load_scenario(args.config)
            if args.cutoff is not None:
                cfg.params["cutoff"] = args.cutoff
                validate(cfg)
            reports = run_scenario(cfg)
            passed = reports.passed
        else:
            reports = [run_scenario(cfg) for cfg in bundled_scenarios()]
            passed = all(r.passed for r in reports)
    except (ScenarioError, WordBudgetExceeded, OSError) as exc:
        print(f"hopfact: error: {exc}", file=sys.stderr)
        return 2
    _write(emit_report(reports, args.format), args.out)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
