#!/usr/bin/env python3
"""Run the standard instance suite through both engines and write the
NDJSON report (exit code 0 iff every verification passed)."""

import argparse
import sys
from pathlib import Path

from planarsep.harness import render_report, run_suite, standard_suite


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5000)
    ap.add_argument("--deep-checks", action="store_true",
                    help="exhaustive duality/sandwich checks on n<=200 instances")
    ap.add_argument("--out", type=Path, default=Path("suite_report.ndjson"))
    args = ap.parse_args()

    records, summary = run_suite(standard_suite(args.max_n), deep_checks=args.deep_checks)
    args.out.write_text(render_report(records, summary))
    print(f"{summary['instances']} instances, {summary['failures']} failures")
    print(f"coverage: {summary['coverage']}")
    print(f"report: {args.out}")
    return 0 if summary["failures"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
