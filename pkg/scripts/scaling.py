#!/usr/bin/env python3
"""Charged-round scaling experiments: square grids (growing diameter) and
capped cylinders of fixed height (constant diameter, growing size)."""

import argparse
import json
import sys

from planarsep.harness import ExperimentSpec, run_suite, scaling_report


def family(kind, sizes, height=4):
    specs = []
    for s in sizes:
        params = {"rows": s, "cols": s} if kind == "grid" else {"height": height, "width": s}
        specs.append(ExperimentSpec(
            name=f"{kind}-{s}", generator=kind if kind == "grid" else "cylinder",
            params=params, engine="distributed", pa_backend="charged",
        ))
    return specs


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid-sizes", default="8,16,32,64")
    ap.add_argument("--cylinder-widths", default="16,32,64,128")
    ap.add_argument("--height", type=int, default=4)
    args = ap.parse_args()

    ok = True
    for kind, sizes in (
        ("grid", [int(x) for x in args.grid_sizes.split(",")]),
        ("cylinder", [int(x) for x in args.cylinder_widths.split(",")]),
    ):
        records, summary = run_suite(family(kind, sizes, args.height), deep_checks=False)
        fit = scaling_report(records)
        print(f"== {kind} ==")
        for row in fit["sizes"]:
            print(f"  n={row['n']:6d} D={row['diameter']:4d} "
                  f"charged={row['charged_rounds']:8d} honest={row['honest_rounds']:6d} "
                  f"c={row['c']:.2f}")
        print(json.dumps({k: fit[k] for k in ("c_min", "c_max", "drift", "stable")}))
        ok = ok and fit["stable"] and summary["failures"] == 0
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
