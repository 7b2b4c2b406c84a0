"""Command-line interface: gen, run, verify, scale.

Exit code 0 iff every requested verification passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import PlanarSepError
from .generators import WEIGHT_SCHEMES
from .graphio import parse_graph, write_graph
from .harness import (
    ExperimentSpec,
    generate,
    render_report,
    run_suite,
    scaling_report,
    standard_suite,
)
from .separator import compute_separator
from .treecotree import bfs_tree
from .verify import verify_separator

_GEN_PARAMS = {
    "grid": ("rows", "cols"),
    "cylinder": ("height", "width"),
    "random-triangulation": ("n",),
    "cycle-chords": ("n", "chords"),
    "two-level-parts": ("size", "parts_per_side"),
    "joined-grids": ("rows", "cols"),
    "cut-chain": ("blobs", "blob_size"),
    "pinned-critical": (),
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)


def cmd_gen(args) -> int:
    params = {k: getattr(args, k.replace("-", "_")) for k in _GEN_PARAMS[args.kind]}
    g, part_of = generate(args.kind, params, args.seed)
    if args.weights != "unit":
        w = WEIGHT_SCHEMES[args.weights](g.n, args.seed)
        g.vertex_weight = list(w)
    text = write_graph(g)
    if args.out:
        Path(args.out).write_text(text)
        if part_of is not None and args.parts_out:
            Path(args.parts_out).write_text(
                "".join(f"part {v} {p}\n" for v, p in enumerate(part_of))
            )
    else:
        sys.stdout.write(text)
    return 0


def cmd_run(args) -> int:
    if args.spec:
        specs = [
            ExperimentSpec.from_json(line)
            for line in Path(args.spec).read_text().splitlines()
            if line.strip()
        ]
    elif args.suite:
        specs = standard_suite(max_n=args.max_n)
    else:
        params = {k: getattr(args, k.replace("-", "_")) for k in _GEN_PARAMS[args.kind]}
        specs = [
            ExperimentSpec(
                name=f"{args.kind}-cli",
                generator=args.kind,
                params=params,
                weights=args.weights,
                engine=args.engine,
                pa_backend=args.pa_backend,
                bit_budget=args.bit_budget,
                seed=args.seed,
            )
        ]
    specs = [
        ExperimentSpec(
            **{
                **s.__dict__,
                "engine": args.engine,
                "pa_backend": args.pa_backend,
                "bit_budget": args.bit_budget,
                "max_rounds": args.max_rounds,
            }
        )
        for s in specs
    ]
    records, summary = run_suite(specs)
    text = render_report(records, summary)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if (args.dot or args.trace_out) and len(specs) == 1 and not args.suite:
        _write_debug_artifacts(specs[0], args)
    return 0 if summary["failures"] == 0 else 1


def _write_debug_artifacts(spec, args) -> None:
    from .dist import dist_compute_separator
    from .harness import generate
    from .treecotree import cotree, dot_export

    g, _ = generate(spec.generator, spec.params, spec.seed)
    tree = bfs_tree(g, 0)
    if args.dot:
        res = compute_separator(g, tree)
        Path(args.dot).write_text(dot_export(cotree(g, tree), res.path))
    if args.trace_out:
        _, trace = dist_compute_separator(
            g, tree, backend=args.pa_backend, bit_budget=args.bit_budget,
            max_rounds=args.max_rounds,
        )
        Path(args.trace_out).write_text(trace.export_text())


def cmd_verify(args) -> int:
    g = parse_graph(Path(args.graph).read_text())
    if args.separator:
        path = _parse_separator_path(Path(args.separator).read_text())
    else:
        tree = bfs_tree(g, args.root)
        path = compute_separator(g, tree).path
    report = verify_separator(g, None, path)
    sys.stdout.write(
        f"total {report.total_weight} components "
        f"{' '.join(map(str, report.component_weights))} "
        f"ratio {report.max_ratio.numerator}/{report.max_ratio.denominator} "
        f"{'PASS' if report.passed else 'FAIL'}\n"
    )
    return 0 if report.passed else 1


def _parse_separator_path(text: str) -> list[int]:
    for line in text.splitlines():
        parts = line.split()
        if parts and parts[0] == "path":
            k = int(parts[1])
            return [int(x) for x in parts[2 : 2 + k]]
    raise PlanarSepError("no 'path' record in separator file")


def cmd_scale(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    specs = []
    for s in sizes:
        if args.family == "grid":
            params = {"rows": s, "cols": s}
            kind = "grid"
        else:
            params = {"height": args.height, "width": s}
            kind = "cylinder"
        specs.append(
            ExperimentSpec(
                name=f"{kind}-{s}",
                generator=kind,
                params=params,
                engine="distributed",
                pa_backend=args.pa_backend,
                seed=args.seed,
            )
        )
    records, summary = run_suite(specs, deep_checks=False)
    fit = scaling_report(records)
    out = render_report(records, summary) + json.dumps(fit, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return 0 if (summary["failures"] == 0 and fit["stable"]) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planarsep")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("kind", choices=sorted(_GEN_PARAMS))
    for kind, names in _GEN_PARAMS.items():
        for name in names:
            flag = "--" + name.replace("_", "-")
            if not any(flag == a.option_strings[0] for a in g._actions if a.option_strings):
                g.add_argument(flag, type=int, default=None)
    g.add_argument("--weights", choices=sorted(WEIGHT_SCHEMES), default="unit")
    g.add_argument("--parts-out", type=str, default=None)
    _add_common(g)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run experiments and verification")
    r.add_argument("--kind", choices=sorted(_GEN_PARAMS), default=None)
    for kind, names in _GEN_PARAMS.items():
        for name in names:
            flag = "--" + name.replace("_", "-")
            if not any(flag == a.option_strings[0] for a in r._actions if a.option_strings):
                r.add_argument(flag, type=int, default=None)
    r.add_argument("--spec", type=str, default=None, help="NDJSON spec file")
    r.add_argument("--suite", action="store_true", help="run the standard suite")
    r.add_argument("--max-n", type=int, default=5000)
    r.add_argument("--engine", choices=["sequential", "distributed", "both"], default="both")
    r.add_argument("--pa-backend", choices=["honest", "charged"], default="honest")
    r.add_argument("--bit-budget", type=int, default=None)
    r.add_argument("--max-rounds", type=int, default=10**6)
    r.add_argument("--dot", type=str, default=None,
                   help="write a DOT rendering of G, T, T* and P (single instance)")
    r.add_argument("--trace-out", type=str, default=None,
                   help="write the per-phase round trace (single instance)")
    r.add_argument("--weights", choices=sorted(WEIGHT_SCHEMES), default="unit")
    _add_common(r)
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="verify a separator against a graph file")
    v.add_argument("--graph", required=True)
    v.add_argument("--separator", default=None, help="canonical separator record file")
    v.add_argument("--root", type=int, default=0)
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scale", help="round-complexity scaling report")
    s.add_argument("--family", choices=["grid", "cylinder"], default="grid")
    s.add_argument("--sizes", default="8,16,32,64")
    s.add_argument("--height", type=int, default=4)
    s.add_argument("--pa-backend", choices=["honest", "charged"], default="charged")
    _add_common(s)
    s.set_defaults(func=cmd_scale)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PlanarSepError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
