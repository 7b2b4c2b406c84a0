"""Experiment specs, the verification pipeline, and report records.

A spec pins everything (generator, parameters, weight scheme, engines,
backend, seeds), so a report is a pure function of its spec: records are
newline-delimited JSON with sorted keys and no wall-clock content, and
re-running a spec reproduces the bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .congest import default_bit_budget, log2ceil
from .dist import _diameter_estimate, dist_compute_separator
from .embedding import EmbeddedPlanarGraph
from .errors import BadParams, InsufficientData, NotProper
from .generators import (
    WEIGHT_SCHEMES,
    cut_chain,
    cycle_chords,
    cylinder,
    grid,
    joined_grids,
    pinned_critical_instance,
    random_triangulation,
    two_level_parts,
)
from .oracles import oracle_all_fundamental_cycles
from .separator import compute_separator, sep_records, serialize_separator
from .treecotree import bfs_tree, cotree, fundamental_cycle, fundamental_cut
from .verify import verify_separator
from .weights import transfer_weights


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    generator: str
    params: dict
    weights: str = "unit"
    weight_seed: int = 0
    engine: str = "both"           # sequential | distributed | both
    pa_backend: str = "honest"
    bit_budget: Optional[int] = None
    max_rounds: int = 10**6
    seed: int = 0
    repetitions: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ExperimentSpec":
        return ExperimentSpec(**json.loads(text))


def generate(kind: str, params: dict, seed: int = 0):
    """Instance dispatcher; returns (graph, partition-or-None)."""
    if kind == "grid":
        return grid(params["rows"], params["cols"]), None
    if kind == "cylinder":
        return cylinder(params["height"], params["width"], params.get("capped", True)), None
    if kind == "random-triangulation":
        return random_triangulation(params["n"], seed), None
    if kind == "cycle-chords":
        return cycle_chords(params["n"], params.get("chords", 0), seed), None
    if kind == "two-level-parts":
        g, part_of = two_level_parts(params["size"], params.get("parts_per_side", 2))
        return g, part_of
    if kind == "joined-grids":
        g, part_of = joined_grids(params["rows"], params["cols"])
        return g, part_of
    if kind == "cut-chain":
        return cut_chain(params["blobs"], params["blob_size"], seed), None
    if kind == "pinned-critical":
        g, _, _, _ = pinned_critical_instance()
        return g, None
    raise BadParams(f"unknown generator kind {kind!r}")


def _instance_weights(spec: ExperimentSpec, g: EmbeddedPlanarGraph) -> list[int]:
    try:
        scheme = WEIGHT_SCHEMES[spec.weights]
    except KeyError:
        raise BadParams(f"unknown weight scheme {spec.weights!r}")
    return scheme(g.n, spec.weight_seed)


def run_experiment(spec: ExperimentSpec, deep_checks: bool = True) -> dict:
    """One instance end to end; returns a JSON-able record."""
    g, _partition = generate(spec.generator, spec.params, spec.seed)
    w = _instance_weights(spec, g)
    tree = bfs_tree(g, 0)
    diameter = _diameter_estimate(g)
    record: dict = {
        "instance": spec.name,
        "generator": spec.generator,
        "params": spec.params,
        "weights": spec.weights,
        "seed": spec.seed,
        "n": g.n,
        "m": g.m,
        "f": g.f,
        "diameter": diameter,
        "tree_depth": tree.height(),
        "bit_budget": spec.bit_budget or default_bit_budget(g.n),
        "ok": True,
        "failures": [],
    }

    def fail(reason: str):
        record["ok"] = False
        record["failures"].append(reason)

    try:
        seq = compute_separator(g, tree, w) if spec.engine in ("sequential", "both") else None
    except NotProper:
        record["ok"] = False
        record["failures"].append("not-proper")
        record["error"] = "NotProper"
        return record

    dist_out = None
    if spec.engine in ("distributed", "both"):
        dist_out, trace = dist_compute_separator(
            g, tree, w, backend=spec.pa_backend, bit_budget=spec.bit_budget,
            max_rounds=spec.max_rounds,
        )
        record["honest_rounds"] = trace.rounds_executed
        record["charged_rounds"] = trace.charged_rounds
        record["max_bits"] = trace.max_bits_per_edge_per_round
        record["probes"] = trace.probes
        if trace.max_bits_per_edge_per_round > record["bit_budget"]:
            fail("bit-budget")

    result = seq if seq is not None else dist_out.result
    record["case"] = result.case
    record["path_len"] = len(result.path)
    record["balance"] = f"{result.balance_ratio.numerator}/{result.balance_ratio.denominator}"

    report = verify_separator(g, w, result.path)
    record["verify_ratio"] = f"{report.max_ratio.numerator}/{report.max_ratio.denominator}"
    if not report.passed:
        fail("balance")
    if len(result.path) > 2 * tree.height() + 1:
        fail("size-bound")
    if seq is not None and dist_out is not None:
        if serialize_separator(seq) != serialize_separator(dist_out.result):
            fail("engine-equivalence")
        if sep_records(g, tree, seq) != dist_out.records():
            fail("engine-records")

    if deep_checks and g.n <= 200:
        pair = cotree(g, tree)
        for e in sorted(pair.cotree_edges):
            _, cyc = fundamental_cycle(pair, e)
            if cyc != fundamental_cut(pair, e):
                fail(f"duality:{e}")
                break
        weighting = transfer_weights(g, weights=w)
        rows = oracle_all_fundamental_cycles(g, tree, w, pair=pair)
        for row in rows:
            wf_in = sum(weighting.face_weight[f] for f in row.interior_faces)
            cyc_w = sum(w[v] for v in row.cycle_vertices)
            if not (row.interior_weight <= wf_in <= row.interior_weight + cyc_w):
                fail(f"sandwich:{row.edge}")
                break
        record["deep_checks"] = True

    if spec.repetitions > 1:
        again = compute_separator(g, tree, w)
        if serialize_separator(again) != serialize_separator(result):
            fail("determinism")
    return record


def run_suite(specs: list[ExperimentSpec], deep_checks: bool = True) -> tuple[list[dict], dict]:
    """Run every spec; returns (records, summary with coverage counters)."""
    records = [run_experiment(s, deep_checks=deep_checks) for s in specs]
    coverage = {"balanced": 0, "critical-virtual": 0, "critical-leaf": 0, "not-proper": 0}
    failures = 0
    for r in records:
        if r.get("case"):
            coverage[r["case"]] = coverage.get(r["case"], 0) + 1
        if r.get("error") == "NotProper":
            coverage["not-proper"] += 1
        if not r["ok"]:
            failures += 1
    summary = {
        "summary": True,
        "instances": len(records),
        "failures": failures,
        "coverage": coverage,
    }
    return records, summary


def render_report(records: list[dict], summary: dict) -> str:
    lines = [json.dumps(r, sort_keys=True) for r in records]
    lines.append(json.dumps(summary, sort_keys=True))
    return "\n".join(lines) + "\n"


# -- scaling -------------------------------------------------------------------


def scaling_report(records: list[dict]) -> dict:
    """Fit charged_rounds = c * D * ceil(log2 n)^2 across one family.

    Needs at least four sizes; flags failure when the fitted constant
    drifts by more than 2x.
    """
    rows = [r for r in records if "charged_rounds" in r]
    if len({r["n"] for r in rows}) < 4:
        raise InsufficientData("need at least four sizes of one family")
    fits = []
    for r in sorted(rows, key=lambda r: r["n"]):
        denom = r["diameter"] * log2ceil(r["n"] + 1) ** 2
        fits.append(
            {
                "n": r["n"],
                "diameter": r["diameter"],
                "charged_rounds": r["charged_rounds"],
                "honest_rounds": r.get("honest_rounds"),
                "c": r["charged_rounds"] / denom,
            }
        )
    cs = [f["c"] for f in fits]
    ratio = max(cs) / min(cs)
    return {
        "sizes": fits,
        "c_min": min(cs),
        "c_max": max(cs),
        "drift": ratio,
        "stable": ratio < 2.0,
    }


# -- standard suites -------------------------------------------------------------


def standard_suite(max_n: int = 5000) -> list[ExperimentSpec]:
    """The acceptance suite: >= 200 seeded instances across the families."""
    specs: list[ExperimentSpec] = []

    def add(name, generator, params, weights="unit", wseed=0, seed=0):
        specs.append(
            ExperimentSpec(
                name=name, generator=generator, params=params, weights=weights,
                weight_seed=wseed, seed=seed,
            )
        )

    for s in (4, 5, 6, 7, 8, 10, 12, 16, 20, 24, 32, 48, 64):
        if s * s > max_n:
            continue
        add(f"grid-{s}", "grid", {"rows": s, "cols": s})
        add(f"grid-{s}-w", "grid", {"rows": s, "cols": s}, weights="random-proper", wseed=s)
    for rows, cols in ((4, 8), (6, 12), (8, 20), (12, 6), (16, 10)):
        if rows * cols <= max_n:
            add(f"grid-{rows}x{cols}", "grid", {"rows": rows, "cols": cols})
    for n in (30, 40, 60, 80, 120, 160, 250, 500, 1000):
        if n > max_n:
            continue
        for seed in ((1, 2, 3, 4, 5, 6) if n <= 160 else (1, 2, 3, 4)):
            add(f"tri-{n}-s{seed}", "random-triangulation", {"n": n}, seed=seed)
        add(f"tri-{n}-w", "random-triangulation", {"n": n}, seed=5,
            weights="random-proper", wseed=n)
    for n in (2000, 5000):
        if n > max_n:
            continue
        add(f"tri-{n}-s1", "random-triangulation", {"n": n}, seed=1)
        add(f"tri-{n}-w", "random-triangulation", {"n": n}, seed=2,
            weights="random-proper", wseed=n)
    for n in (12, 16, 24, 32, 48, 96, 200):
        for chords in (0, max(1, n // 6)):
            for seed in (1, 2, 3, 4, 5):
                add(f"chords-{n}-c{chords}-s{seed}", "cycle-chords",
                    {"n": n, "chords": chords}, seed=seed)
    for h, wdt in ((3, 8), (4, 12), (4, 24), (5, 16), (3, 20), (6, 10)):
        add(f"cyl-{h}x{wdt}", "cylinder", {"height": h, "width": wdt})
    for blobs, size in ((2, 8), (2, 16), (3, 12), (4, 10), (5, 8)):
        for seed in (1, 2, 3, 4, 5, 6):
            add(f"cut-{blobs}x{size}-s{seed}", "cut-chain",
                {"blobs": blobs, "blob_size": size}, seed=seed)
    for rows, cols in ((3, 4), (4, 4), (4, 6)):
        add(f"joined-{rows}x{cols}", "joined-grids", {"rows": rows, "cols": cols})
    add("pinned-critical", "pinned-critical", {})
    return specs
