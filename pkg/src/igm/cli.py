"""Command-line entry point.

Exit codes: 0 success, 1 internal error during verify, 2 usage or input
error, 3 capacity budget exceeded, 4 a theorem mismatch was detected.
Big counts are always printed as exact decimal integers.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__, metrics
from .combinatorics import predicted_counts
from .errors import CapacityError, SeedParseError
from .graph import GraphSnapshot, format_dot, format_edgelist, parse_seed, read_graph, snapshot_to_json
from .implicit import DEFAULT_PAIR_BUDGET, ImplicitLayer, parse_layer_node
from .model import DEFAULT_NODE_BUDGET, ModelParams, evolve
from .verify import VerifyOptions, report_document, run_all

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_CAPACITY, EXIT_MISMATCH = 0, 1, 2, 3, 4

ALL_METRICS = ("conn", "biconn", "diam", "clique", "indep", "chrom", "dom", "spectrum")


class UsageError(Exception):
    pass


def _add_model_args(p: argparse.ArgumentParser, seed_required: bool = True, steps_default: int = 1) -> None:
    p.add_argument("--seed", required=seed_required,
                   help="seed graph: K<n>, C<n>, P<n>, E<n> (empty), optional copy prefix like 2K2, or an edge-list file")
    p.add_argument("--k", type=int, default=2, help="clone subsets have size floor(n/k) (default 2, the half-model)")
    p.add_argument("--steps", type=int, default=steps_default, help="number of evolution steps")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="max nodes to materialize")


def _check_k_steps(args) -> None:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")


def _final_snapshot(args) -> GraphSnapshot:
    _check_k_steps(args)
    return evolve(parse_seed(args.seed), args.k, args.steps, args.budget)[-1]


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# --- generate -----------------------------------------------------------

def _format(g: GraphSnapshot, fmt: str) -> str:
    if fmt == "edgelist":
        return format_edgelist(g)
    if fmt == "dot":
        return format_dot(g, name=f"G{g.level}")
    return json.dumps(snapshot_to_json(g)) + "\n"


def cmd_generate(args) -> int:
    _check_k_steps(args)
    levels = evolve(parse_seed(args.seed), args.k, args.steps, args.budget)
    if not args.all_levels:
        _emit(_format(levels[-1], args.format), args.out)
        return EXIT_OK
    if args.out in (None, "-"):
        for g in levels:
            sys.stdout.write(f"# level {g.level}\n" if args.format != "json" else "")
            sys.stdout.write(_format(g, args.format))
        return EXIT_OK
    out = Path(args.out)
    for g in levels:
        out.with_name(f"{out.stem}.L{g.level}{out.suffix}").write_text(_format(g, args.format))
    return EXIT_OK


# --- counts ---------------------------------------------------------------

def cmd_counts(args) -> int:
    _check_k_steps(args)
    g0 = parse_seed(args.seed)
    try:
        rows = predicted_counts(g0.n, g0.num_edges, args.k, args.steps)
    except CapacityError as exc:
        for n, e in exc.partial:
            print(n, e)
        raise
    for n, e in rows:
        print(n, e)
    return EXIT_OK


# --- metrics --------------------------------------------------------------

def _metric_rows(g: GraphSnapshot, selected, time_budget: float, k: int):
    """Yield (metric, value, lower, upper, exact, witness_size, elapsed_ms)."""
    import time

    for name in selected:
        start = time.monotonic()
        if name in ("conn", "biconn", "diam"):
            if name == "conn":
                value = metrics.is_connected(g)
            elif name == "biconn":
                value = metrics.is_biconnected(g)
            else:
                d = metrics.diameter(g)
                value = "unreachable" if d is None else d
            ms = (time.monotonic() - start) * 1000
            yield name, value, "", "", True, "", ms
        elif name == "spectrum":
            spec = metrics.normalized_laplacian_spectrum(g)
            ms = (time.monotonic() - start) * 1000
            yield "lambda_gap", f"{spec.lambda_gap:.12g}", "", "", True, "", ms
            clones = g.newest_clones()
            if len(clones):
                try:
                    bound = metrics.mixing_bound(g, clones)
                    yield "mixing_bound", f"{bound:.12g}", "", "", True, len(clones), ms
                except ValueError:
                    pass
        else:
            solver = {"clique": metrics.clique_number, "indep": metrics.independence_number,
                      "chrom": metrics.chromatic_number, "dom": metrics.domination_number}[name]
            res = solver(g, time_budget)
            wsize = len(set(res.witness)) if name == "chrom" else len(res.witness)
            value = res.value if res.exact else f"[{res.lower},{res.upper}]"
            yield name, value, res.lower, res.upper, res.exact, wsize, res.elapsed_ms


def cmd_metrics(args) -> int:
    if args.input:
        g = read_graph(args.input)
    elif args.seed:
        g = _final_snapshot(args)
    else:
        raise UsageError("metrics needs --in <file> or --seed")
    selected = [s.strip() for s in args.select.split(",") if s.strip()]
    bad = [s for s in selected if s not in ALL_METRICS]
    if bad:
        raise UsageError(f"unknown metric(s) {', '.join(bad)}; choose from {','.join(ALL_METRICS)}")
    rows = list(_metric_rows(g, selected, args.time_budget, args.k))
    for name, value, *_ in rows:
        if isinstance(value, bool):
            value = str(value).lower()
        print(f"{name}={value}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["metric", "value", "lower", "upper", "exact", "witness_size", "elapsed_ms"])
            for name, value, lo, hi, exact, wsize, ms in rows:
                if isinstance(value, bool):
                    value = str(value).lower()
                w.writerow([name, value, lo, hi, str(exact).lower(), wsize, f"{ms:.1f}"])
    return EXIT_OK


# --- implicit -------------------------------------------------------------

def _layer_node(layer: ImplicitLayer, text: str):
    try:
        v = parse_layer_node(text)
        layer.check(v)
    except ValueError as exc:
        raise UsageError(f"{exc} (old ids in [0, {layer.n}), clone ranks in [0, {layer.clone_count}))") from None
    return v


def cmd_implicit(args) -> int:
    if args.base:
        base = read_graph(args.base)
    elif args.seed:
        base = _final_snapshot(args)
    else:
        raise UsageError("implicit needs --base <file> or --seed")
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    layer = ImplicitLayer(base, args.k, args.budget)
    q = args.query
    if q == "counts":
        n, e = layer.counts()
        print(n, e)
    elif q == "adjacent":
        a, b = _layer_node(layer, args.a), _layer_node(layer, args.b)
        if a == b:
            raise UsageError("adjacent needs two distinct nodes")
        print(str(layer.are_adjacent(a, b)).lower())
    elif q == "degree":
        print(layer.degree(_layer_node(layer, args.v)))
    elif q == "dist":
        d = layer.distance(_layer_node(layer, args.a), _layer_node(layer, args.b))
        print("unreachable" if d is None else d)
    elif q == "diameter":
        if args.sample is not None:
            res = layer.diameter("sampled", pairs=args.sample, seed=args.rng_seed)
        else:
            res = layer.diameter("exact", pair_budget=args.pair_budget)
        value = "unreachable" if res.value is None else res.value
        print(value, "exact" if res.exact else "lower-bound", res.method)
    return EXIT_OK


# --- verify ---------------------------------------------------------------

def cmd_verify(args) -> int:
    _check_k_steps(args)
    options = VerifyOptions(time_budget=args.time_budget, node_budget=args.budget,
                            sample_pairs=args.sample_pairs, rng_seed=args.rng_seed)
    report = run_all(ModelParams(args.seed, args.k), args.steps, options)
    doc = report_document(report, __version__)
    _emit(json.dumps(doc, indent=2) + "\n", args.report)
    if args.plots:
        write_plot_csvs(report, Path(args.plots))
    if report.errors:
        for err in report.errors:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_MISMATCH if report.has_mismatch else EXIT_OK


def write_plot_csvs(report, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    headers = {
        "densification": ("t", "edges_per_node", "floor_prev_half"),
        "spectral_gap": ("t", "lambda_gap", "mixing_bound"),
        "diameter": ("t", "diameter", "method"),
    }
    for name, header in headers.items():
        with open(outdir / f"{name}.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in report.series[name]:
                w.writerow(["" if x is None else x for x in row])


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="igm", description="Iterated global network model toolkit")
    parser.add_argument("--version", action="version", version=f"igm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="materialize a trajectory and export it")
    _add_model_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("edgelist", "dot", "json"), default="edgelist")
    p.add_argument("--all-levels", action="store_true", help="write every level, not just the last")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("counts", help="exact node/edge counts per level, no materialization")
    _add_model_args(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("metrics", help="graph parameters of one snapshot")
    _add_model_args(p, seed_required=False)
    p.add_argument("--in", dest="input", help="graph file (edge list or .json export)")
    p.add_argument("--select", default=",".join(ALL_METRICS), help="comma list of " + ",".join(ALL_METRICS))
    p.add_argument("--time-budget", type=float, default=60.0, help="seconds per exact parameter")
    p.add_argument("--csv", help="also write rows to this CSV file")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("implicit", help="query the next generation without building it",
                       description="Nodes are o:<id> for base nodes and c:<rank> for clones (colex rank, decimal). "
                                   "Sampling is uniform over nodes, not degree-weighted.")
    _add_model_args(p, seed_required=False, steps_default=0)
    p.add_argument("--base", help="base graph file; alternatively build it with --seed/--steps")
    qs = p.add_subparsers(dest="query", required=True)
    qs.add_parser("counts")
    q = qs.add_parser("adjacent")
    q.add_argument("a")
    q.add_argument("b")
    q = qs.add_parser("degree")
    q.add_argument("v")
    q = qs.add_parser("dist")
    q.add_argument("a")
    q.add_argument("b")
    q = qs.add_parser("diameter")
    mode = q.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact diameter (default)")
    mode.add_argument("--sample", type=int, metavar="N", help="lower bound from N uniformly sampled pairs")
    q.add_argument("--rng-seed", type=int, default=0)
    q.add_argument("--pair-budget", type=int, default=DEFAULT_PAIR_BUDGET)
    p.set_defaults(func=cmd_implicit)

    p = sub.add_parser("verify", help="check every theorem on one trajectory")
    _add_model_args(p)
    p.add_argument("--report", help="report JSON path (default stdout)")
    p.add_argument("--plots", help="directory for CSV series")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--time-budget", type=float, default=60.0)
    p.add_argument("--sample-pairs", type=int, default=10_000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, SeedParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
