"""Command-line entry point.

Exit status: 0 success, 2 unfeasible instance, 1 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .algorithms import solve
from .graph import Graph, GraphParseError, load_edge_list
from .oracle import OracleRefused, oracle_solve
from .problem import ProblemSpec, QuerySet, Variant
from .workload import (
    ConfigError,
    _read_config_file,
    ExperimentConfig,
    QueryGenParams,
    generate_query,
    load_communities,
    read_query_file,
    rows_to_csv,
    run_sweep_on,
    solution_metrics,
)

EXIT_OK, EXIT_ERROR, EXIT_UNFEASIBLE = 0, 1, 2

PARAM_FLAGS = {
    Variant.MIN_DIAM_MIN_DEG: "delta_min",
    Variant.MAX_MIN_DEG_DIAM: "diam_max",
    Variant.MAX_MIN_DEG_DIST: "d_max",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_graph(path: str) -> Graph:
    return load_edge_list(Path(path).read_text(encoding="utf-8"))


def _parse_queries(value: str, G: Graph) -> list[int]:
    """Inline ``"0,3,7"`` or a path to a one-id-per-line file; returns dense ids."""
    p = Path(value)
    if p.is_file():
        ids = read_query_file(p.read_text(encoding="utf-8"))
    else:
        try:
            ids = [int(t) for t in value.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"--queries: neither a file nor a comma-separated id list: {value!r}") from None
    index = G.index_of()
    missing = [q for q in ids if q not in index]
    if missing:
        raise UsageError(f"query vertices {missing} are not in the graph")
    return [index[q] for q in ids]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _add_common(p: argparse.ArgumentParser, queries: bool = True) -> None:
    p.add_argument("--graph", required=True, help="edge-list file")
    if queries:
        p.add_argument("--queries", required=True, help="comma-separated ids or a file with one id per line")
        p.add_argument("--k", type=int, default=0, help="outlier budget")
    p.add_argument("--out", help="write the result here instead of stdout")


def _add_param(p: argparse.ArgumentParser, variant: Variant, required: bool = True) -> None:
    name = PARAM_FLAGS[variant]
    p.add_argument("--" + name.replace("_", "-"), dest=name, type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="csoutliers", description="Community search with outliers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for variant in Variant:
        p = sub.add_parser(variant.value, help=f"solve the {variant.value} problem")
        _add_common(p)
        _add_param(p, variant)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if variant is Variant.MAX_MIN_DEG_DIST:
            p.add_argument("--no-prune", action="store_true", help="skip distance pruning")
        else:
            p.add_argument("--all-starts", action="store_true", help="peel from every query vertex")

    p = sub.add_parser("oracle", help="brute-force optimum for a small graph")
    _add_common(p)
    p.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    for variant in Variant:
        _add_param(p, variant, required=False)
    p.add_argument("--guard", type=int, default=20, help="maximum n to enumerate")
    p.add_argument("--distance-in", choices=("H", "G"), default="H")

    p = sub.add_parser("gen-queries", help="draw a community-based query set")
    _add_common(p, queries=False)
    p.add_argument("--communities", required=True)
    p.add_argument("--n-same", type=int, required=True)
    p.add_argument("--m-other", type=int, default=0)
    p.add_argument("--span", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", help="parameter sweep written as CSV")
    p.add_argument("--config", help="key=value file; flags below override it")
    p.add_argument("--graph")
    p.add_argument("--communities")
    p.add_argument("--queries")
    p.add_argument("--variant", choices=[v.value for v in Variant])
    p.add_argument("--param", help="values, e.g. '1..4' or 'n'")
    p.add_argument("--k", help="outlier budgets, e.g. '0..5'")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--n-same", type=int)
    p.add_argument("--m-other", type=int)
    p.add_argument("--span", type=int)
    p.add_argument("--all-starts", action="store_true", default=None)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out")
    return parser


def _solve_cmd(args, variant: Variant) -> int:
    if args.format != "json":
        raise UsageError("solver output is json only; csv is for sweep")
    G = _read_graph(args.graph)
    Q = _parse_queries(args.queries, G)
    try:
        qs = QuerySet(Q, args.k)
        spec = ProblemSpec(variant, getattr(args, PARAM_FLAGS[variant]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    t0 = time.perf_counter()
    sol = solve(G, qs, spec, all_starts=getattr(args, "all_starts", False), use_pruning=not getattr(args, "no_prune", False))
    runtime_ms = (time.perf_counter() - t0) * 1000
    metrics = None
    if sol.feasible:
        m = solution_metrics(G, sol, qs).as_dict()
        m.pop("runtime_ms")
        metrics = m
    result = {
        "variant": variant.value,
        "parameters": {"queries": G.to_labels(Q), "k": args.k, spec.variant.parameter_name: spec.parameter},
        "feasible": sol.feasible,
        "objective": sol.objective,
        "vertices": G.to_labels(sol.vertices),
        "metrics": metrics,
        "runtime_ms": round(runtime_ms, 3),
    }
    _emit(_dump(result), args.out)
    return EXIT_OK if sol.feasible else EXIT_UNFEASIBLE


def _oracle_cmd(args) -> int:
    variant = Variant(args.variant)
    param = getattr(args, PARAM_FLAGS[variant])
    if param is None:
        raise UsageError(f"--{PARAM_FLAGS[variant].replace('_', '-')} is required for --variant {variant.value}")
    G = _read_graph(args.graph)
    Q = _parse_queries(args.queries, G)
    try:
        qs = QuerySet(Q, args.k)
        spec = ProblemSpec(variant, param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = oracle_solve(G, qs, spec, guard=args.guard, distance_in=args.distance_in)
    out = {
        "variant": variant.value,
        "parameters": {"queries": G.to_labels(Q), "k": args.k, variant.parameter_name: param},
        "feasible": res.feasible,
        "optimum": res.optimum,
        "witness": G.to_labels(res.witnesses[0]) if res.witnesses else [],
        "count": res.count,
    }
    if variant is Variant.MAX_MIN_DEG_DIAM:
        out["opt_min_diameter_among_witnesses"] = res.opt_min_diameter_among_witnesses
    _emit(_dump(out), args.out)
    return EXIT_OK if res.feasible else EXIT_UNFEASIBLE


def _gen_queries_cmd(args) -> int:
    G = _read_graph(args.graph)
    membership = load_communities(_read_config_file(args.communities, "community"), G.n, G.index_of())
    try:
        params = QueryGenParams(args.n_same, args.m_other, args.span, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    Q = generate_query(G, membership, params)
    _emit("".join(f"{v}\n" for v in G.to_labels(Q)), args.out)
    return EXIT_OK


def _sweep_cmd(args) -> int:
    values: dict = {}
    if args.config:
        values.update(vars(ExperimentConfig.from_text(_read_config_file(args.config, "config"))))
        values["variant"] = values["variant"].value
    overrides = {
        "graph": args.graph, "communities": args.communities, "queries": args.queries,
        "variant": args.variant, "params": args.param, "ks": args.k, "reps": args.reps,
        "seed": args.seed, "n_same": args.n_same, "m_other": args.m_other, "span": args.span,
        "all_starts": args.all_starts, "out": args.out,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    if args.no_prune:
        values["use_pruning"] = False
    config = ExperimentConfig.from_mapping(values)
    G = _read_graph(config.graph)
    index = G.index_of()
    membership = fixed = None
    if config.communities:
        membership = load_communities(_read_config_file(config.communities, "community"), G.n, index)
    if config.queries:
        fixed = _parse_queries(config.queries, G)
    rows = run_sweep_on(G, config, membership, fixed)
    text = rows_to_csv(rows) if args.format == "csv" else _dump(rows)
    _emit(text, config.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        if args.command in {v.value for v in Variant}:
            return _solve_cmd(args, Variant(args.command))
        if args.command == "oracle":
            return _oracle_cmd(args)
        if args.command == "gen-queries":
            return _gen_queries_cmd(args)
        return _sweep_cmd(args)
    except SystemExit as exc:
        # --help exits 0 through argparse
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    except (UsageError, ConfigError, GraphParseError, OracleRefused, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
