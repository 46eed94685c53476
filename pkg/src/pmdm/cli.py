"""Command-line front end: solve/greedy/baseline/mask/count/index/reduce/bench.

Results go to stdout as JSON (``--format`` switches to csv or plain);
diagnostics go to stderr.  Exit codes: 0 success, 1 infeasible threshold,
2 input/format error, 3 capacity guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bench import GenConfig, generate, run_experiment
from .core import (
    CapacityError,
    Dictionary,
    InfeasibleThresholdError,
    MaskSet,
    MaskedString,
    count_matches,
    mask_apply,
)
from .exact import MpmdmInstance, PmdmInstance, solve_mpmdm, solve_pmdm
from .heuristic import GreedyConfig, baseline_pmdm, greedy_pmdm
from .hypergraph import build_hypergraph, dump_hypergraph
from .index import (
    DEFAULT_TABLE_LIMIT,
    SimpleIndex,
    SplitIndex,
    count_for_mask,
    load_index,
    save_index,
    simple_build,
    simple_query,
    small_ell_build,
    small_ell_query,
    split_build,
    split_query,
)
from .reductions import Graph, MuInstance, clique_to_pmdm, mu_to_pmdm, pmdm_to_mu


def _table_limit() -> int:
    raw = os.environ.get("PMDM_TABLE_LIMIT")
    return int(raw) if raw else DEFAULT_TABLE_LIMIT


def _note(args, message: str) -> None:
    if getattr(args, "verbose", 0):
        print(message, file=sys.stderr)


def _emit(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data))
    elif fmt == "csv":
        keys = list(data)
        print(",".join(keys))
        print(",".join(_cell(data[k]) for k in keys))
    else:
        print(" ".join(f"{k}={_cell(data[k])}" for k in data))


def _cell(value) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _load_queries(args) -> list[str]:
    queries: list[str] = []
    if args.query is not None:
        queries.append(args.query)
    path = getattr(args, "multi", None) or getattr(args, "query_file", None)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            queries.extend(line for line in fh.read().splitlines() if line)
    if not queries:
        raise ValueError("no query given; use --query or --query-file/--multi")
    return queries


def _cmd_solve(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    queries = _load_queries(args)
    _note(args, f"loaded {dictionary.size} strings of length {dictionary.length}; "
                f"{len(queries)} quer{'y' if len(queries) == 1 else 'ies'}")
    if args.dump_hypergraph:
        h = build_hypergraph(dictionary, queries[0])
        print(json.dumps(dump_hypergraph(h)))
        return 0
    if len(queries) == 1:
        inst = PmdmInstance(dictionary, queries[0], args.z)
        mask = solve_pmdm(inst)
        masked = mask_apply(queries[0], mask)
        _emit(
            {
                "k": len(mask),
                "positions": list(mask.positions),
                "matches": count_matches(dictionary, masked),
                "masked": masked.render(args.wildcard),
            },
            args.format,
        )
        return 0
    inst = MpmdmInstance(dictionary, queries, args.z)
    mask = solve_mpmdm(inst)
    _emit(
        {
            "k": len(mask),
            "positions": list(mask.positions),
            "matches": [
                count_matches(dictionary, mask_apply(q, mask)) for q in queries
            ],
            "masked": [mask_apply(q, mask).render(args.wildcard) for q in queries],
        },
        args.format,
    )
    return 0


def _cmd_heuristic(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    _note(args, f"loaded {dictionary.size} strings of length {dictionary.length}")
    inst = PmdmInstance(dictionary, args.query, args.z)
    if args.command == "greedy":
        result = greedy_pmdm(inst, GreedyConfig(tau=args.tau))
    else:
        result = baseline_pmdm(inst)
    masked = mask_apply(args.query, result.mask)
    _emit(
        {
            "k": len(result.mask),
            "positions": list(result.mask.positions),
            "matches": count_matches(dictionary, masked),
            "masked": masked.render(args.wildcard),
            "iterations": result.iterations,
        },
        args.format,
    )
    return 0


def _cmd_mask(args) -> int:
    positions = json.loads(args.positions)
    if not isinstance(positions, list):
        raise ValueError("--positions expects a JSON array of 1-based positions")
    masked = mask_apply(args.query, MaskSet(positions))
    _emit({"masked": masked.render(args.wildcard)}, args.format)
    return 0


def _cmd_count(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    masked = MaskedString.parse(args.masked, wildcard=args.wildcard)
    _emit({"matches": count_matches(dictionary, masked)}, args.format)
    return 0


def _cmd_index_build(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    if args.kind == "small":
        if dictionary.length > _table_limit():
            raise CapacityError(
                f"length {dictionary.length} exceeds table limit {_table_limit()}"
            )
        save_index(args.out, dictionary)
    elif args.kind == "simple":
        if args.k is None:
            raise ValueError("--k is required for kind=simple")
        save_index(args.out, simple_build(dictionary, args.k, args.z0))
    else:
        if args.tau is None:
            raise ValueError("--tau is required for kind=split")
        save_index(
            args.out,
            split_build(dictionary, args.tau, args.z0, table_limit=_table_limit()),
        )
    _emit({"kind": args.kind, "out": str(args.out)}, args.format)
    return 0


def _cmd_index_query(args) -> int:
    obj = load_index(args.index)
    if isinstance(obj, Dictionary):
        table = small_ell_build(obj, args.query, table_limit=_table_limit())
        mask = small_ell_query(table, args.z)
        matches = int(table.counts[mask.bits])
    elif isinstance(obj, SimpleIndex):
        found = simple_query(obj, args.query, args.z)
        if found is None:
            _emit({"found": False}, args.format)
            return 0
        mask, matches = found
    elif isinstance(obj, SplitIndex):
        mask = split_query(obj, args.query, args.z)
        matches = count_for_mask(obj, args.query, mask)
    else:
        raise ValueError("unsupported index payload")
    _emit(
        {
            "found": True,
            "k": len(mask),
            "positions": list(mask.positions),
            "matches": matches,
            "masked": mask_apply(args.query, mask).render(args.wildcard),
        },
        args.format,
    )
    return 0


def _cmd_reduce_clique(args) -> int:
    graph = Graph.from_file(args.graph)
    inst = clique_to_pmdm(graph, args.k)
    inst.dictionary.save(args.out_dict)
    _emit(
        {
            "query": inst.query,
            "z": inst.threshold,
            "d": inst.dictionary.size,
            "out_dict": str(args.out_dict),
        },
        args.format,
    )
    return 0


def _cmd_reduce_to_mu(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    inst = PmdmInstance(dictionary, args.query, args.z)
    mu = pmdm_to_mu(inst)
    payload = {
        "universe": mu.universe_size,
        "sets": [sorted(s) for s in mu.sets],
        "z": mu.threshold,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        _emit({"out": str(args.out), "d": len(mu.sets)}, args.format)
    else:
        print(json.dumps(payload))
    return 0


def _cmd_reduce_from_mu(args) -> int:
    with open(args.mu, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    mu = MuInstance(payload["universe"], payload["sets"], payload["z"])
    inst = mu_to_pmdm(mu)
    inst.dictionary.save(args.out_dict)
    _emit(
        {
            "query": inst.query,
            "z": inst.threshold,
            "d": inst.dictionary.size,
            "out_dict": str(args.out_dict),
        },
        args.format,
    )
    return 0


def _cmd_bench_gen(args) -> int:
    cfg = GenConfig(
        size=args.d,
        length=args.l,
        alphabet_size=args.sigma,
        seed=args.seed,
        mode=args.mode,
        centers=args.centers,
        mutation_rate=args.rho,
    )
    generate(cfg).save(args.out)
    _emit({"out": str(args.out), "d": args.d, "l": args.l}, args.format)
    return 0


def _cmd_bench_run(args) -> int:
    dictionary = Dictionary.from_file(args.dict, wildcard=args.wildcard)
    algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    _note(args, f"running {algorithms} on {dictionary.size} strings, "
                f"{args.queries} queries")
    report = run_experiment(
        dictionary, algorithms, args.z, args.queries, seed=args.seed
    )
    if args.csv:
        report.write_csv(args.csv)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(indent=2))
        _emit(
            {
                "out": str(args.out),
                "aggregates": report.to_dict()["aggregates"],
            },
            args.format,
        )
    else:
        print(report.to_json())
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--wildcard", default="?", help="wildcard glyph for text I/O")
    parser.add_argument(
        "--format", choices=("json", "csv", "plain"), default="json",
        help="output format (default json)",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="diagnostics on stderr"
    )


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmdm",
        description=(
            "Mask the fewest query positions so the masked query matches at "
            "least z dictionary strings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact minimum mask")
    p.add_argument("--dict", required=True)
    p.add_argument("--query")
    p.add_argument("--query-file", dest="query_file")
    p.add_argument("--multi", help="file of queries, one per line (multi-query mode)")
    p.add_argument("--z", type=int, required=True)
    p.add_argument(
        "--dump-hypergraph", action="store_true",
        help="print the mismatch hypergraph as JSON instead of solving",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    for name, help_text in (
        ("greedy", "greedy heuristic with per-iteration budget tau"),
        ("baseline", "one best-scored node at a time"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dict", required=True)
        p.add_argument("--query", required=True)
        p.add_argument("--z", type=int, required=True)
        if name == "greedy":
            p.add_argument("--tau", type=int, required=True)
        _add_common(p)
        p.set_defaults(func=_cmd_heuristic)

    p = sub.add_parser("mask", help="apply a mask to a query string")
    p.add_argument("--query", required=True)
    p.add_argument("--positions", required=True, help="JSON array of 1-based positions")
    _add_common(p)
    p.set_defaults(func=_cmd_mask)

    p = sub.add_parser("count", help="count entries matching a masked string")
    p.add_argument("--dict", required=True)
    p.add_argument("--masked", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_count)

    p_index = sub.add_parser("index", help="build and query persisted indexes")
    index_sub = p_index.add_subparsers(dest="index_command", required=True)
    p = index_sub.add_parser("build")
    p.add_argument("--dict", required=True)
    p.add_argument("--kind", choices=("small", "simple", "split"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--z0", type=int, default=1)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_index_build)
    p = index_sub.add_parser("query")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--z", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_index_query)

    p_reduce = sub.add_parser("reduce", help="instance translations")
    reduce_sub = p_reduce.add_subparsers(dest="reduce_command", required=True)
    p = reduce_sub.add_parser("clique")
    p.add_argument("--graph", required=True, help="file: first line n, then 'u v' lines")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out-dict", dest="out_dict", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_reduce_clique)
    p = reduce_sub.add_parser("to-mu")
    p.add_argument("--dict", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=_cmd_reduce_to_mu)
    p = reduce_sub.add_parser("from-mu")
    p.add_argument("--mu", required=True, help="MU instance JSON file")
    p.add_argument("--out-dict", dest="out_dict", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_reduce_from_mu)

    p_bench = sub.add_parser("bench", help="synthetic data and experiment runs")
    bench_sub = p_bench.add_subparsers(dest="bench_command", required=True)
    p = bench_sub.add_parser("gen")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("uniform", "clustered"), default="uniform")
    p.add_argument("--centers", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_bench_gen)
    p = bench_sub.add_parser("run")
    p.add_argument("--dict", required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--algos", default="bf,ba,gr3")
    p.add_argument("--queries", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--csv")
    _add_common(p)
    p.set_defaults(func=_cmd_bench_run)

    return parser


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except InfeasibleThresholdError as exc:
        print(f"error: infeasible threshold: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"error: capacity guard: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
