"""Command-line interface.

One binary, subcommand style: generate and build networks, validate
files, inspect overlap, run the optimizer or its brute-force
counterpart, and serve the HTTP API. Exit codes: 0 success, 1 domain
error (bad file, infeasible campaign), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .campaign import MODE_IMPRESSIONS, MODE_REACH, CampaignSpec
from .constraints import Targeting, build_cost_model, demographic_filter, impressions_per_site
from .ga import GaParams, InfeasibleError, OptimizationResult, optimize, result_to_doc
from .ingest import (
    CrawlFileError,
    SyntheticConfig,
    build_from_crawl,
    generate_synthetic,
    parse_crawl_records,
    prune,
    serialize_crawl_records,
)
from .netio import (
    NetworkFileError,
    network_content_hash,
    parse_network_file,
    serialize_network,
)
from .network import WebsiteNetwork, validate_network
from .oracle import enumerate_path_overlap, exhaustive_optimize
from .overlap import MatrixFileError, max_product_path, overlap_matrix, serialize_matrix, symmetrize

MODE_BY_FLAG = {"reach": MODE_REACH, "impressions": MODE_IMPRESSIONS}

GA_FLAG_FIELDS = (
    ("ga_population_size", "population_size", int),
    ("ga_max_generations", "max_generations", int),
    ("ga_stall_generations", "stall_generations", int),
    ("ga_tournament_size", "tournament_size", int),
    ("ga_crossover_rate", "crossover_rate", float),
    ("ga_mutation_rate", "mutation_rate", float),
    ("ga_elite_count", "elite_count", int),
)


def _load_pruned(path: str) -> WebsiteNetwork:
    net = parse_network_file(Path(path).read_bytes())
    usable = prune(net)
    if len(usable) == 0:
        raise NetworkFileError(f"{path}: no usable nodes left after pruning")
    return usable


def _campaign_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--budget", type=float, required=True, help="total budget in USD")
    sub.add_argument("--sites", type=int, required=True, help="number of sites to select")
    sub.add_argument("--age", action="append", default=[], metavar="BUCKET",
                     help="targeted age bucket (repeatable)")
    sub.add_argument("--income", action="append", default=[], metavar="BUCKET",
                     help="targeted income bucket (repeatable)")
    sub.add_argument("--mode", choices=sorted(MODE_BY_FLAG), default="impressions",
                     help="objective weights: impressions bought or raw reach")


def _campaign_from_args(args: argparse.Namespace, seed: int | None) -> CampaignSpec:
    return CampaignSpec(
        budget_usd=args.budget,
        num_sites=args.sites,
        targeting=Targeting(
            age_buckets=frozenset(args.age), income_buckets=frozenset(args.income)
        ),
        objective_mode=MODE_BY_FLAG[args.mode],
        seed=seed,
    )


def _ga_params_from_args(args: argparse.Namespace) -> GaParams | None:
    overrides = {}
    for flag, field, _ in GA_FLAG_FIELDS:
        value = getattr(args, flag)
        if value is not None:
            overrides[field] = value
    return GaParams(**overrides) if overrides else None


def cmd_generate(args: argparse.Namespace) -> int:
    doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
    try:
        cfg = SyntheticConfig(**doc)
    except TypeError as exc:
        raise ValueError(f"{args.config}: {exc}") from exc
    net, records = generate_synthetic(cfg, args.seed)
    Path(args.out).write_bytes(serialize_network(net))
    print(f"generated {len(net)} nodes, {len(net.edges)} edges -> {args.out}")
    if args.crawl_out:
        Path(args.crawl_out).write_bytes(serialize_crawl_records(records))
        print(f"crawl records -> {args.crawl_out}")
    return 0


def cmd_build(args: argparse.Namespace) -> int:
    records = parse_crawl_records(Path(args.records).read_bytes())
    net = build_from_crawl(records, args.seed_domain, args.max_nodes)
    usable = prune(net)
    Path(args.out).write_bytes(serialize_network(usable))
    print(
        f"built {len(net)} nodes from {args.seed_domain!r}, "
        f"{len(usable)} kept after pruning -> {args.out}"
    )
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    net = parse_network_file(Path(args.network).read_bytes())
    violations = validate_network(net)
    if violations:
        for violation in violations:
            print(str(violation), file=sys.stderr)
        return 1
    print(f"ok: {len(net)} nodes, {len(net.edges)} edges")
    return 0


def cmd_overlap(args: argparse.Namespace) -> int:
    net = _load_pruned(args.network)
    matrix = overlap_matrix(net)
    if args.matrix_out:
        blob = serialize_matrix(matrix, network_content_hash(net))
        Path(args.matrix_out).write_bytes(blob)
        print(f"matrix -> {args.matrix_out}", file=sys.stderr)
    if args.pair:
        first, second = args.pair
        result = max_product_path(symmetrize(net), first, second)
        print(f"{result.overlap:.6f}")
        print(" -> ".join(result.path) if result.path else "(no path)")
        return 0
    ids = matrix.ids
    values = matrix.as_array()
    pairs = sorted(
        ((values[i, j], ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))),
        key=lambda t: (-t[0], t[1], t[2]),
    )
    print(f"nodes: {len(ids)}, edges: {len(net.edges)}")
    print("strongest overlaps:")
    for value, a, b in pairs[:5]:
        print(f"  {a} ~ {b}  {value:.6f}")
    return 0


def _print_result(net: WebsiteNetwork, campaign: CampaignSpec, result: OptimizationResult) -> None:
    cost = build_cost_model(net)
    print(f"seed: {result.seed}")
    print(f"generations: {len(result.history)}  best fitness: {result.fitness:.6f}")
    print("selected sites:")
    for node_id in result.selection:
        node = net.get(node_id)
        impressions = impressions_per_site(campaign.budget_usd, campaign.num_sites, cost[node_id])
        print(
            f"  {node_id}  {node.domain}  reach {node.reach_pct:.2f}%  "
            f"cpm ${cost[node_id]:.2f}  impressions {impressions:,.0f}"
        )
    metrics = result.metrics
    print(f"gross exposures:   {metrics.gross_exposures:.6f}")
    print(f"overlap deduction: {metrics.overlap_deduction:.6f}")
    print(f"net score:         {metrics.net_score:.6f}")
    baseline = ", ".join(metrics.baseline_selection)
    print(f"naive baseline ({baseline}): net score {metrics.naive_baseline.net_score:.6f}")
    print(f"overlap avoided vs baseline: {metrics.overlap_avoided:.6f}")


def cmd_optimize(args: argparse.Namespace) -> int:
    net = _load_pruned(args.network)
    seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(31)
    campaign = _campaign_from_args(args, seed)
    feasible = demographic_filter(net, campaign.targeting)
    if len(feasible) < campaign.num_sites:
        raise InfeasibleError(len(feasible), campaign.num_sites)
    matrix = overlap_matrix(net)
    result = optimize(net, matrix, feasible, campaign, params=_ga_params_from_args(args))
    if args.json:
        print(json.dumps(result_to_doc(result), sort_keys=True, indent=2))
    else:
        _print_result(net, campaign, result)
    return 0


def cmd_oracle_optimize(args: argparse.Namespace) -> int:
    net = _load_pruned(args.network)
    campaign = _campaign_from_args(args, seed=None)
    feasible = demographic_filter(net, campaign.targeting)
    matrix = overlap_matrix(net)
    selection, fit = exhaustive_optimize(net, matrix, feasible, campaign)
    if args.json:
        print(json.dumps({"selection": list(selection), "fitness": fit}, sort_keys=True))
    else:
        print(f"selection: {', '.join(selection)}")
        print(f"fitness: {fit:.6f}")
    return 0


def cmd_oracle_path(args: argparse.Namespace) -> int:
    net = _load_pruned(args.network)
    value = enumerate_path_overlap(symmetrize(net), args.source, args.target)
    print(f"{value:.6f}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    listen = args.listen or os.environ.get("ADPLANNER_LISTEN") or "127.0.0.1:8000"
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"--listen must look like host:port, got {listen!r}")
    max_jobs = args.max_jobs
    if max_jobs is None and os.environ.get("ADPLANNER_MAX_JOBS"):
        max_jobs = int(os.environ["ADPLANNER_MAX_JOBS"])
    journal = args.journal or os.environ.get("ADPLANNER_JOURNAL") or None
    app = create_app(max_jobs=max_jobs, journal_path=journal)
    network = args.network or os.environ.get("ADPLANNER_NETWORK") or None
    if network:
        summary = app.state.planner.load(Path(network).read_bytes())
        print(f"loaded {network}: {summary['nodes']} nodes, {summary['edges']} edges")
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adplanner",
        description="Plan ad buys on an audience-overlap network of websites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_generate = sub.add_parser("generate", help="generate a synthetic network")
    p_generate.add_argument("--config", required=True, help="JSON file of generator settings")
    p_generate.add_argument("--seed", type=int, required=True)
    p_generate.add_argument("--out", required=True, help="network file to write")
    p_generate.add_argument("--crawl-out", help="also write the crawl-record map")
    p_generate.set_defaults(func=cmd_generate)

    p_build = sub.add_parser("build", help="build a network from crawl records")
    p_build.add_argument("--records", required=True, help="crawl-record JSON file")
    p_build.add_argument("--seed-domain", required=True)
    p_build.add_argument("--max-nodes", type=int, required=True)
    p_build.add_argument("--out", required=True, help="network file to write")
    p_build.set_defaults(func=cmd_build)

    p_validate = sub.add_parser("validate", help="check a network file")
    p_validate.add_argument("network")
    p_validate.set_defaults(func=cmd_validate)

    p_overlap = sub.add_parser("overlap", help="inspect audience overlap")
    p_overlap.add_argument("network")
    p_overlap.add_argument("--pair", nargs=2, metavar=("A", "B"),
                           help="print the overlap and best path for one pair")
    p_overlap.add_argument("--matrix-out", help="write the full matrix cache file")
    p_overlap.set_defaults(func=cmd_overlap)

    p_optimize = sub.add_parser("optimize", help="select the best m sites")
    p_optimize.add_argument("network")
    _campaign_args(p_optimize)
    p_optimize.add_argument("--seed", type=int, help="RNG seed (random if omitted)")
    for flag, field, kind in GA_FLAG_FIELDS:
        p_optimize.add_argument(f"--{flag.replace('_', '-')}", type=kind, dest=flag,
                                metavar="V", help=f"override {field}")
    p_optimize.add_argument("--json", action="store_true",
                            help="emit the full result as JSON")
    p_optimize.set_defaults(func=cmd_optimize)

    p_oracle = sub.add_parser("oracle", help="exact brute-force counterparts")
    oracle_sub = p_oracle.add_subparsers(dest="oracle_command", required=True)
    p_oracle_opt = oracle_sub.add_parser("optimize", help="enumerate every subset")
    p_oracle_opt.add_argument("network")
    _campaign_args(p_oracle_opt)
    p_oracle_opt.add_argument("--json", action="store_true")
    p_oracle_opt.set_defaults(func=cmd_oracle_optimize)
    p_oracle_path = oracle_sub.add_parser("path", help="enumerate every simple path")
    p_oracle_path.add_argument("network")
    p_oracle_path.add_argument("source")
    p_oracle_path.add_argument("target")
    p_oracle_path.set_defaults(func=cmd_oracle_path)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--listen", help="host:port (default 127.0.0.1:8000)")
    p_serve.add_argument("--max-jobs", type=int, help="max concurrent runs (default: cpu count)")
    p_serve.add_argument("--journal", help="append-only NDJSON job journal")
    p_serve.add_argument("--network", help="network file to load at startup")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NetworkFileError, CrawlFileError, MatrixFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
