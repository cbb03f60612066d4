"""Command-line entry points.

Exit codes: 0 success, 1 configuration/input error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import experiment as exp
from .catalog import generate_interests
from .centrality import (ReplicationPolicy, betweenness_centrality,
                         cbc_replication, closeness_centrality,
                         degree_centrality, eigenvector_centrality,
                         export_scores_csv)
from .graph import PathCache, connected_components, load_topology, serialize_topology
from .placement import (CacheAssignment, export_assignment_csv, place_fog,
                        place_noncollaborative)
from .simulator import (assign_roles, cache_hit_rate, pooled_hit_rate,
                        run_simulation, success_rate)
from .synthetic import KINDS, generate_synthetic_topology


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse usage errors are config errors
        raise ValueError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fogcache",
                     description="Content-centrality fog caching toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    topo = sub.add_parser("topology", help="generate or validate topology files")
    topo_sub = topo.add_subparsers(dest="action", required=True)
    gen = topo_sub.add_parser("generate")
    gen.add_argument("--kind", choices=KINDS, default="geometric")
    gen.add_argument("--nodes", type=int, default=330)
    gen.add_argument("--density", type=float, default=0.078)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("-o", "--output", default="-")
    val = topo_sub.add_parser("validate")
    val.add_argument("file")

    def common_sim_args(p, with_scheme=True):
        p.add_argument("--topology", required=True)
        if with_scheme:
            p.add_argument("--scheme", choices=exp.SCHEMES, default="cbc")
        p.add_argument("--alpha", type=float, default=0.5)
        p.add_argument("--buffer-items", type=int, default=2)
        p.add_argument("--catalog-size", type=int, default=100)
        p.add_argument("--zipf-exponent", type=float, default=1.0)
        p.add_argument("--consumer-frac", type=float, default=0.3)
        p.add_argument("--provider-frac", type=float, default=0.3)
        p.add_argument("--master-seed", type=int, default=7)
        p.add_argument("--repetition", type=int, default=0)
        p.add_argument("-o", "--output", default="-")

    cent = sub.add_parser("centrality", help="compute and export node scores")
    cent.add_argument("--kind", default="cbc",
                      choices=("cbc", "degree", "closeness", "betweenness",
                               "eigenvector"))
    common_sim_args(cent, with_scheme=False)

    place = sub.add_parser("place", help="export a cache assignment")
    common_sim_args(place)

    sim = sub.add_parser("simulate", help="run one simulation cell")
    common_sim_args(sim)
    sim.add_argument("--interests", type=int, default=2_000)

    for name in ("experiment", "sweep-alpha"):
        e = sub.add_parser(name, help="run a full plan and emit reports")
        e.add_argument("--config")
        e.add_argument("--topology", action="append", default=[],
                       help="topology file (repeatable; default: built-in synthetic)")
        e.add_argument("--schemes")
        e.add_argument("--alphas")
        e.add_argument("--repetitions", type=int)
        e.add_argument("--interests", type=int)
        e.add_argument("--buffer-items", type=int)
        e.add_argument("--catalog-size", type=int)
        e.add_argument("--zipf-exponent", type=float)
        e.add_argument("--consumer-frac", type=float)
        e.add_argument("--provider-frac", type=float)
        e.add_argument("--master-seed", type=int)
        e.add_argument("--workers", type=int)
        e.add_argument("--output-dir")
        e.add_argument("--gnuplot", action="store_true")
        if name == "sweep-alpha":
            e.add_argument("--scheme", choices=exp.SCHEMES, default="cbc")
    return parser


def _write(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _load(path: str):
    return load_topology(Path(path).read_text(), label=Path(path).stem)


def _cell(args, topology):
    """Roles, workload, providers for one (topology, repetition) cell."""
    roles = assign_roles(topology, args.consumer_frac, args.provider_frac,
                         exp.derive_seed(args.master_seed, 0, args.repetition,
                                         "roles"))
    catalog = exp.zipf_catalog(args.catalog_size, args.zipf_exponent)
    return roles, catalog


def _scores_for(args, topology, kind, roles, cache):
    if kind == "degree":
        return degree_centrality(topology)
    if kind == "closeness":
        return closeness_centrality(topology)
    if kind == "betweenness":
        return betweenness_centrality(topology, cache)
    if kind == "eigenvector":
        return eigenvector_centrality(topology)
    policy = ReplicationPolicy(alpha=args.alpha, buffer_items=args.buffer_items,
                               catalog_size=args.catalog_size)
    return cbc_replication(topology, roles.consumers, policy,
                           sorted(roles.providers), cache)


def _assignment_for(args, topology, scheme, roles, catalog, cache):
    providers = sorted(roles.providers)
    if scheme == "lru_social_unaware":
        # cold start, mirroring the experiment runner
        return CacheAssignment(scheme=scheme, common_parts={},
                               unique_parts={v: () for v in providers},
                               fog=tuple(providers), alpha=None,
                               buffer_items=args.buffer_items)
    scores = _scores_for(args, topology, "cbc" if scheme in ("cbc", "no_fog")
                         else scheme, roles, cache)
    if scheme == "no_fog":
        return place_noncollaborative(topology, scores, catalog, providers,
                                      args.buffer_items)
    return place_fog(topology, scores, catalog, providers, args.buffer_items,
                     args.alpha)


def _experiment_overrides(args) -> dict:
    overrides = {}
    for key in ("schemes", "alphas", "repetitions", "interests", "buffer_items",
                "catalog_size", "zipf_exponent", "consumer_frac",
                "provider_frac", "master_seed", "workers", "output_dir"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.topology:
        overrides["topologies"] = ",".join(args.topology)
    return overrides


def _run(args) -> int:
    import io

    if args.command == "topology":
        if args.action == "generate":
            topo = generate_synthetic_topology(args.kind, args.nodes,
                                               args.density, args.seed)
            _write(serialize_topology(topo), args.output)
        else:
            topo = _load(args.file)
            components = connected_components(topo)
            print(f"nodes={topo.node_count} edges={topo.edge_count} "
                  f"origin={topo.original_ids[topo.origin]} "
                  f"components={len(components)}")
        return 0

    if args.command in ("centrality", "place", "simulate"):
        topology = _load(args.topology)
        cache = PathCache(topology)
        roles, catalog = _cell(args, topology)
        buffer = io.StringIO()
        if args.command == "centrality":
            scores = _scores_for(args, topology, args.kind, roles, cache)
            export_scores_csv(scores, topology, buffer)
        elif args.command == "place":
            assignment = _assignment_for(args, topology, args.scheme, roles,
                                         catalog, cache)
            assignment = replace(assignment, scheme=args.scheme)
            export_assignment_csv(assignment, topology, buffer)
        else:
            workload = generate_interests(
                catalog, roles.consumers, args.interests,
                exp.derive_seed(args.master_seed, 0, args.repetition, "workload"))
            assignment = _assignment_for(args, topology, args.scheme, roles,
                                         catalog, cache)
            metrics = run_simulation(topology, assignment, roles, workload,
                                     lru_enabled=args.scheme == "lru_social_unaware",
                                     path_cache=cache)
            buffer.write(",".join(exp.CSV_COLUMNS) + "\n")
            buffer.write(",".join(str(x) for x in (
                topology.snapshot_label or Path(args.topology).stem,
                args.scheme, args.alpha, args.repetition,
                workload.seed,
                f"{cache_hit_rate(metrics):.12g}",
                f"{success_rate(metrics):.12g}",
                metrics.interests_generated, metrics.satisfied_from_cache,
                metrics.satisfied_from_origin, metrics.unsatisfied,
                f"{pooled_hit_rate(metrics):.12g}")) + "\n")
        _write(buffer.getvalue(), args.output)
        return 0

    # experiment / sweep-alpha
    config = {}
    if args.config:
        config = exp.parse_config(Path(args.config).read_text())
    for key, value in _experiment_overrides(args).items():
        config[key] = value
    if args.command == "sweep-alpha":
        config["schemes"] = args.scheme
        config.setdefault("alphas", "0.1,0.25,0.5,0.75,0.9")
    base = Path(args.config).parent if args.config else Path(".")
    plan, output_dir = exp.plan_from_config(config, base_dir=base)
    table = exp.run_experiment(plan)
    written = exp.emit_report(table, output_dir, gnuplot=args.gnuplot)
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except Exception as error:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
