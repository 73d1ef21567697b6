"""Command-line pipeline: generate datasets, score generations, query the
theoretical-maximum oracle and inspect dataset statistics.

Every command is deterministic given its flags; reports embed the manifest
digest so scores stay traceable to the exact dataset bytes they used.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .core import ENGINE_VERSION, ORACLE_STREAM, TaskConfig, derive_rng
from .dataset_io import (
    DEFAULT_HASH_LENGTH,
    DatasetError,
    Manifest,
    generate_dataset,
    read_dataset,
    read_generations,
    read_manifest,
    write_dataset,
)
from .graphs import enumerate_triangles, triangles_per_vertex_counts
from .metrics import build_train_keys, oracle_expected, score_set, support_size

JOBS_ENV_VAR = "CREATIVITY_BENCH_JOBS"

TRAIN_SIZE_DEFAULTS = {"sibling": 50_000, "triangle": 15_000,
                       "circle": 10_000, "line": 10_000}


def _resolve_jobs(value) -> int:
    if value is not None:
        return max(1, int(value))
    env = os.environ.get(JOBS_ENV_VAR)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _config_from_args(args: argparse.Namespace) -> TaskConfig:
    train_size = args.train_size
    if train_size is None:
        train_size = TRAIN_SIZE_DEFAULTS[args.task]
    if args.task == "sibling":
        return TaskConfig.sibling(num_parents=args.m, children_per_parent=args.n,
                                  sibling_order=args.order,
                                  train_size=train_size, seed=args.seed)
    if args.task == "triangle":
        return TaskConfig.triangle(num_vertices=args.vertices, degree=args.deg,
                                   triangles_per_vertex=args.tri,
                                   triangle_format=args.format,
                                   train_size=train_size, seed=args.seed)
    return TaskConfig.construction(args.task, length=args.N, vocab_size=args.M,
                                   train_size=train_size, seed=args.seed)


def _load_manifest_dir(path: str):
    manifest_path = Path(path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / "manifest.json"
    manifest, digest = read_manifest(manifest_path)
    return manifest, digest, manifest_path.parent


def cmd_gen(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    graph, samples = generate_dataset(config, prefix_mode=args.prefix,
                                      prefix_length=args.hash_len)
    manifest_path = write_dataset(args.out, config, samples, graph,
                                  prefix_mode=args.prefix,
                                  prefix_length=args.hash_len)
    _, digest = read_manifest(manifest_path)
    print(f"wrote {len(samples)} samples to {Path(args.out)} "
          f"(task={config.task}, seed={config.seed}, manifest={digest[:12]})")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    manifest, manifest_digest, base_dir = _load_manifest_dir(args.manifest)
    train_samples, graph = read_dataset(manifest, base_dir)
    train_keys = build_train_keys(train_samples, manifest.config, graph,
                                  merge_mirrors=args.merge_mirrors)
    generations = read_generations(args.generations)
    if len(generations) != args.t_size:
        print(f"warning: scoring {len(generations)} generations, expected "
              f"--t-size {args.t_size}", file=sys.stderr)
    report = score_set(generations, train_keys, manifest.config, graph,
                       merge_mirrors=args.merge_mirrors,
                       jobs=_resolve_jobs(args.jobs))
    payload = {
        "engine_version": ENGINE_VERSION,
        "manifest_digest": manifest_digest,
        "config": manifest.config.to_dict(),
        "train_keys": len(train_keys),
        "merge_mirrors": args.merge_mirrors,
        **report.to_dict(),
    }
    report_path = Path(args.report) if args.report else Path(str(args.generations) + ".report.json")
    report_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                           encoding="utf-8")
    print(f"creativity={report.creativity:.4f} diversity={report.diversity:.4f} "
          f"memorization={report.memorization:.4f} coherence={report.coherence:.4f} "
          f"(T={report.total}, manifest={manifest_digest[:12]})")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    manifest, manifest_digest, base_dir = _load_manifest_dir(args.manifest)
    train_samples, graph = read_dataset(manifest, base_dir)
    train_keys = build_train_keys(train_samples, manifest.config, graph)
    rng = derive_rng(manifest.config.seed, ORACLE_STREAM)
    report = oracle_expected(manifest.config, train_keys, t_size=args.t_size,
                             trials=args.trials, rng=rng, graph=graph)
    payload = {
        "engine_version": ENGINE_VERSION,
        "manifest_digest": manifest_digest,
        "config": manifest.config.to_dict(),
        **report.to_dict(),
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    manifest, manifest_digest, base_dir = _load_manifest_dir(args.manifest)
    train_samples, graph = read_dataset(manifest, base_dir)
    train_keys = build_train_keys(train_samples, manifest.config, graph)
    payload = {
        "engine_version": ENGINE_VERSION,
        "manifest_digest": manifest_digest,
        "task": manifest.config.task,
        "support_size": support_size(manifest.config, graph),
        "train_key_coverage": len(train_keys),
    }
    if graph is None:
        payload["graph"] = None
        print("no graph for this task; reporting support size and coverage only",
              file=sys.stderr)
    else:
        degrees = [graph.degree(v) for v in range(graph.vertex_count)]
        histogram: dict[int, int] = {}
        for d in degrees:
            histogram[d] = histogram.get(d, 0) + 1
        triangles = enumerate_triangles(graph)
        participation = triangles_per_vertex_counts(graph, triangles)
        payload["graph"] = {
            "vertex_count": graph.vertex_count,
            "edge_count": len(graph.edges),
            "degree_histogram": {str(k): v for k, v in sorted(histogram.items())},
            "triangle_count": len(triangles),
            "min_triangles_per_vertex": min(participation) if participation else 0,
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="creativity-bench",
        description="Generate, score and analyze open-ended algorithmic "
                    "creativity benchmarks.")
    parser.add_argument("--version", action="version",
                        version=f"creativity-bench {ENGINE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a dataset directory")
    gen.add_argument("--task", required=True,
                     choices=("sibling", "triangle", "circle", "line"))
    gen.add_argument("--train-size", type=int, default=None,
                     help="samples to draw (default: per-task standard size)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--prefix", choices=("null", "pause", "hash"), default="hash")
    gen.add_argument("--hash-len", type=int, default=DEFAULT_HASH_LENGTH,
                     help="hash length; also used as the pause-prefix length")
    gen.add_argument("--out", required=True, help="output directory (must not exist)")
    gen.add_argument("--m", type=int, default=5, help="sibling: number of parents")
    gen.add_argument("--n", type=int, default=500, help="sibling: children per parent")
    gen.add_argument("--order", choices=("sibling_first", "parent_first"),
                     default="sibling_first")
    gen.add_argument("--vertices", type=int, default=999, help="triangle: vertex count")
    gen.add_argument("--deg", type=int, default=3, help="triangle: target degree")
    gen.add_argument("--tri", type=int, default=6, help="triangle: closures per vertex")
    gen.add_argument("--format", choices=("edge_list", "node_list"), default="edge_list")
    gen.add_argument("--N", type=int, default=9, help="circle/line: structure size")
    gen.add_argument("--M", type=int, default=15, help="circle/line: vertex vocabulary")
    gen.set_defaults(func=cmd_gen)

    score = sub.add_parser("score", help="score a generations file against a dataset")
    score.add_argument("--manifest", required=True,
                       help="manifest.json path or dataset directory")
    score.add_argument("--generations", required=True)
    score.add_argument("--t-size", type=int, default=1024,
                       help="expected generation count (mismatch only warns)")
    score.add_argument("--report", default=None,
                       help="report path (default: <generations>.report.json)")
    score.add_argument("--jobs", type=int, default=None,
                       help=f"worker processes (default: ${JOBS_ENV_VAR} or all cores)")
    score.add_argument("--merge-mirrors", action="store_true",
                       help="construction tasks: identify a permutation with its reversal")
    score.set_defaults(func=cmd_score)

    oracle = sub.add_parser("oracle", help="theoretical-maximum creativity/diversity")
    oracle.add_argument("--manifest", required=True)
    oracle.add_argument("--t-size", type=int, default=1024)
    oracle.add_argument("--trials", type=int, default=1000)
    oracle.add_argument("--report", default=None)
    oracle.set_defaults(func=cmd_oracle)

    stats = sub.add_parser("stats", help="graph and key-space statistics")
    stats.add_argument("--manifest", required=True)
    stats.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
