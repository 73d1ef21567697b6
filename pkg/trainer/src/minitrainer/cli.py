"""Command line: `minitrainer train` and `minitrainer generate`."""

from __future__ import annotations

import argparse
import sys

from .generation import PREFIX_SOURCES, generate_file
from .training import DivergedError, TrainerConfig, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minitrainer",
        description="Toy transformer trainer for creativity-bench datasets")
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("train", help="train on a dataset directory")
    tr.add_argument("--manifest", required=True,
                    help="manifest.json path or dataset directory")
    tr.add_argument("--lambda", dest="multi_weight", type=float, default=0.0,
                    help="weight of the multi-token objective in [0, 1]")
    tr.add_argument("--steps", type=int, default=2000)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--lr", type=float, default=1e-3)
    tr.add_argument("--batch-size", type=int, default=64)
    tr.add_argument("--layers", type=int, default=4)
    tr.add_argument("--width", type=int, default=256)
    tr.add_argument("--heads", type=int, default=4)
    tr.add_argument("--checkpoint-every", type=int, default=0)
    tr.add_argument("--log-every", type=int, default=100)
    tr.add_argument("--out", required=True, help="checkpoint directory")

    gen = sub.add_parser("generate", help="decode a generations file")
    gen.add_argument("--checkpoint", required=True)
    gen.add_argument("--prefix", choices=PREFIX_SOURCES, default="hash",
                     help="hash = fresh hashes disjoint from training")
    gen.add_argument("--sampler", default="greedy",
                     help="greedy | temp:T | nucleus:P")
    gen.add_argument("--count", type=int, default=1024)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            config = TrainerConfig(
                multi_weight=args.multi_weight,
                steps=args.steps,
                seed=args.seed,
                lr=args.lr,
                batch_size=args.batch_size,
                layers=args.layers,
                width=args.width,
                heads=args.heads,
                checkpoint_every=args.checkpoint_every,
                log_every=args.log_every,
            )
            final = train(args.manifest, config, args.out)
            print(f"final checkpoint: {final}")
        else:
            out = generate_file(args.checkpoint, args.prefix, args.sampler,
                                args.count, args.seed, args.out)
            print(f"wrote {args.count} generations to {out}")
        return 0
    except DivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
