#!/usr/bin/env python3
"""Data scaling: how training coverage caps attainable creativity.

As the training set grows over a fixed graph, it covers more of the key
space; the best possible creativity falls while the best possible diversity
stays flat (diversity ignores the training set). Prints the full table.
"""

from creativity_bench import (
    TaskConfig,
    build_train_keys,
    derive_rng,
    generate_dataset,
    oracle_expected,
    support_size,
)

T_SIZE = 512
print(f"{'train size':>10} {'covered':>8} {'ceiling creativity':>19} "
      f"{'ceiling diversity':>18}")

for train_size in (100, 300, 1000, 3000, 10_000, 30_000):
    config = TaskConfig.sibling(num_parents=4, children_per_parent=60,
                                train_size=train_size, seed=17)
    graph, samples = generate_dataset(config, prefix_mode="null")
    train_keys = build_train_keys(samples, config, graph)
    oracle = oracle_expected(config, train_keys, t_size=T_SIZE, trials=200,
                             rng=derive_rng(1, 3), graph=graph)
    print(f"{train_size:>10} {len(train_keys):>8} "
          f"{oracle.expected_creativity:>19.3f} {oracle.expected_diversity:>18.3f}")

k = support_size(TaskConfig.sibling(4, 60, train_size=1, seed=0))
print(f"\nkey space: {k} classes; once coverage nears it, novelty is impossible")
