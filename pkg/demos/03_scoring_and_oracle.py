#!/usr/bin/env python3
"""Score three synthetic 'models' and compare them to the oracle ceiling.

The engine's own sampler plays the perfect model; a mode-collapsed model
repeats one line; a parroting model replays its training data. The oracle
says how much creativity any distribution-matched sampler could reach given
how much of the key space the training set already covers.
"""

from creativity_bench import (
    PrefixValue,
    TaskConfig,
    build_train_keys,
    derive_rng,
    generate_dataset,
    oracle_expected,
    sample_bodies,
    score_set,
)

NULL = PrefixValue.null()
T_SIZE = 512

config = TaskConfig.sibling(num_parents=4, children_per_parent=40,
                            train_size=600, seed=3)
graph, train_samples = generate_dataset(config, prefix_mode="null")
train_keys = build_train_keys(train_samples, config, graph)
print(f"task: sibling, support {4 * 40 * 39 // 2} keys, "
      f"training covers {len(train_keys)}")

oracle = oracle_expected(config, train_keys, t_size=T_SIZE, trials=500,
                         rng=derive_rng(9, 3), graph=graph)
print(f"oracle ceiling: creativity {oracle.expected_creativity:.3f}, "
      f"diversity {oracle.expected_diversity:.3f}")
print()

def show(name, generations):
    r = score_set(generations, train_keys, config, graph)
    print(f"{name:<18} creativity={r.creativity:.3f} diversity={r.diversity:.3f} "
          f"memorization={r.memorization:.3f} coherence={r.coherence:.3f}")

# 1. the engine itself, fresh seed: an ideal distribution-matched model
fresh = sample_bodies(config, graph, T_SIZE, derive_rng(1234, 1))
show("perfect sampler", [(NULL, s.body) for s in fresh])

# 2. mode collapse: one coherent line repeated
one = fresh[0]
show("mode collapsed", [(NULL, one.body)] * T_SIZE)

# 3. memorizer: replays training lines verbatim
replay = [(NULL, train_samples[i % len(train_samples)].body) for i in range(T_SIZE)]
show("parrot", replay)

# 4. incoherent babbler: right tokens, wrong structure
babble = [(NULL, ("0", "0", "0"))] * T_SIZE
show("babbler", babble)
