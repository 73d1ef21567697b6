"""Acceptance suite: one test per release criterion.

Each test prints a `[PASS] ...` line (visible with `pytest -s`) and pins
the tolerances and wall-clock bounds the engine must meet. Run with:

    pytest tests/test_acceptance.py -v -s
"""

import itertools
import math
import random
import time

import pytest

from creativity_bench import (
    CanonicalKey,
    PrefixValue,
    Sample,
    TaskConfig,
    TrainKeySet,
    build_train_keys,
    canon_construction,
    canon_sibling,
    derive_rng,
    enumerate_triangles,
    gen_sibling_graph,
    gen_triangle_graph,
    generate_dataset,
    oracle_expected,
    parse_edge_tokens,
    parse_line,
    render_line,
    resolve,
    sample_bodies,
    sample_construction,
    sample_sibling,
    score_set,
    write_dataset,
)
from creativity_bench.core import BODY_STREAM, GRAPH_STREAM
from creativity_bench.dataset_io import build_graph
from creativity_bench.graphs import triangle_graph_phase1
from creativity_bench.metrics import support_size

from oracles import (
    brute_force_resolvable,
    brute_force_triangle_count,
    enumerate_coherent_sibling_bodies,
    exhaustive_oracle_expectation,
)

NULL = PrefixValue.null()


def _passed(name, detail=""):
    print(f"[PASS] {name}" + (f": {detail}" if detail else ""))


# ---------------------------------------------------------------------------
# Criterion 1: resolution oracle equivalence
# ---------------------------------------------------------------------------

def _corrupt(edges, vocab_size, rng):
    """Random structural damage; the result may or may not stay resolvable."""
    edges = list(edges)
    move = rng.randrange(5)
    if move == 0:  # rewrite one endpoint (can leave the vocabulary)
        k = rng.randrange(len(edges))
        u, v = edges[k]
        if rng.randrange(2):
            u = rng.randrange(vocab_size + 2)
        else:
            v = rng.randrange(vocab_size + 2)
        edges[k] = (u, v)
    elif move == 1:  # flip one edge's direction
        k = rng.randrange(len(edges))
        u, v = edges[k]
        edges[k] = (v, u)
    elif move == 2:  # clone one edge over another
        k, j = rng.randrange(len(edges)), rng.randrange(len(edges))
        edges[k] = edges[j]
    elif move == 3:  # replace one edge with a random pair
        k = rng.randrange(len(edges))
        edges[k] = (rng.randrange(vocab_size), rng.randrange(vocab_size))
    else:  # swap two endpoints across edges
        k, j = rng.randrange(len(edges)), rng.randrange(len(edges))
        (a, b), (c, d) = edges[k], edges[j]
        edges[k], edges[j] = (a, d), (c, b)
    return edges


def test_criterion_resolution_oracle_equivalence():
    started = time.monotonic()
    cases_per_n = 10_000
    checked = 0
    for n in (3, 4, 5):
        vocab = n + 2
        sampler_rng = derive_rng(1000 + n, BODY_STREAM)
        corrupt_rng = random.Random(2000 + n)
        for case in range(cases_per_n):
            kind = "circle" if case % 2 == 0 else "line"
            body = sample_construction(kind, n, vocab, sampler_rng).body
            edges = parse_edge_tokens(body)
            if case % 2 == 1:  # half the cases get corrupted
                edges = _corrupt(edges, vocab, corrupt_rng)
            fast = resolve(kind, edges, n, vocab) is not None
            brute = brute_force_resolvable(kind, edges, n, vocab)
            assert fast == brute, (kind, n, edges)
            checked += 1
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"resolution check too slow: {elapsed:.1f}s"
    _passed("resolution oracle equivalence",
            f"{checked} cases, 100% agreement, {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# Criterion 2: key-space counts
# ---------------------------------------------------------------------------

def test_criterion_key_space_counts():
    started = time.monotonic()
    cycle = [(i, (i + 1) % 4) for i in range(4)]
    cycle_keys = set()
    for perm in itertools.permutations(range(4)):
        edges = [cycle[i] for i in perm]
        res = resolve("circle", edges, 4, 4)
        cycle_keys.add(canon_construction("circle", edges, res))
    assert len(cycle_keys) == math.factorial(3)

    path = [(i, i + 1) for i in range(3)]
    path_keys = set()
    for perm in itertools.permutations(range(3)):
        edges = [path[i] for i in perm]
        res = resolve("line", edges, 4, 4)
        path_keys.add(canon_construction("line", edges, res))
    assert len(path_keys) == math.factorial(3)

    graph = gen_sibling_graph(2, 3)
    sibling_keys = {canon_sibling(b, "sibling_first")
                    for b in enumerate_coherent_sibling_bodies(graph, "sibling_first")}
    assert len(sibling_keys) == 6

    elapsed = time.monotonic() - started
    assert elapsed < 1.0, f"key-space counting too slow: {elapsed:.2f}s"
    _passed("key-space counts", f"cycle 6, path 6, sibling 6, {elapsed:.2f}s")


# ---------------------------------------------------------------------------
# Criterion 3: metric exactness on the hand-built set
# ---------------------------------------------------------------------------

def test_criterion_metric_exactness():
    config = TaskConfig.sibling(2, 3, train_size=1, seed=0)
    graph = gen_sibling_graph(2, 3)
    memorized = ("5", "6", "1")
    train = TrainKeySet(frozenset({canon_sibling(memorized, "sibling_first")}))
    generations = [
        (NULL, ("2", "3", "0")),  # novel coherent A
        (NULL, ("3", "2", "0")),  # duplicate of A under canonicalization
        (NULL, memorized),        # memorized B
        (NULL, ("9", "9", "9")),  # garbage
    ]
    report = score_set(generations, train, config, graph)
    assert report.coherence == 0.75
    assert report.memorization == 0.25
    assert report.diversity == 0.50
    assert report.creativity == 0.25
    _passed("metric exactness", "coherence .75, mem .25, div .50, creat .25")


# ---------------------------------------------------------------------------
# Criterion 4: metric ordering over fuzzed sets
# ---------------------------------------------------------------------------

def test_criterion_metric_ordering():
    config = TaskConfig.sibling(3, 6, train_size=1, seed=0)
    graph = gen_sibling_graph(3, 6)
    body_rng = derive_rng(40, BODY_STREAM)
    coherent_pool = [sample_sibling(graph, "sibling_first", body_rng).body
                     for _ in range(60)]
    train = TrainKeySet(frozenset(canon_sibling(b, "sibling_first")
                                  for b in coherent_pool[:20]))
    garbage_pool = [("zzz",), ("1", "2"), ("9", "9", "9"), ("4", "4", "0"),
                    ("1", "2", "3", "4"), ()]
    rng = random.Random(41)
    violations = 0
    for _ in range(1000):
        size = rng.randrange(1, 64)
        generations = []
        for _ in range(size):
            roll = rng.random()
            if roll < 0.10:
                generations.append(None)
            elif roll < 0.40:
                generations.append((NULL, rng.choice(garbage_pool)))
            else:
                generations.append((NULL, rng.choice(coherent_pool)))
        r = score_set(generations, train, config, graph)
        if not (r.creativity <= r.diversity <= r.coherence <= 1.0):
            violations += 1
        if not r.memorization <= r.coherence:
            violations += 1
    assert violations == 0
    _passed("metric ordering", "1000 fuzzed sets, zero violations")


# ---------------------------------------------------------------------------
# Criterion 5: oracle consistency (exhaustive + Monte Carlo)
# ---------------------------------------------------------------------------

def test_criterion_oracle_consistency():
    started = time.monotonic()
    # exact expectation over all 6^T outcomes
    config6 = TaskConfig.sibling(2, 3, train_size=1, seed=0)
    graph6 = gen_sibling_graph(2, 3)
    for covered in (0, 2):
        train = TrainKeySet(frozenset(CanonicalKey.of("k", (i,))
                                      for i in range(covered)))
        for t_size in (1, 2, 3, 4):
            exact_cr, exact_dv = exhaustive_oracle_expectation(6, covered, t_size)
            report = oracle_expected(config6, train, t_size=t_size, trials=2,
                                     rng=derive_rng(0, 3), graph=graph6)
            assert abs(report.expected_creativity - float(exact_cr)) < 1e-12
            assert abs(report.expected_diversity - float(exact_dv)) < 1e-12

    # Monte Carlo at standard scale: sibling support 623750, |T| = 1024
    config = TaskConfig.sibling(seed=0)
    assert support_size(config) == 623_750
    train = TrainKeySet(frozenset(CanonicalKey.of("k", (i,))
                                  for i in range(40_000)))
    report = oracle_expected(config, train, t_size=1024, trials=1000,
                             rng=derive_rng(5, 3))
    assert abs(report.mc_mean - report.expected_creativity) <= 3 * report.mc_stderr
    assert abs(report.mc_diversity_mean - report.expected_diversity) <= \
        3 * report.mc_diversity_stderr
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"oracle consistency too slow: {elapsed:.1f}s"
    _passed("oracle consistency",
            f"exhaustive exact, MC within 3 stderr, {elapsed:.1f}s")


# ---------------------------------------------------------------------------
# Criterion 6: generator invariants at standard parameters
# ---------------------------------------------------------------------------

def test_criterion_generator_invariants():
    sib = gen_sibling_graph(5, 500)
    assert all(sib.degree(p) == 500 for p in range(5))
    assert all(sib.degree(c) == 1 for c in range(5, sib.vertex_count))
    assert len(sib.edges) == 2500

    seed = 77
    phase1 = triangle_graph_phase1(999, 3, derive_rng(seed, GRAPH_STREAM))
    assert max(len(ns) for ns in phase1.values()) <= math.ceil(1.2 * 3)

    started = time.monotonic()
    graph = gen_triangle_graph(999, 3, 6, derive_rng(seed, GRAPH_STREAM))
    build_elapsed = time.monotonic() - started
    assert build_elapsed < 5.0, f"triangle build too slow: {build_elapsed:.1f}s"

    triangles = enumerate_triangles(graph)
    participation = [0] * graph.vertex_count
    for a, b, c in triangles:
        participation[a] += 1
        participation[b] += 1
        participation[c] += 1
    assert min(participation) >= 1

    small = gen_triangle_graph(60, 3, 6, derive_rng(3, GRAPH_STREAM))
    assert len(enumerate_triangles(small)) == brute_force_triangle_count(small)
    _passed("generator invariants",
            f"sibling degrees exact, phase-1 cap 4, build {build_elapsed:.2f}s, "
            f"{len(triangles)} triangles, brute-force match")


# ---------------------------------------------------------------------------
# Criterion 7: determinism and round-trip totality
# ---------------------------------------------------------------------------

ROUND_TRIP_CONFIGS = [
    TaskConfig.sibling(3, 8, train_size=400, seed=51),
    TaskConfig.triangle(num_vertices=60, degree=3, triangles_per_vertex=3,
                        train_size=400, seed=51),
    TaskConfig.construction("circle", 9, 15, train_size=400, seed=51),
    TaskConfig.construction("line", 9, 15, train_size=400, seed=51),
]


def test_criterion_determinism_and_round_trip(tmp_path):
    # byte-identical regeneration for every task
    for config in ROUND_TRIP_CONFIGS:
        for name in ("a", "b"):
            graph, samples = generate_dataset(config, "hash", 10)
            write_dataset(tmp_path / config.task / name, config, samples,
                          graph, "hash", 10)
        for fname in ("train.txt", "manifest.json"):
            assert (tmp_path / config.task / "a" / fname).read_bytes() == \
                (tmp_path / config.task / "b" / fname).read_bytes()

    # parse(render(x)) == x over 10k samples per task
    for config in ROUND_TRIP_CONFIGS:
        graph = build_graph(config)
        rng = derive_rng(config.seed, BODY_STREAM)
        prefix_rng = derive_rng(config.seed, 2)
        used = set()
        from creativity_bench import make_prefix
        for i, sample in enumerate(sample_bodies(config, graph, 10_000, rng)):
            mode = ("null", "pause", "hash")[i % 3]
            sample = sample.with_prefix(make_prefix(mode, prefix_rng, used, 10))
            assert parse_line(render_line(sample)) == (sample.prefix, sample.body)

    # fuzzed parsing is total
    rng = random.Random(99)
    glyphs = "01 29\t\n,xyzAB<p>$:"
    for _ in range(10_000):
        junk = "".join(rng.choice(glyphs) for _ in range(rng.randrange(40)))
        parse_line(junk)  # must never raise
    _passed("determinism & round-trip",
            "byte-identical reruns, 40k round-trips, 10k fuzz lines")


# ---------------------------------------------------------------------------
# Criterion 8: engine self-test against the oracle prediction
# ---------------------------------------------------------------------------

def test_criterion_engine_self_test():
    config = TaskConfig.sibling(train_size=1000, seed=61)
    graph, train_samples = generate_dataset(config, "null", 10)
    train_keys = build_train_keys(train_samples, config, graph)

    trials = 1000
    oracle = oracle_expected(config, train_keys, t_size=1024, trials=trials,
                             rng=derive_rng(62, 3), graph=graph)

    fresh_rng = derive_rng(63, BODY_STREAM)
    generations = [(NULL, s.body) for s in sample_bodies(config, graph, 1024, fresh_rng)]
    report = score_set(generations, train_keys, config, graph)

    # one realization against the predicted distribution: use the per-draw
    # standard deviation, not the standard error of the MC mean
    sigma = oracle.mc_stderr * math.sqrt(trials)
    assert abs(report.creativity - oracle.mc_mean) <= 3 * sigma, \
        (report.creativity, oracle.mc_mean, sigma)
    _passed("engine self-test",
            f"creativity {report.creativity:.4f} vs predicted "
            f"{oracle.mc_mean:.4f} (3 sigma = {3 * sigma:.4f})")
