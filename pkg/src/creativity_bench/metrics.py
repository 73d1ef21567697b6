"""Creativity / diversity / memorization / coherence scoring, plus the
theoretical-maximum oracle for a perfectly uniform sampler.

A generation only carries a canonical key if it is coherent; creativity
counts distinct keys that are coherent and unseen in training, diversity
counts distinct coherent keys, memorization counts generations whose key
was covered by the training set. All four metrics share the |T| denominator
and the raw counts are reported alongside so other conventions can be
recovered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import CanonicalKey, ConfigError, KnowledgeGraph, ScoreReport, Sample, TaskConfig
from .construction import canon_construction, parse_edge_tokens, resolve
from .discovery import (
    EDGE_ITEM,
    canon_sibling,
    canon_triangle,
    coh_sibling,
    coh_triangle,
)
from .graphs import enumerate_triangles

Generation = Optional[tuple]  # (PrefixValue, body tokens) or None for a parse failure


@dataclass(frozen=True)
class TrainKeySet:
    """Deduplicated canonical keys of the training set."""

    keys: frozenset

    def __len__(self) -> int:
        return len(self.keys)

    def __contains__(self, key: CanonicalKey) -> bool:
        return key in self.keys


def classify_generation(body: Sequence[str], config: TaskConfig,
                        graph: Optional[KnowledgeGraph],
                        merge_mirrors: bool = False) -> Optional[CanonicalKey]:
    """Canonical key when the body is coherent, else None."""
    task = config.task
    if task == "sibling":
        if coh_sibling(graph, body, config.sibling_order):
            return canon_sibling(body, config.sibling_order)
        return None
    if task == "triangle":
        if coh_triangle(graph, body, config.triangle_format):
            return canon_triangle(body, config.triangle_format)
        return None
    edges = parse_edge_tokens(body)
    if edges is None:
        return None
    res = resolve(task, edges, config.length, config.vocab_size)
    if res is None:
        return None
    return canon_construction(task, edges, res, merge_mirrors=merge_mirrors)


def build_train_keys(samples: Iterable[Sample], config: TaskConfig,
                     graph: Optional[KnowledgeGraph],
                     merge_mirrors: bool = False) -> TrainKeySet:
    """Key every training sample; triangle-task edge items carry no key."""
    keys = set()
    for sample in samples:
        if config.task == "triangle" and sample.kind == EDGE_ITEM:
            continue
        key = classify_generation(sample.body, config, graph, merge_mirrors)
        if key is not None:
            keys.add(key)
    return TrainKeySet(keys=frozenset(keys))


# Fanning out to worker processes only pays off past this many generations.
_PARALLEL_THRESHOLD = 8192


def _keys_of_chunk(chunk: Sequence[Generation], config: TaskConfig,
                   graph: Optional[KnowledgeGraph],
                   merge_mirrors: bool) -> list:
    return [None if gen is None
            else classify_generation(gen[1], config, graph, merge_mirrors)
            for gen in chunk]


def score_set(generations: Sequence[Generation], train_keys: TrainKeySet,
              config: TaskConfig, graph: Optional[KnowledgeGraph] = None,
              merge_mirrors: bool = False, jobs: int = 1) -> ScoreReport:
    """Score a generation set; entries of None count as incoherent.

    Classification is per-generation and order-independent, so with jobs > 1
    it fans out over a process pool and reduces the counts; the report is
    identical either way.
    """
    if config.needs_graph() and graph is None:
        raise ConfigError(f"{config.task} task requires the knowledge graph to score")
    if not generations:
        raise ConfigError("cannot score an empty generation set")

    if jobs > 1 and len(generations) >= _PARALLEL_THRESHOLD:
        import functools
        import multiprocessing

        step = (len(generations) + jobs - 1) // jobs
        chunks = [generations[i:i + step] for i in range(0, len(generations), step)]
        worker = functools.partial(_keys_of_chunk, config=config, graph=graph,
                                   merge_mirrors=merge_mirrors)
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            key_lists = pool.map(worker, chunks)
        keys = [k for chunk in key_lists for k in chunk]
    else:
        keys = _keys_of_chunk(generations, config, graph, merge_mirrors)

    n_coherent = 0
    n_memorized = 0
    coherent_keys = set()
    novel_keys = set()
    for key in keys:
        if key is None:
            continue
        n_coherent += 1
        coherent_keys.add(key)
        if key in train_keys:
            n_memorized += 1
        else:
            novel_keys.add(key)
    return ScoreReport.from_counts(
        total=len(generations),
        n_coherent=n_coherent,
        n_memorized=n_memorized,
        n_unique_coherent=len(coherent_keys),
        n_unique_novel_coherent=len(novel_keys),
    )


# ---------------------------------------------------------------------------
# Theoretical-maximum oracle
# ---------------------------------------------------------------------------

def support_size(config: TaskConfig, graph: Optional[KnowledgeGraph] = None) -> int:
    """Number of canonical equivalence classes in the task's support.

    Every class has equal string multiplicity (2 sibling orderings, 6
    triangle renderings, identical vertex-assignment counts per shuffle
    class), so uniform-over-strings marginalizes to uniform-over-keys.
    """
    if config.task == "sibling":
        n = config.children_per_parent
        return config.num_parents * math.comb(n, 2)
    if config.task == "triangle":
        if graph is None:
            raise ConfigError("triangle support size requires the graph")
        return len(enumerate_triangles(graph))
    return math.factorial(config.length - 1)


@dataclass(frozen=True)
class OracleReport:
    """Expected best-case metrics for a sampler matching the true distribution."""

    support_size: int
    covered: int
    expected_creativity: float
    expected_diversity: float
    mc_mean: float
    mc_stderr: float
    mc_diversity_mean: float
    mc_diversity_stderr: float
    trials: int
    t_size: int

    def to_dict(self) -> dict:
        return {
            "support_size": self.support_size,
            "covered": self.covered,
            "expected_creativity": self.expected_creativity,
            "expected_diversity": self.expected_diversity,
            "mc_mean": self.mc_mean,
            "mc_stderr": self.mc_stderr,
            "mc_diversity_mean": self.mc_diversity_mean,
            "mc_diversity_stderr": self.mc_diversity_stderr,
            "trials": self.trials,
            "t_size": self.t_size,
        }


def _per_key_hit_probability(support: int, t_size: int) -> float:
    """P(a given key appears in t_size uniform draws), computed stably."""
    if support == 1:
        return 1.0
    return -math.expm1(t_size * math.log1p(-1.0 / support))


def expected_distinct_fraction(support: int, t_size: int) -> float:
    """E[#distinct keys among t_size uniform draws] / t_size."""
    return support * _per_key_hit_probability(support, t_size) / t_size


def oracle_expected(config: TaskConfig, train_keys: TrainKeySet, t_size: int,
                    trials: int, rng: np.random.Generator,
                    graph: Optional[KnowledgeGraph] = None) -> OracleReport:
    """Analytic and Monte Carlo expectations under uniform-over-keys sampling.

    Each of the K keys is hit with equal probability; the C covered keys can
    never count as novel. The analytic values are exact expectations; the
    Monte Carlo repeats the actual set-level metric computation and reports
    mean and standard error of the mean.
    """
    support = support_size(config, graph)
    covered = len(train_keys)
    if covered > support:
        raise ConfigError(
            f"training covers {covered} keys but the support only has {support}; "
            "manifest and graph are inconsistent")
    if t_size < 1 or trials < 1:
        raise ConfigError("t_size and trials must be positive")

    per_key_hit = _per_key_hit_probability(support, t_size)
    expected_diversity = expected_distinct_fraction(support, t_size)
    expected_creativity = (support - covered) * per_key_hit / t_size

    # Covered keys are relabeled 0..C-1; uniformity makes the choice moot.
    cr = np.empty(trials)
    dv = np.empty(trials)
    for t in range(trials):
        draws = rng.integers(support, size=t_size)
        distinct = np.unique(draws)
        dv[t] = distinct.size / t_size
        cr[t] = int((distinct >= covered).sum()) / t_size
    denom = math.sqrt(trials)
    return OracleReport(
        support_size=support,
        covered=covered,
        expected_creativity=expected_creativity,
        expected_diversity=expected_diversity,
        mc_mean=float(cr.mean()),
        mc_stderr=float(cr.std(ddof=1) / denom) if trials > 1 else 0.0,
        mc_diversity_mean=float(dv.mean()),
        mc_diversity_stderr=float(dv.std(ddof=1) / denom) if trials > 1 else 0.0,
        trials=trials,
        t_size=t_size,
    )
