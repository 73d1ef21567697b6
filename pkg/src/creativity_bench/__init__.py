"""Benchmark engine for open-ended algorithmic creativity tasks.

Four procedurally generated tasks probe two styles of creative structure:
discovering relations in a fixed knowledge graph (sibling triplets,
triangles) and constructing shuffled adjacency lists that resolve into a
cycle or path. The engine generates training datasets, scores model
generations for creativity / diversity / memorization / coherence under
per-task canonical equivalence, and computes the theoretical best scores a
perfectly distribution-matched sampler could reach.
"""

from .core import (
    ENGINE_VERSION,
    CanonicalKey,
    ConfigError,
    KnowledgeGraph,
    PrefixValue,
    Sample,
    ScoreReport,
    TaskConfig,
    derive_rng,
)
from .construction import (
    Resolution,
    canon_construction,
    coh_construction,
    parse_edge_tokens,
    render_edges,
    resolve,
    sample_construction,
)
from .dataset_io import (
    Manifest,
    build_graph,
    generate_dataset,
    make_prefix,
    parse_line,
    read_dataset,
    read_generations,
    read_manifest,
    render_line,
    sample_bodies,
    write_dataset,
)
from .discovery import (
    canon_sibling,
    canon_triangle,
    coh_sibling,
    coh_triangle,
    sample_sibling,
    sample_triangle,
    sample_triangle_item,
)
from .graphs import (
    GraphConstructionError,
    enumerate_triangles,
    gen_sibling_graph,
    gen_triangle_graph,
)
from .metrics import (
    OracleReport,
    TrainKeySet,
    build_train_keys,
    oracle_expected,
    score_set,
    support_size,
)

__version__ = ENGINE_VERSION
