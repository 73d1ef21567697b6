"""Bit-exact dataset files: rendering, parsing, prefixes and manifests.

A dataset directory holds `train.txt` (one `prefix TAB body` line per
sample, UTF-8, LF), `graph.json` for the discovery tasks, and
`manifest.json` recording the config, prefix scheme and SHA-256 digests of
every file. Given the same (config, seed, engine version) the bytes are
identical on every platform.
"""

from __future__ import annotations

import hashlib
import json
import os
import string
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .core import (
    BODY_STREAM,
    EDGE_MARKER,
    ENGINE_VERSION,
    GRAPH_STREAM,
    PREFIX_STREAM,
    TRIANGLE_MARKER,
    ConfigError,
    KnowledgeGraph,
    PrefixValue,
    Sample,
    TaskConfig,
    derive_rng,
)
from .construction import sample_construction
from .discovery import EDGE_ITEM, TRIANGLE_ITEM, sample_sibling, sample_triangle_item
from .graphs import enumerate_triangles, gen_sibling_graph, gen_triangle_graph

HASH_ALPHABET = string.ascii_uppercase
DEFAULT_HASH_LENGTH = 10
PREFIX_MODES = ("null", "pause", "hash")


class DatasetError(ValueError):
    """Raised for unwritable, inconsistent or digest-mismatched datasets."""


# ---------------------------------------------------------------------------
# Prefixes
# ---------------------------------------------------------------------------

def make_prefix(mode: str, rng: np.random.Generator,
                used: Optional[set] = None,
                length: int = DEFAULT_HASH_LENGTH) -> PrefixValue:
    """Draw the next prefix; hash prefixes are unique against `used`.

    The caller owns `used`: seeding it with training hashes is how test-time
    hash pools stay disjoint from training.
    """
    if mode == "null":
        return PrefixValue.null()
    if mode == "pause":
        return PrefixValue.pause(length)
    if mode != "hash":
        raise ConfigError(f"unknown prefix mode {mode!r}")
    if used is None:
        used = set()
    if len(used) >= 26 ** length:
        raise DatasetError(f"hash space [A-Z]^{length} exhausted")
    while True:
        text = "".join(HASH_ALPHABET[i] for i in rng.integers(26, size=length))
        if text not in used:
            used.add(text)
            return PrefixValue.from_hash(text)


# ---------------------------------------------------------------------------
# Line grammar
# ---------------------------------------------------------------------------

def render_line(sample: Sample) -> str:
    """`prefix TAB space-joined-body NEWLINE`; rejects whitespace in tokens."""
    for token in sample.body:
        if not token or any(c.isspace() for c in token):
            raise DatasetError(f"body token {token!r} contains whitespace")
    return sample.prefix.text + "\t" + " ".join(sample.body) + "\n"


def parse_line(line: str, config: Optional[TaskConfig] = None):
    """Inverse of render_line; returns (PrefixValue, body) or None.

    Total over arbitrary input: malformed lines (wrong TAB count, empty
    body, doubled spaces, unclassifiable prefix) come back as None and the
    scorer treats them as incoherent. `config` is accepted for interface
    symmetry; the grammar itself is task-independent.
    """
    if line.endswith("\n"):
        line = line[:-1]
    parts = line.split("\t")
    if len(parts) != 2:
        return None
    prefix_text, body_text = parts
    prefix = PrefixValue.from_text(prefix_text)
    if prefix is None:
        return None
    tokens = body_text.split(" ")
    if not body_text or any(t == "" for t in tokens):
        return None
    if any(c.isspace() for t in tokens for c in t):
        return None
    return prefix, tuple(tokens)


def sample_kind(body: Sequence[str]) -> Optional[str]:
    """Triangle-task item kind implied by the leading marker token."""
    if body and body[0] == TRIANGLE_MARKER:
        return TRIANGLE_ITEM
    if body and body[0] == EDGE_MARKER:
        return EDGE_ITEM
    return None


# ---------------------------------------------------------------------------
# Dataset generation
# ---------------------------------------------------------------------------

def build_graph(config: TaskConfig) -> Optional[KnowledgeGraph]:
    """The task's knowledge graph (None for the construction tasks)."""
    if config.task == "sibling":
        return gen_sibling_graph(config.num_parents, config.children_per_parent)
    if config.task == "triangle":
        rng = derive_rng(config.seed, GRAPH_STREAM)
        return gen_triangle_graph(config.num_vertices, config.degree,
                                  config.triangles_per_vertex, rng)
    return None


def sample_bodies(config: TaskConfig, graph: Optional[KnowledgeGraph],
                  count: int, rng: np.random.Generator) -> list[Sample]:
    """Draw `count` i.i.d. bodies from the task distribution (null prefixes)."""
    if config.task == "sibling":
        return [sample_sibling(graph, config.sibling_order, rng) for _ in range(count)]
    if config.task == "triangle":
        triangles = sorted(enumerate_triangles(graph))
        if not triangles:
            raise DatasetError("triangle graph contains no triangles")
        edges = graph.sorted_edges()
        return [sample_triangle_item(graph, triangles, edges,
                                     config.triangle_format, rng)
                for _ in range(count)]
    return [sample_construction(config.task, config.length, config.vocab_size, rng)
            for _ in range(count)]


def generate_dataset(config: TaskConfig, prefix_mode: str = "hash",
                     prefix_length: int = DEFAULT_HASH_LENGTH):
    """Full in-memory dataset: graph (if any) plus prefixed training samples."""
    if prefix_mode not in PREFIX_MODES:
        raise ConfigError(f"unknown prefix mode {prefix_mode!r}")
    graph = build_graph(config)
    body_rng = derive_rng(config.seed, BODY_STREAM)
    bodies = sample_bodies(config, graph, config.train_size, body_rng)
    prefix_rng = derive_rng(config.seed, PREFIX_STREAM)
    used: set = set()
    samples = [b.with_prefix(make_prefix(prefix_mode, prefix_rng, used, prefix_length))
               for b in bodies]
    return graph, samples


# ---------------------------------------------------------------------------
# Files and manifests
# ---------------------------------------------------------------------------

TRAIN_FILENAME = "train.txt"
GRAPH_FILENAME = "graph.json"
MANIFEST_FILENAME = "manifest.json"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Manifest:
    """Recorded provenance of one dataset directory."""

    config: TaskConfig
    prefix_mode: str
    prefix_length: int
    engine_version: str
    train_path: str
    graph_path: Optional[str]
    counts: dict
    digests: dict

    def to_dict(self) -> dict:
        return {
            "engine_version": self.engine_version,
            "config": self.config.to_dict(),
            "prefix_mode": self.prefix_mode,
            "prefix_length": self.prefix_length,
            "train_path": self.train_path,
            "graph_path": self.graph_path,
            "counts": self.counts,
            "digests": self.digests,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Manifest":
        return cls(
            config=TaskConfig.from_dict(data["config"]),
            prefix_mode=data["prefix_mode"],
            prefix_length=data["prefix_length"],
            engine_version=data["engine_version"],
            train_path=data["train_path"],
            graph_path=data.get("graph_path"),
            counts=dict(data["counts"]),
            digests=dict(data["digests"]),
        )


def _json_bytes(data: dict) -> bytes:
    return (json.dumps(data, sort_keys=True, indent=2) + "\n").encode("utf-8")


def write_dataset(out_dir, config: TaskConfig, samples: Sequence[Sample],
                  graph: Optional[KnowledgeGraph], prefix_mode: str,
                  prefix_length: int) -> Path:
    """Write train/graph/manifest atomically; returns the manifest path.

    Files are staged in a temp directory next to the target and renamed in
    one step, so a failed run never leaves a partial dataset behind.
    """
    out_dir = Path(out_dir)
    if out_dir.exists():
        if any(out_dir.iterdir()):
            raise DatasetError(f"refusing to overwrite non-empty {out_dir}")
        out_dir.rmdir()
    out_dir.parent.mkdir(parents=True, exist_ok=True)

    train_bytes = "".join(render_line(s) for s in samples).encode("utf-8")
    digests = {TRAIN_FILENAME: sha256_hex(train_bytes)}
    graph_bytes = None
    if graph is not None:
        graph_bytes = _json_bytes(graph.to_dict())
        digests[GRAPH_FILENAME] = sha256_hex(graph_bytes)

    counts = {"train_size": len(samples)}
    if config.task == "triangle":
        counts["triangle_items"] = sum(1 for s in samples if s.kind == TRIANGLE_ITEM)
        counts["edge_items"] = sum(1 for s in samples if s.kind == EDGE_ITEM)

    manifest = Manifest(
        config=config,
        prefix_mode=prefix_mode,
        prefix_length=prefix_length,
        engine_version=ENGINE_VERSION,
        train_path=TRAIN_FILENAME,
        graph_path=GRAPH_FILENAME if graph is not None else None,
        counts=counts,
        digests=digests,
    )

    staging = Path(tempfile.mkdtemp(prefix=out_dir.name + ".tmp-",
                                    dir=out_dir.parent))
    try:
        (staging / TRAIN_FILENAME).write_bytes(train_bytes)
        if graph_bytes is not None:
            (staging / GRAPH_FILENAME).write_bytes(graph_bytes)
        (staging / MANIFEST_FILENAME).write_bytes(_json_bytes(manifest.to_dict()))
        os.rename(staging, out_dir)
    except BaseException:
        for leftover in staging.glob("*") if staging.exists() else []:
            leftover.unlink()
        if staging.exists():
            staging.rmdir()
        raise
    return out_dir / MANIFEST_FILENAME


def read_manifest(manifest_path) -> tuple[Manifest, str]:
    """Load a manifest; returns it with the digest of its own bytes."""
    manifest_path = Path(manifest_path)
    raw = manifest_path.read_bytes()
    return Manifest.from_dict(json.loads(raw.decode("utf-8"))), sha256_hex(raw)


def _verified_bytes(base_dir: Path, rel_path: str, expected: str) -> bytes:
    raw = (base_dir / rel_path).read_bytes()
    actual = sha256_hex(raw)
    if actual != expected:
        raise DatasetError(
            f"{rel_path}: digest mismatch (manifest {expected[:12]}.., file {actual[:12]}..)")
    return raw


def read_dataset(manifest: Manifest, base_dir) -> tuple[list[Sample], Optional[KnowledgeGraph]]:
    """Re-load samples and graph, verifying every recorded digest."""
    base_dir = Path(base_dir)
    graph = None
    if manifest.graph_path is not None:
        raw = _verified_bytes(base_dir, manifest.graph_path,
                              manifest.digests[manifest.graph_path])
        graph = KnowledgeGraph.from_dict(json.loads(raw.decode("utf-8")))
    raw = _verified_bytes(base_dir, manifest.train_path,
                          manifest.digests[manifest.train_path])
    samples = []
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        parsed = parse_line(line)
        if parsed is None:
            raise DatasetError(f"{manifest.train_path}:{lineno}: unparseable line")
        prefix, body = parsed
        samples.append(Sample(prefix=prefix, body=body, kind=sample_kind(body)))
    return samples, graph


def read_generations(path) -> list:
    """Generation lines -> parse results; malformed lines become None markers."""
    raw = Path(path).read_bytes().decode("utf-8", errors="replace")
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [parse_line(line) for line in lines]
