"""Shared domain types for the algorithmic-creativity benchmark engine.

Defines the task configurations, knowledge graphs, samples, prefixes,
canonical equivalence keys and score reports used by every other module,
plus the keyed random-stream derivation that makes all dataset bytes a
pure function of (config, seed).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Any, Iterable, Optional

import numpy as np

ENGINE_VERSION = "0.1.0"

# Reserved words: never part of any vertex vocabulary.
PAUSE_TOKEN = "<p>"
DUMMY_TOKEN = "$"

TRIANGLE_MARKER = "triangle:"
EDGE_MARKER = "edge:"
SEPARATOR = ","

TASK_KINDS = ("sibling", "triangle", "circle", "line")
SIBLING_ORDERS = ("sibling_first", "parent_first")
TRIANGLE_FORMATS = ("edge_list", "node_list")

# Named sub-streams of the master seed (see derive_rng).
GRAPH_STREAM = 0
BODY_STREAM = 1
PREFIX_STREAM = 2
ORACLE_STREAM = 3

_INT_TOKEN = re.compile(r"^(0|[1-9][0-9]*)$")


class ConfigError(ValueError):
    """Raised for task configurations that violate a structural invariant."""


def derive_rng(seed: int, stream: int) -> np.random.Generator:
    """Return an independent random stream keyed by (seed, stream).

    Counter-based (Philox), so identical inputs produce identical draws on
    every platform, and distinct stream ids never collide.
    """
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def parse_vertex_token(token: str) -> Optional[int]:
    """Decimal vertex literal -> int, or None (no signs, no leading zeros)."""
    if _INT_TOKEN.match(token):
        return int(token)
    return None


# ---------------------------------------------------------------------------
# Task configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaskConfig:
    """Full parameterization of one benchmark task instance."""

    task: str
    train_size: int
    seed: int
    # sibling task
    num_parents: Optional[int] = None
    children_per_parent: Optional[int] = None
    sibling_order: str = "sibling_first"
    # triangle task
    num_vertices: Optional[int] = None
    degree: Optional[int] = None
    triangles_per_vertex: Optional[int] = None
    triangle_format: str = "edge_list"
    # circle / line tasks
    length: Optional[int] = None
    vocab_size: Optional[int] = None

    def __post_init__(self) -> None:
        if self.task not in TASK_KINDS:
            raise ConfigError(f"unknown task {self.task!r}")
        if self.train_size < 1:
            raise ConfigError("train_size must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.task == "sibling":
            if self.num_parents is None or self.num_parents < 1:
                raise ConfigError("sibling task needs num_parents >= 1")
            if self.children_per_parent is None or self.children_per_parent < 2:
                raise ConfigError("sibling task needs children_per_parent >= 2")
            if self.sibling_order not in SIBLING_ORDERS:
                raise ConfigError(f"bad sibling_order {self.sibling_order!r}")
        elif self.task == "triangle":
            if self.num_vertices is None or self.num_vertices < 3:
                raise ConfigError("triangle task needs num_vertices >= 3")
            if self.degree is None or self.degree < 2:
                raise ConfigError("triangle task needs degree >= 2")
            if self.triangles_per_vertex is None or self.triangles_per_vertex < 1:
                raise ConfigError("triangle task needs triangles_per_vertex >= 1")
            if self.triangle_format not in TRIANGLE_FORMATS:
                raise ConfigError(f"bad triangle_format {self.triangle_format!r}")
        else:  # circle / line
            if self.length is None or self.length < 3:
                raise ConfigError("construction tasks need length >= 3")
            if self.vocab_size is None or self.vocab_size < self.length:
                raise ConfigError("construction tasks need vocab_size >= length")

    # Paper-default instances -------------------------------------------------

    @classmethod
    def sibling(cls, num_parents: int = 5, children_per_parent: int = 500,
                sibling_order: str = "sibling_first",
                train_size: int = 50_000, seed: int = 0) -> "TaskConfig":
        return cls(task="sibling", train_size=train_size, seed=seed,
                   num_parents=num_parents, children_per_parent=children_per_parent,
                   sibling_order=sibling_order)

    @classmethod
    def triangle(cls, num_vertices: int = 999, degree: int = 3,
                 triangles_per_vertex: int = 6, triangle_format: str = "edge_list",
                 train_size: int = 15_000, seed: int = 0) -> "TaskConfig":
        return cls(task="triangle", train_size=train_size, seed=seed,
                   num_vertices=num_vertices, degree=degree,
                   triangles_per_vertex=triangles_per_vertex,
                   triangle_format=triangle_format)

    @classmethod
    def construction(cls, task: str, length: int = 9, vocab_size: int = 15,
                     train_size: int = 10_000, seed: int = 0) -> "TaskConfig":
        if task not in ("circle", "line"):
            raise ConfigError(f"construction task must be circle or line, got {task!r}")
        return cls(task=task, train_size=train_size, seed=seed,
                   length=length, vocab_size=vocab_size)

    def needs_graph(self) -> bool:
        return self.task in ("sibling", "triangle")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"task": self.task, "train_size": self.train_size,
                               "seed": self.seed}
        if self.task == "sibling":
            out.update(num_parents=self.num_parents,
                       children_per_parent=self.children_per_parent,
                       sibling_order=self.sibling_order)
        elif self.task == "triangle":
            out.update(num_vertices=self.num_vertices, degree=self.degree,
                       triangles_per_vertex=self.triangles_per_vertex,
                       triangle_format=self.triangle_format)
        else:
            out.update(length=self.length, vocab_size=self.vocab_size)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TaskConfig":
        return cls(**data)


# ---------------------------------------------------------------------------
# Knowledge graph
# ---------------------------------------------------------------------------

def normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class KnowledgeGraph:
    """Undirected simple graph; the in-weights world of the discovery tasks.

    For sibling graphs `parents` lists the parent vertex ids; every child
    vertex then has exactly one neighbor (its parent). Treat instances as
    immutable after construction: they are shared freely across workers.
    """

    vertex_count: int
    edges: frozenset  # of normalized (u, v) pairs, u < v
    parents: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        adj: dict[int, list[int]] = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            if u == v:
                raise ConfigError(f"self-loop on vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ConfigError(f"edge ({u},{v}) out of range")
            if u > v:
                raise ConfigError(f"edge ({u},{v}) not normalized")
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._parent_set = frozenset(self.parents) if self.parents is not None else None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def has_vertex(self, v: int) -> bool:
        return 0 <= v < self.vertex_count

    def is_parent(self, v: int) -> bool:
        return self._parent_set is not None and v in self._parent_set

    def children_of(self, parent: int) -> tuple[int, ...]:
        if not self.is_parent(parent):
            raise ConfigError(f"vertex {parent} is not a parent")
        return self.neighbors(parent)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "vertex_count": self.vertex_count,
            "edges": [[u, v] for u, v in self.sorted_edges()],
        }
        if self.parents is not None:
            out["parents"] = list(self.parents)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeGraph":
        parents = tuple(data["parents"]) if "parents" in data else None
        edges = frozenset(normalize_edge(int(u), int(v)) for u, v in data["edges"])
        return cls(vertex_count=int(data["vertex_count"]), edges=edges, parents=parents)


# ---------------------------------------------------------------------------
# Samples and prefixes
# ---------------------------------------------------------------------------

_HASH_TEXT = re.compile(r"^[A-Z]+$")


@dataclass(frozen=True)
class PrefixValue:
    """The conditioning prefix of one datapoint: nothing, pauses, or a hash."""

    mode: str  # "null" | "pause" | "hash"
    text: str
    length: int

    def __post_init__(self) -> None:
        if self.mode == "null":
            ok = self.text == "" and self.length == 0
        elif self.mode == "pause":
            ok = self.length > 0 and self.text == PAUSE_TOKEN * self.length
        elif self.mode == "hash":
            ok = (self.length > 0 and len(self.text) == self.length
                  and bool(_HASH_TEXT.match(self.text)))
        else:
            ok = False
        if not ok:
            raise ConfigError(f"invalid prefix {self.mode!r}/{self.text!r}")

    @classmethod
    def null(cls) -> "PrefixValue":
        return cls("null", "", 0)

    @classmethod
    def pause(cls, length: int) -> "PrefixValue":
        return cls("pause", PAUSE_TOKEN * length, length)

    @classmethod
    def from_hash(cls, text: str) -> "PrefixValue":
        return cls("hash", text, len(text))

    @classmethod
    def from_text(cls, text: str) -> Optional["PrefixValue"]:
        """Classify a raw prefix field; None if it matches no mode."""
        if text == "":
            return cls.null()
        if _HASH_TEXT.match(text):
            return cls.from_hash(text)
        n, rem = divmod(len(text), len(PAUSE_TOKEN))
        if rem == 0 and text == PAUSE_TOKEN * n:
            return cls.pause(n)
        return None

    def to_dict(self) -> dict:
        return {"mode": self.mode, "text": self.text, "length": self.length}

    @classmethod
    def from_dict(cls, data: dict) -> "PrefixValue":
        return cls(data["mode"], data["text"], data["length"])


@dataclass(frozen=True)
class Sample:
    """One datapoint: a prefix plus a body token sequence."""

    prefix: PrefixValue
    body: tuple[str, ...]
    kind: Optional[str] = None  # "triangle_item" | "edge_item" for the triangle task

    def with_prefix(self, prefix: PrefixValue) -> "Sample":
        return replace(self, prefix=prefix)

    def to_dict(self) -> dict:
        out = {"prefix": self.prefix.to_dict(), "body": list(self.body)}
        if self.kind is not None:
            out["kind"] = self.kind
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Sample":
        return cls(PrefixValue.from_dict(data["prefix"]), tuple(data["body"]),
                   data.get("kind"))


# ---------------------------------------------------------------------------
# Canonical keys and score reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalKey:
    """Opaque equivalence-class identifier; equal keys <=> same class."""

    data: bytes

    @classmethod
    def of(cls, tag: str, parts: Iterable[int]) -> "CanonicalKey":
        body = ",".join(str(p) for p in parts)
        return cls(f"{tag}:{body}".encode("ascii"))

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalKey":
        return cls(bytes.fromhex(text))


@dataclass(frozen=True)
class ScoreReport:
    """Counts and the four headline metrics for one scored generation set."""

    total: int
    n_coherent: int
    n_memorized: int
    n_unique_coherent: int
    n_unique_novel_coherent: int
    coherence: float
    memorization: float
    diversity: float
    creativity: float

    @classmethod
    def from_counts(cls, total: int, n_coherent: int, n_memorized: int,
                    n_unique_coherent: int, n_unique_novel_coherent: int) -> "ScoreReport":
        if total < 1:
            raise ConfigError("cannot score an empty generation set")
        return cls(
            total=total,
            n_coherent=n_coherent,
            n_memorized=n_memorized,
            n_unique_coherent=n_unique_coherent,
            n_unique_novel_coherent=n_unique_novel_coherent,
            coherence=n_coherent / total,
            memorization=n_memorized / total,
            diversity=n_unique_coherent / total,
            creativity=n_unique_novel_coherent / total,
        )

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "n_coherent": self.n_coherent,
            "n_memorized": self.n_memorized,
            "n_unique_coherent": self.n_unique_coherent,
            "n_unique_novel_coherent": self.n_unique_novel_coherent,
            "coherence": self.coherence,
            "memorization": self.memorization,
            "diversity": self.diversity,
            "creativity": self.creativity,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScoreReport":
        return cls(**data)
