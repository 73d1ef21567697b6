"""Sampling, resolution and canonicalization for the construction tasks.

A circle/line body is a shuffled list of directed edges. It is coherent iff
some permutation of the edges chains head-to-tail into a directed cycle
(resp. simple path) over exactly N distinct vertices from the 0..M-1
vocabulary. The canonical key keeps only that resolving permutation of the
string positions, so instances differing solely in vertex identity collapse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import SEPARATOR, CanonicalKey, PrefixValue, Sample, parse_vertex_token

DirectedEdge = tuple[int, int]


@dataclass(frozen=True)
class Resolution:
    """A resolving permutation: string-edge indices in chained order."""

    order: tuple[int, ...]
    kind: str  # "circle" | "line"


def edge_count(kind: str, length: int) -> int:
    return length if kind == "circle" else length - 1


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample_construction(kind: str, length: int, vocab_size: int,
                        rng: np.random.Generator) -> Sample:
    """Uniform draw over coherent strings.

    Picks N distinct vertices in uniform random order, chains them into a
    directed cycle or path, then shuffles the edge list uniformly. Every
    coherent string has the same number of preimages under this scheme
    (N rotations for cycles, exactly one for paths), so the result is
    uniform over the support.
    """
    if not 3 <= length <= vocab_size:
        raise ValueError(f"need 3 <= length <= vocab_size, got {length}/{vocab_size}")
    verts = rng.choice(vocab_size, size=length, replace=False)
    if kind == "circle":
        edges = [(int(verts[i]), int(verts[(i + 1) % length])) for i in range(length)]
    elif kind == "line":
        edges = [(int(verts[i]), int(verts[i + 1])) for i in range(length - 1)]
    else:
        raise ValueError(f"unknown construction kind {kind!r}")
    perm = rng.permutation(len(edges))
    shuffled = [edges[int(i)] for i in perm]
    return Sample(prefix=PrefixValue.null(), body=render_edges(shuffled))


def render_edges(edges: Sequence[DirectedEdge]) -> tuple[str, ...]:
    """Body tokens: `u v` per edge, edges joined by the separator token."""
    tokens: list[str] = []
    for k, (u, v) in enumerate(edges):
        if k:
            tokens.append(SEPARATOR)
        tokens.append(str(u))
        tokens.append(str(v))
    return tuple(tokens)


def parse_edge_tokens(body: Sequence[str]) -> Optional[list[DirectedEdge]]:
    """Inverse of render_edges; None unless the grammar matches exactly."""
    if len(body) % 3 != 2:
        return None
    edges: list[DirectedEdge] = []
    for k in range(0, len(body), 3):
        u = parse_vertex_token(body[k])
        v = parse_vertex_token(body[k + 1])
        if u is None or v is None:
            return None
        if k + 2 < len(body) and body[k + 2] != SEPARATOR:
            return None
        edges.append((u, v))
    return edges


# ---------------------------------------------------------------------------
# Resolution
# ---------------------------------------------------------------------------

def resolve(kind: str, edges: Sequence[DirectedEdge], length: int,
            vocab_size: int) -> Optional[Resolution]:
    """Find the permutation chaining `edges` into a cycle or path, if any.

    Cycle: every vertex must have in-degree = out-degree = 1 and one
    directed cycle must cover all N vertices. Path: one source, one sink,
    every other vertex balanced, one directed walk covering everything.
    Any malformed input (wrong edge count, out-of-range vertex, repeated
    vertex, broken chain) yields None; this function never raises.
    """
    expected = edge_count(kind, length)
    if len(edges) != expected:
        return None
    verts: set[int] = set()
    succ: dict[int, tuple[int, int]] = {}  # tail -> (edge index, head)
    indeg: dict[int, int] = {}
    for idx, (u, v) in enumerate(edges):
        if not (0 <= u < vocab_size and 0 <= v < vocab_size) or u == v:
            return None
        if u in succ:  # out-degree would exceed 1
            return None
        succ[u] = (idx, v)
        indeg[v] = indeg.get(v, 0) + 1
        verts.add(u)
        verts.add(v)
    if len(verts) != length:
        return None
    if any(d > 1 for d in indeg.values()):
        return None

    if kind == "circle":
        # All tails distinct and all heads distinct over N edges on N
        # vertices means in = out = 1 everywhere; walk must close in
        # exactly N steps (shorter means several disjoint cycles).
        if len(succ) != length or len(indeg) != length:
            return None
        start = edges[0][0]
        order = []
        cur = start
        for _ in range(length):
            idx, cur = succ[cur]
            order.append(idx)
        # Closing early and lapping a shorter sub-cycle repeats indices.
        if cur != start or len(set(order)) != length:
            return None
        return Resolution(order=tuple(order), kind=kind)

    # Path: exactly one source (never a head) and one sink (never a tail).
    sources = [v for v in verts if v not in indeg]
    sinks = [v for v in verts if v not in succ]
    if len(sources) != 1 or len(sinks) != 1:
        return None
    order = []
    cur = sources[0]
    for _ in range(expected):
        if cur not in succ:
            return None
        idx, cur = succ[cur]
        order.append(idx)
    if cur != sinks[0]:
        return None
    return Resolution(order=tuple(order), kind=kind)


def coh_construction(kind: str, length: int, vocab_size: int,
                     body: Sequence[str]) -> bool:
    """True iff body parses as directed edges and a resolution exists."""
    edges = parse_edge_tokens(body)
    if edges is None:
        return False
    return resolve(kind, edges, length, vocab_size) is not None


def canon_construction(kind: str, edges: Sequence[DirectedEdge],
                       resolution: Resolution,
                       merge_mirrors: bool = False) -> CanonicalKey:
    """Key = resolving permutation with vertex identities erased.

    Cycle keys are rotated to start at string-edge index 0, since any of
    the N chain positions could equally begin the resolution. With
    `merge_mirrors`, a permutation and its whole-sequence reversal share a
    key (the stricter default treats reversed traversals as distinct).
    """
    def canonical(seq: tuple[int, ...]) -> tuple[int, ...]:
        if kind == "circle":
            i = seq.index(0)
            return seq[i:] + seq[:i]
        return seq

    key_seq = canonical(resolution.order)
    if merge_mirrors:
        mirrored = canonical(tuple(reversed(resolution.order)))
        key_seq = min(key_seq, mirrored)
    tag = "cyc" if kind == "circle" else "path"
    return CanonicalKey.of(tag, key_seq)
