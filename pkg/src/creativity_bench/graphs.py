"""Construction of the in-weights graphs behind the two discovery tasks.

The sibling graph is a parent/children bipartite forest; the triangle graph
is grown in two phases (degree top-up, then explicit triangle closure) so it
is neither too sparse to contain triangles nor dense enough to make random
triples trivially coherent.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional

import numpy as np

from .core import KnowledgeGraph, normalize_edge


class GraphConstructionError(ValueError):
    """Raised when the requested parameters cannot produce a usable graph."""


def gen_sibling_graph(num_parents: int, children_per_parent: int,
                      rng: Optional[np.random.Generator] = None) -> KnowledgeGraph:
    """Bipartite graph: parents 0..m-1, then n children attached to each.

    Vertex ids are contiguous with parents first, so the layout is fully
    determined by (m, n); `rng` is accepted for signature symmetry with the
    other builders but never consumed.
    """
    m, n = num_parents, children_per_parent
    if m < 1:
        raise GraphConstructionError("need at least one parent")
    if n < 2:
        raise GraphConstructionError("need at least two children per parent")
    edges = set()
    for p in range(m):
        base = m + p * n
        for j in range(n):
            edges.add((p, base + j))
    return KnowledgeGraph(vertex_count=m + m * n, edges=frozenset(edges),
                          parents=tuple(range(m)))


def triangle_graph_phase1(num_vertices: int, degree: int,
                          rng: np.random.Generator) -> dict[int, set[int]]:
    """Phase 1 adjacency: top every vertex up to `degree` incident edges.

    Vertices are processed in id order. Each new edge goes to a uniformly
    chosen candidate whose degree stays within ceil(1.2 * degree) after the
    edge is added; a vertex is skipped once no candidate remains. Returns
    the adjacency sets (callers may mutate their copy in phase 2).
    """
    cap = math.ceil(1.2 * degree)
    adj: dict[int, set[int]] = {v: set() for v in range(num_vertices)}
    for v in range(num_vertices):
        while len(adj[v]) < degree:
            eligible = [u for u in range(num_vertices)
                        if u != v and u not in adj[v] and len(adj[u]) + 1 <= cap]
            if not eligible:
                break
            u = eligible[int(rng.integers(len(eligible)))]
            adj[v].add(u)
            adj[u].add(v)
    return adj


def gen_triangle_graph(num_vertices: int, degree: int, triangles_per_vertex: int,
                       rng: np.random.Generator) -> KnowledgeGraph:
    """Two-phase triangle-rich graph.

    Phase 1 tops vertices up to `degree` edges under the degree cap; phase 2
    walks the vertices in id order again and closes `triangles_per_vertex`
    uniformly chosen neighbor pairs of each vertex into triangles (all pairs
    when fewer exist). Closures added while processing earlier vertices are
    visible to later ones.
    """
    if num_vertices < 3:
        raise GraphConstructionError("need at least three vertices")
    if degree < 2:
        raise GraphConstructionError("need degree >= 2")
    adj = triangle_graph_phase1(num_vertices, degree, rng)
    worst = min(len(ns) for ns in adj.values())
    if worst < 2:
        raise GraphConstructionError(
            f"phase 1 left a vertex with {worst} neighbors; "
            f"graph too small for degree {degree}")

    tri = triangles_per_vertex
    for v in range(num_vertices):
        pairs = list(itertools.combinations(sorted(adj[v]), 2))
        if len(pairs) > tri:
            idx = rng.choice(len(pairs), size=tri, replace=False)
            chosen = [pairs[i] for i in sorted(idx)]
        else:
            chosen = pairs
        for a, b in chosen:
            adj[a].add(b)
            adj[b].add(a)

    edges = frozenset(normalize_edge(u, v)
                      for u, ns in adj.items() for v in ns if u < v)
    return KnowledgeGraph(vertex_count=num_vertices, edges=edges)


def enumerate_triangles(graph: KnowledgeGraph) -> frozenset:
    """All 3-cliques, each reported once as a sorted vertex triple."""
    out = set()
    for v in range(graph.vertex_count):
        higher = [u for u in graph.neighbors(v) if u > v]
        for a, b in itertools.combinations(higher, 2):
            if graph.has_edge(a, b):
                out.add((v, a, b))
    return frozenset(out)


def triangles_per_vertex_counts(graph: KnowledgeGraph,
                                triangles: Optional[frozenset] = None) -> list[int]:
    """How many triangles each vertex participates in (stats/reporting)."""
    if triangles is None:
        triangles = enumerate_triangles(graph)
    counts = [0] * graph.vertex_count
    for a, b, c in triangles:
        counts[a] += 1
        counts[b] += 1
        counts[c] += 1
    return counts
