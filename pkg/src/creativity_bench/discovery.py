"""Sampling, coherence and canonicalization for the discovery tasks.

Sibling bodies are (child, child', parent) triplets over the bipartite
graph; triangle bodies render a 3-clique either as a closed directed edge
list or as a bare vertex triple, mixed 1:2 with plain edge items during
training. Coherence predicates accept arbitrary token garbage and never
raise; canonical keys erase the orderings the tasks treat as equivalent.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import (
    EDGE_MARKER,
    SEPARATOR,
    TRIANGLE_MARKER,
    CanonicalKey,
    KnowledgeGraph,
    PrefixValue,
    Sample,
    parse_vertex_token,
)

TRIANGLE_ITEM = "triangle_item"
EDGE_ITEM = "edge_item"


# ---------------------------------------------------------------------------
# Sibling discovery
# ---------------------------------------------------------------------------

def sample_sibling(graph: KnowledgeGraph, order: str,
                   rng: np.random.Generator) -> Sample:
    """Uniform draw over coherent ordered triplets.

    Parent uniform over parents, then an ordered pair of two distinct
    children of that parent; every parent has the same number of children,
    so this is uniform over all coherent strings.
    """
    parents = graph.parents
    parent = parents[int(rng.integers(len(parents)))]
    children = graph.children_of(parent)
    n = len(children)
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    a, b = children[i], children[j]
    if order == "sibling_first":
        body = (str(a), str(b), str(parent))
    else:
        body = (str(parent), str(a), str(b))
    return Sample(prefix=PrefixValue.null(), body=body)


def _sibling_triplet(body: Sequence[str], order: str) -> Optional[tuple[int, int, int]]:
    """(child, child', parent) from a raw body, or None if malformed."""
    if len(body) != 3:
        return None
    vals = [parse_vertex_token(t) for t in body]
    if any(v is None for v in vals):
        return None
    if order == "sibling_first":
        a, b, parent = vals
    elif order == "parent_first":
        parent, a, b = vals
    else:
        return None
    return a, b, parent


def coh_sibling(graph: KnowledgeGraph, body: Sequence[str], order: str) -> bool:
    """True iff body is two distinct children of one parent, in task order."""
    trip = _sibling_triplet(body, order)
    if trip is None:
        return False
    a, b, parent = trip
    if a == b or not graph.is_parent(parent):
        return False
    children = graph.neighbors(parent)
    return a in children and b in children


def canon_sibling(body: Sequence[str], order: str) -> CanonicalKey:
    """Equivalence key with the sibling ordering erased. Requires coherence."""
    a, b, parent = _sibling_triplet(body, order)
    lo, hi = (a, b) if a < b else (b, a)
    return CanonicalKey.of("sib", (lo, hi, parent))


# ---------------------------------------------------------------------------
# Triangle discovery
# ---------------------------------------------------------------------------

def render_triangle(u: int, v: int, w: int, triangle_format: str) -> tuple[str, ...]:
    """Body tokens for one oriented triangle rendering."""
    if triangle_format == "edge_list":
        return (TRIANGLE_MARKER, str(u), str(v), SEPARATOR, str(v), str(w),
                SEPARATOR, str(w), str(u))
    return (TRIANGLE_MARKER, str(u), str(v), str(w))


def render_edge(u: int, v: int) -> tuple[str, ...]:
    """Body tokens for one oriented edge item (both directions spelled out)."""
    return (EDGE_MARKER, str(u), str(v), SEPARATOR, str(v), str(u))


def sample_triangle(graph: KnowledgeGraph, triangles: Sequence[tuple[int, int, int]],
                    triangle_format: str, rng: np.random.Generator) -> Sample:
    """Uniform triangle, then uniform over its 6 oriented renderings."""
    if not triangles:
        raise ValueError("graph has no triangles to sample")
    t = triangles[int(rng.integers(len(triangles)))]
    start = int(rng.integers(3))
    direction = int(rng.integers(2))
    ordered = [t[start], t[(start + 1) % 3], t[(start + 2) % 3]]
    if direction:
        ordered = [ordered[0], ordered[2], ordered[1]]
    u, v, w = ordered
    return Sample(prefix=PrefixValue.null(), body=render_triangle(u, v, w, triangle_format),
                  kind=TRIANGLE_ITEM)


def sample_edge(graph: KnowledgeGraph, edges: Sequence[tuple[int, int]],
                rng: np.random.Generator) -> Sample:
    """Uniform edge, uniform orientation."""
    u, v = edges[int(rng.integers(len(edges)))]
    if rng.integers(2):
        u, v = v, u
    return Sample(prefix=PrefixValue.null(), body=render_edge(u, v), kind=EDGE_ITEM)


def sample_triangle_item(graph: KnowledgeGraph,
                         triangles: Sequence[tuple[int, int, int]],
                         edges: Sequence[tuple[int, int]],
                         triangle_format: str,
                         rng: np.random.Generator) -> Sample:
    """The training mixture: 1/3 triangle items, 2/3 edge items."""
    if int(rng.integers(3)) == 0:
        return sample_triangle(graph, triangles, triangle_format, rng)
    return sample_edge(graph, edges, rng)


def _triangle_vertices(body: Sequence[str],
                       triangle_format: str) -> Optional[tuple[int, int, int]]:
    """Vertices of a triangle-marked body, or None if the pattern breaks.

    Edge-list bodies must form a closed directed chain u->v->w->u; node-list
    bodies are a bare triple. Only `triangle:`-marked bodies qualify.
    """
    if not body or body[0] != TRIANGLE_MARKER:
        return None
    if triangle_format == "edge_list":
        if len(body) != 9 or body[3] != SEPARATOR or body[6] != SEPARATOR:
            return None
        vals = [parse_vertex_token(body[i]) for i in (1, 2, 4, 5, 7, 8)]
        if any(v is None for v in vals):
            return None
        a, b, c, d, e, f = vals
        if b != c or d != e or f != a:
            return None
        u, v, w = a, b, d
    else:
        if len(body) != 4:
            return None
        vals = [parse_vertex_token(t) for t in body[1:]]
        if any(v is None for v in vals):
            return None
        u, v, w = vals
    if len({u, v, w}) != 3:
        return None
    return u, v, w


def coh_triangle(graph: KnowledgeGraph, body: Sequence[str],
                 triangle_format: str) -> bool:
    """True iff body renders a triangle whose three edges all exist."""
    tri = _triangle_vertices(body, triangle_format)
    if tri is None:
        return False
    u, v, w = tri
    if not (graph.has_vertex(u) and graph.has_vertex(v) and graph.has_vertex(w)):
        return False
    return graph.has_edge(u, v) and graph.has_edge(v, w) and graph.has_edge(w, u)


def canon_triangle(body: Sequence[str], triangle_format: str) -> CanonicalKey:
    """Key = sorted vertex triple; all 6 renderings collapse. Requires coherence."""
    u, v, w = _triangle_vertices(body, triangle_format)
    return CanonicalKey.of("tri", sorted((u, v, w)))
