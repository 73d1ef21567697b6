"""Independent brute-force oracles used to freeze expected test values.

Everything here deliberately avoids the library's own algorithms: the
resolution checker tries every edge permutation, triangle counting loops
over all vertex triples, and the oracle expectation enumerates every
possible draw outcome.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_force_resolvable(kind: str, edges, length: int, vocab_size: int) -> bool:
    """Try all E! edge orders looking for a chained cycle/path."""
    expected = length if kind == "circle" else length - 1
    if len(edges) != expected:
        return False
    for u, v in edges:
        if not (0 <= u < vocab_size and 0 <= v < vocab_size):
            return False
    for perm in itertools.permutations(range(expected)):
        walk = [edges[perm[0]][0]]
        ok = True
        for k in perm:
            u, v = edges[k]
            if u != walk[-1]:
                ok = False
                break
            walk.append(v)
        if not ok:
            continue
        if kind == "circle":
            if walk[-1] != walk[0]:
                continue
            verts = walk[:-1]
        else:
            verts = walk
        if len(verts) == length and len(set(verts)) == length:
            return True
    return False


def brute_force_triangle_count(graph) -> int:
    """O(V^3) triple loop over all vertex combinations."""
    count = 0
    for a, b, c in itertools.combinations(range(graph.vertex_count), 3):
        if graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c):
            count += 1
    return count


def enumerate_coherent_sibling_bodies(graph, order: str):
    """Every coherent ordered triplet body over the whole vertex range."""
    from creativity_bench import coh_sibling

    bodies = []
    ids = [str(v) for v in range(graph.vertex_count)]
    for a, b, c in itertools.product(ids, repeat=3):
        body = (a, b, c)
        if coh_sibling(graph, body, order):
            bodies.append(body)
    return bodies


def exhaustive_oracle_expectation(support: int, covered: int, t_size: int):
    """Exact E[creativity], E[diversity] by enumerating all support^t outcomes.

    Covered keys are 0..covered-1, matching the library's relabeling.
    """
    total_cr = Fraction(0)
    total_dv = Fraction(0)
    outcomes = 0
    for draw in itertools.product(range(support), repeat=t_size):
        distinct = set(draw)
        novel = sum(1 for k in distinct if k >= covered)
        total_cr += Fraction(novel, t_size)
        total_dv += Fraction(len(distinct), t_size)
        outcomes += 1
    return total_cr / outcomes, total_dv / outcomes
