#!/usr/bin/env python3
"""Walkthrough of the construction tasks: resolution and key erasure.

Shows how a shuffled adjacency list resolves (or fails to resolve) into a
directed cycle or path, and how canonical keys keep only the shuffle
pattern, not the vertex identities.
"""

from creativity_bench import (
    canon_construction,
    coh_construction,
    derive_rng,
    parse_edge_tokens,
    render_edges,
    resolve,
    sample_construction,
)

print("=== Circle construction ===")
rng = derive_rng(seed=5, stream=1)
sample = sample_construction("circle", length=5, vocab_size=9, rng=rng)
print(f"sampled body: {' '.join(sample.body)}")
edges = parse_edge_tokens(sample.body)
res = resolve("circle", edges, 5, 9)
print(f"resolving permutation over string positions: {res.order}")
chained = [edges[i] for i in res.order]
print("chained edges:", " -> ".join(f"({u},{v})" for u, v in chained))
print(f"canonical key: {canon_construction('circle', edges, res).data.decode()}")

print()
print("the same shuffle over a different vertex set collapses to one key:")
for verts in ([0, 1, 2, 3], [10, 11, 12, 13]):
    base = [(verts[i], verts[(i + 1) % 4]) for i in range(4)]
    shuffled = [base[i] for i in (2, 0, 3, 1)]
    r = resolve("circle", shuffled, 4, 15)
    key = canon_construction("circle", shuffled, r)
    print(f"  vertices {verts}: body {' '.join(render_edges(shuffled))}"
          f"  key {key.data.decode()}")

print()
print("=== Line construction ===")
rng = derive_rng(seed=6, stream=1)
sample = sample_construction("line", length=4, vocab_size=7, rng=rng)
print(f"sampled body: {' '.join(sample.body)}")
print(f"coherent: {coh_construction('line', 4, 7, sample.body)}")

print()
print("near misses are incoherent:")
cases = [
    ("reused vertex", [(0, 1), (1, 2), (2, 1)]),
    ("broken into two pieces", [(0, 1), (3, 4), (4, 3)]),
    ("vertex outside the vocabulary", [(0, 1), (1, 2), (2, 99)]),
]
for label, bad in cases:
    body = render_edges(bad)
    print(f"  {label}: {' '.join(body)} -> {coh_construction('line', 4, 7, body)}")
