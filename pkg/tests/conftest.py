"""Shared helpers for the test suite."""

import random

from indom import Graph
from indom.graph import bits


def random_outerplanar(n, seed):
    """Cycle plus random non-crossing chords (partial polygon triangulation)."""
    rng = random.Random(seed)
    edges = {(i, (i + 1) % n) for i in range(n)}

    def chords(lo, hi):
        if hi - lo < 2:
            return
        if rng.random() < 0.7:
            mid = rng.randint(lo + 1, hi - 1)
            if not (lo == 0 and hi == n - 1):
                edges.add((lo, hi))
            chords(lo, mid)
            chords(mid, hi)

    chords(0, n - 1)
    return Graph(n, sorted(edges))


def subsets_of(mask):
    """All subsets of a bit mask, including 0 and the mask itself."""
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & mask


def cover_of(g, dmask):
    cover = 0
    for v in bits(dmask):
        cover |= g.closed[v]
    return cover
