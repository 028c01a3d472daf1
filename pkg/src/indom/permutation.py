"""Permutation-diagram representation and the left-to-right DP for gamma-i.

A diagram assigns each vertex a top-line and a bottom-line position; two
vertices are adjacent exactly when their segments cross. An independent set
is a family of parallel segments, linearly ordered left to right, and a
minimum dominating set of it is a minimum cover of that order by closed
neighborhoods, each of which meets the set in a contiguous run.

Two consequences drive this module:

* gamma(M) equals the largest subset of M whose consecutive members have
  disjoint closed neighborhoods (cover/packing duality for runs), which
  yields the quadratic chain DP in :func:`gamma_i_permutation`;
* every minimum dominating set of M contains exactly one vertex covering
  the last member x, so ``k in gamma_x(z)`` holds iff some independent M
  ending in x has gamma(M) = k and gamma(M - N[z]) = k - 1. The table DP in
  :func:`gamma_sets` enumerates exactly these configurations.

The looser transfer rules (``rules="transfer"``) are kept behind the same
interface for comparison, but they are unreliable in both directions: they
can miss true table entries (see the five-vertex example in the tests) and
can claim unachievable values, overshooting the maximum. The exact rules
are the default and the only ones used for reported values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError, FormatError, bits, mask_to_list
from .oracle import DominationCertificate


@dataclass(frozen=True)
class PermutationDiagram:
    """Segment i runs from top-line position top[i] to bottom position bot[i]."""

    n: int
    top: tuple[int, ...]
    bot: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.top) != list(range(self.n)) or sorted(self.bot) != list(range(self.n)):
            raise GraphError("diagram positions must each be a permutation of 0..n-1")

    def crosses(self, i, j):
        return (self.top[i] - self.top[j]) * (self.bot[i] - self.bot[j]) < 0

    def left_of(self, i, j):
        """Segment i entirely left of (parallel to) segment j."""
        return self.top[i] < self.top[j] and self.bot[i] < self.bot[j]

    def rank(self, v):
        """Rightmost endpoint of v, for the rightmost-neighbor orders."""
        return (max(self.top[v], self.bot[v]), self.top[v], v)

    def mirror(self):
        n = self.n
        return PermutationDiagram(
            n,
            tuple(n - 1 - t for t in self.top),
            tuple(n - 1 - b for b in self.bot),
        )


def diagram_to_graph(d: PermutationDiagram) -> Graph:
    edges = [
        (i, j)
        for i in range(d.n)
        for j in range(i + 1, d.n)
        if d.crosses(i, j)
    ]
    return Graph(d.n, edges)


def rightmost_neighbor_order(d: PermutationDiagram, g: Graph, x: int) -> list[int]:
    """Closed neighbors of x, rightmost endpoint first. x itself is a candidate."""
    return sorted(bits(g.closed[x]), key=d.rank, reverse=True)


def rightmost_neighbor(d, g, x, excluding_neighbors_of=None):
    """Rightmost closed neighbor of x, optionally restricted to non-neighbors of y."""
    cands = g.closed[x]
    if excluding_neighbors_of is not None:
        cands &= ~g.row[excluding_neighbors_of]
    if cands == 0:
        return None
    return max(bits(cands), key=d.rank)


def gamma_i_permutation(d: PermutationDiagram) -> tuple[int, DominationCertificate]:
    """Independence-domination number of the diagram's graph, with certificate.

    Longest chain of segments, increasing in both lines, whose consecutive
    members have disjoint closed neighborhoods. Such a chain P needs |P|
    dominators (no vertex covers two of its members) and P covers itself.
    """
    g = diagram_to_graph(d)
    n = d.n
    if n == 0:
        return 0, DominationCertificate(0, 0, 0)
    order = sorted(range(n), key=lambda v: d.top[v])
    length = {}
    back = {}
    for v in order:
        best, prev = 1, None
        for u in order:
            if d.top[u] >= d.top[v]:
                break
            if d.left_of(u, v) and g.closed[u] & g.closed[v] == 0:
                if length[u] + 1 > best:
                    best, prev = length[u] + 1, u
        length[v] = best
        back[v] = prev
    end = max(order, key=lambda v: length[v])
    chain = 0
    v = end
    while v is not None:
        chain |= 1 << v
        v = back[v]
    value = length[end]
    return value, DominationCertificate(chain, chain, value)


@dataclass
class GammaSets:
    """Achievable-value sets gamma_x(z), stored as bit masks over k.

    ``k in table[(x, z)]`` means some independent set M ending in x has
    gamma(M) = k together with a minimum dominating set whose unique
    x-covering vertex is z.
    """

    n: int
    rules: str
    table: dict = field(default_factory=dict)

    def kset(self, x, z) -> int:
        return self.table.get((x, z), 0)

    def values(self, x, z) -> list[int]:
        return mask_to_list(self.kset(x, z))

    def max_k(self) -> int:
        best = 0
        for kset in self.table.values():
            if kset:
                best = max(best, kset.bit_length() - 1)
        return best


def gamma_sets(d: PermutationDiagram, rules: str = "exact") -> GammaSets:
    if rules == "exact":
        return _gamma_sets_exact(d)
    if rules == "transfer":
        return _gamma_sets_transfer(d)
    raise GraphError(f"unknown rule set {rules!r}")


def _gamma_sets_exact(d):
    """Exact table: per candidate dominator z, build chains of packing points
    and fillers left to right, requiring members inside N[z] to form a suffix
    holding exactly one packing point."""
    g = diagram_to_graph(d)
    n = d.n
    out = GammaSets(n, "exact")
    order = sorted(range(n), key=lambda v: d.top[v])
    for z in range(n):
        nz = g.closed[z]
        # per last member: (packing point of the open block, inside-N[z]
        # suffix entered, packing points inside the suffix) -> bitmask of k
        at = {v: {} for v in range(n)}
        for m in range(n):
            near = bool(nz >> m & 1)
            at[m][(m, near, 1 if near else 0)] = 2
        for last in order:
            for (p, entered, npts), kset in at[last].items():
                for f in range(n):
                    if not d.left_of(last, f):
                        continue
                    f_near = bool(nz >> f & 1)
                    if entered and not f_near:
                        continue
                    bucket = at[f]
                    if g.closed[p] & g.closed[f]:
                        key = (p, entered or f_near, npts)
                        bucket[key] = bucket.get(key, 0) | kset
                    else:
                        new_npts = npts + (1 if f_near else 0)
                        if new_npts <= 1:
                            key = (f, entered or f_near, new_npts)
                            bucket[key] = bucket.get(key, 0) | (kset << 1)
        for last in range(n):
            if not (nz >> last & 1):
                continue
            acc = 0
            for (_, _, npts), kset in at[last].items():
                if npts == 1:
                    acc |= kset
            if acc:
                key = (last, z)
                out.table[key] = out.table.get(key, 0) | acc
    return out


def _gamma_sets_transfer(d):
    """Literal left-to-right transfer rules.

    Base case: the singleton set {x} contributes k=1 at the rightmost closed
    neighbor of x. For each non-neighbor y left of x: values move unchanged
    along shared neighbors of x and y, and move shifted by one onto the
    rightmost neighbor of x outside N(y), fed by any z' in N[y] - N(x).
    """
    g = diagram_to_graph(d)
    n = d.n
    out = GammaSets(n, "transfer")
    table = out.table
    order = sorted(range(n), key=lambda v: d.top[v])
    for x in order:
        z0 = rightmost_neighbor(d, g, x)
        table[(x, z0)] = table.get((x, z0), 0) | 2
        for y in order:
            if d.top[y] >= d.top[x] or not d.left_of(y, x):
                continue
            for z in bits(g.closed[x] & g.row[y]):
                moved = table.get((y, z), 0)
                if moved:
                    table[(x, z)] = table.get((x, z), 0) | moved
            zstar = rightmost_neighbor(d, g, x, excluding_neighbors_of=y)
            if zstar is None:
                continue
            pool = 0
            for zp in bits(g.closed[y] & ~g.row[x]):
                pool |= table.get((y, zp), 0)
            if pool:
                table[(x, zstar)] = table.get((x, zstar), 0) | (pool << 1)
    return out


def gamma_of_ordered_set(d: PermutationDiagram, g: Graph, m_mask: int) -> int:
    """gamma(M) for an independent M via the greedy run cover (test oracle)."""
    members = sorted(bits(m_mask), key=lambda v: d.top[v])
    if not members:
        return 0
    count = 0
    i = 0
    while i < len(members):
        count += 1
        best_reach = i
        for w in bits(g.closed[members[i]]):
            reach = i
            while reach + 1 < len(members) and g.closed[w] >> members[reach + 1] & 1:
                reach += 1
            if g.closed[w] >> members[i] & 1 and reach > best_reach:
                best_reach = reach
        i = best_reach + 1
    return count


# --- diagram text format -----------------------------------------------------
#
# line 1: n; line 2: top positions per vertex; line 3: bottom positions.


def serialize_diagram(d: PermutationDiagram) -> str:
    return "{}\n{}\n{}\n".format(
        d.n,
        " ".join(map(str, d.top)),
        " ".join(map(str, d.bot)),
    )


def parse_diagram(text: str) -> PermutationDiagram:
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.startswith("#")]
    if len(lines) != 3:
        raise FormatError("expected 3 lines: n, top positions, bottom positions")
    try:
        n = int(lines[0])
        top = tuple(int(t) for t in lines[1].split())
        bot = tuple(int(b) for b in lines[2].split())
    except ValueError:
        raise FormatError("diagram lines must be integers")
    if len(top) != n or len(bot) != n:
        raise FormatError(f"expected {n} positions per line")
    return PermutationDiagram(n, top, bot)


def cotree_to_diagram(t) -> PermutationDiagram:
    """Standard diagram of a cograph: unions concatenate both lines, joins
    concatenate the top line and reverse the block order on the bottom line."""
    from .cograph import LEAF, UNION

    def build(node):
        if node.label == LEAF:
            return [node.vertex], [node.vertex]
        parts = [build(c) for c in node.children]
        top = [v for part in parts for v in part[0]]
        if node.label == UNION:
            bot = [v for part in parts for v in part[1]]
        else:
            bot = [v for part in reversed(parts) for v in part[1]]
        return top, bot

    top_seq, bot_seq = build(t.root)
    top = [0] * t.n
    bot = [0] * t.n
    for pos, v in enumerate(top_seq):
        top[v] = pos
    for pos, v in enumerate(bot_seq):
        bot[v] = pos
    return PermutationDiagram(t.n, tuple(top), tuple(bot))
