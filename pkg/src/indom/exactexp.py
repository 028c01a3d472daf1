"""Exact exponential computation of the independence-domination number.

Every maximal independent set M is enumerated; small sets are solved by a
branch-and-bound over outside vertices with three or more M-neighbors,
finishing with a maximum-matching base case; large sets fall back to subset
enumeration over the outside vertices. The split threshold is DEFAULT_BETA
times n.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError, bits, is_independent, mask_from
from .oracle import DominationCertificate, enumerate_maximal_independent_sets

DEFAULT_BETA = 0.6827
DEFAULT_CEILING = 40


@dataclass
class BranchStats:
    """Search effort counters, reported with every run."""

    nodes: int = 0
    max_depth: int = 0
    matching_calls: int = 0
    subset_calls: int = 0
    sets_enumerated: int = 0

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "max_depth": self.max_depth,
            "matching_calls": self.matching_calls,
            "subset_calls": self.subset_calls,
            "sets_enumerated": self.sets_enumerated,
        }


def maximum_matching_general(g: Graph) -> list[tuple[int, int]]:
    """Maximum matching in an arbitrary graph by blossom-contracting
    augmenting-path search, O(V^3)."""
    n = g.n
    match = [-1] * n
    for u in range(n):
        if match[u] == -1:
            for v in g.adj[u]:
                if match[v] == -1:
                    match[u] = v
                    match[v] = u
                    break
    parent = [-1] * n
    base = list(range(n))

    def lowest_common_base(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v, b, child, in_blossom):
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def augment_from(root):
        used = [False] * n
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in g.adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lowest_common_base(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, in_blossom)
                    mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        while to != -1:
                            pv = parent[to]
                            next_to = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = next_to
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            augment_from(v)
    return sorted({(min(u, match[u]), max(u, match[u])) for u in range(n) if match[u] != -1})


def brute_force_matching(g: Graph) -> int:
    """Maximum matching size by exhaustive search; test oracle for n <= ~12."""
    edge_list = list(g.edges())

    def best(idx, used):
        if idx == len(edge_list):
            return 0
        u, v = edge_list[idx]
        result = best(idx + 1, used)
        if not (used >> u & 1) and not (used >> v & 1):
            result = max(result, 1 + best(idx + 1, used | 1 << u | 1 << v))
        return result

    return best(0, 0)


def gamma_of_independent_set_fast(g: Graph, m, stats: BranchStats | None = None):
    """Minimum size of a set dominating the independent set m, with witness.

    Only edges between m and the rest matter. Any outside vertex with three
    or more m-neighbors is branched on (taken into the dominating set, or
    discarded); once every remaining outside vertex covers at most two
    m-vertices, pair up coverage via maximum matching: the answer there is
    the matching size plus one dominator per unmatched m-vertex.
    """
    m = mask_from(m)
    if not is_independent(g, m):
        raise GraphError("set is not independent")
    if stats is None:
        stats = BranchStats()
    if m == 0:
        return 0, 0, stats
    outside = g.full_mask & ~m

    committed = 0
    remaining = m
    for v in bits(m):
        if g.row[v] & outside == 0:
            # no outside neighbor: only v itself can dominate v
            committed |= 1 << v
            remaining &= ~(1 << v)
    base_count = committed.bit_count()

    best = [None, None]  # value, witness

    def leaf_value(rem, avail, count, chosen):
        stats.matching_calls += 1
        members = list(bits(rem))
        index = {v: i for i, v in enumerate(members)}
        pair_witness = {}
        h_edges = []
        for x in bits(avail):
            covered = [index[v] for v in bits(g.row[x] & rem)]
            for a, b in itertools.combinations(sorted(covered), 2):
                if (a, b) not in pair_witness:
                    pair_witness[(a, b)] = x
                    h_edges.append((a, b))
        h = Graph(len(members), h_edges)
        matching = maximum_matching_general(h)
        value = count + len(members) - len(matching)
        if best[0] is not None and value >= best[0]:
            return
        witness = chosen
        matched = set()
        for a, b in matching:
            witness |= 1 << pair_witness[(min(a, b), max(a, b))]
            matched.add(a)
            matched.add(b)
        for i, v in enumerate(members):
            if i not in matched:
                nbr = g.row[v] & avail
                witness |= (nbr & -nbr) if nbr else (1 << v)
        best[0] = value
        best[1] = witness

    def descend(rem, avail, count, chosen, depth):
        stats.nodes += 1
        stats.max_depth = max(stats.max_depth, depth)
        if rem == 0:
            if best[0] is None or count < best[0]:
                best[0] = count
                best[1] = chosen
            return
        branch_x = -1
        max_deg = 0
        for x in bits(avail):
            deg = (g.row[x] & rem).bit_count()
            if deg > max_deg:
                max_deg = deg
                branch_x = x
        # admissible bound: every further dominator covers <= max_deg targets
        bound = -(-rem.bit_count() // max(max_deg, 1))
        if best[0] is not None and count + bound >= best[0]:
            return
        if max_deg <= 2:
            leaf_value(rem, avail, count, chosen)
            return
        xbit = 1 << branch_x
        descend(rem & ~g.row[branch_x], avail & ~xbit, count + 1, chosen | xbit, depth + 1)
        descend(rem, avail & ~xbit, count, chosen, depth + 1)

    descend(remaining, outside, base_count, committed, 0)
    return best[0], best[1], stats


def _gamma_by_subsets(g, m, stats):
    """Smallest dominating set of m by subset enumeration over the outside
    vertices plus the members of m nobody else can dominate."""
    stats.subset_calls += 1
    mandatory = 0
    for v in bits(m):
        if g.row[v] == 0:
            mandatory |= 1 << v
    others = [v for v in bits(g.full_mask & ~m)]
    base = mandatory.bit_count()
    cover_base = 0
    for v in bits(mandatory):
        cover_base |= g.closed[v]
    for extra in range(len(others) + 1):
        for combo in itertools.combinations(others, extra):
            cover = cover_base
            for v in combo:
                cover |= g.closed[v]
            if m & ~cover == 0:
                return base + extra, mandatory | mask_from(combo)
    raise GraphError("unreachable: V dominates m")


def gamma_i_exact(
    g: Graph,
    beta: float = DEFAULT_BETA,
    ceiling: int = DEFAULT_CEILING,
):
    """Exact independence-domination number for arbitrary graphs.

    Maximal independent sets of size at most beta*n go through the
    branching/matching route, larger ones through subset enumeration.
    """
    if g.n > ceiling:
        raise GraphError(f"n={g.n} above the exact-solver ceiling {ceiling}")
    stats = BranchStats()
    best_value = 0
    best_cert = DominationCertificate(0, 0, 0)
    threshold = beta * g.n
    for m in enumerate_maximal_independent_sets(g):
        stats.sets_enumerated += 1
        if m.bit_count() <= threshold:
            value, witness, _ = gamma_of_independent_set_fast(g, m, stats)
        else:
            value, witness = _gamma_by_subsets(g, m, stats)
        if value > best_value:
            best_value = value
            best_cert = DominationCertificate(m, witness, value)
    return best_value, best_cert, stats
