"""Distance-hereditary graphs: pruning sequences, rank-1 decomposition trees
and the table dynamic program for the independence-domination number.

Recognition eliminates pendant vertices and twins one at a time; the reverse
of that order rebuilds the graph and also drives the construction of the
decomposition tree (T, f): a rooted binary tree whose leaves are the
vertices. For a tree edge e, ``W_e`` is the vertex set below e and the
twinset ``Q_e`` holds the members of ``W_e`` with neighbors outside. Every
cut is rank one, so all of ``Q_e`` shares one outside neighborhood and the
interface of a partial solution (A, D) on ``W_e`` collapses to four bits:

* ``i``: A meets the twinset;
* ``u``: dominating A's twinset part is deferred to the outside;
* ``d``: D meets the twinset (so it covers the entire outside attachment);
* ``x``: D's twinset part already dominates some of A off the twinset.

The value DP keeps, per A-configuration class, the minimum |D| for each
(u, d) demand; a boolean table over counts (|A|, |D|) cannot recover the
max-over-A of min-over-D. The feasibility tables of :func:`edge_tables`
keep exactly those boolean entries, flags included, and exist to be checked
verbatim against exhaustive enumeration on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, FormatError, bits
from .oracle import DominationCertificate, INF
from .cograph import ClassMismatchError

PENDANT = "pendant"
TRUE_TWIN = "ttwin"
FALSE_TWIN = "ftwin"


@dataclass(frozen=True)
class PruneOp:
    kind: str
    v: int
    u: int


@dataclass(frozen=True)
class PruningSequence:
    """Eliminations ending at a single vertex; replaying backwards rebuilds g."""

    ops: tuple[PruneOp, ...]
    n: int

    @property
    def final_vertex(self) -> int:
        eliminated = {op.v for op in self.ops}
        rest = [v for v in range(self.n) if v not in eliminated]
        if len(rest) != 1:
            raise GraphError("pruning sequence does not end at a single vertex")
        return rest[0]


@dataclass(frozen=True)
class DHFailure:
    """No pendant vertex or twin pair exists among the remaining vertices."""

    stuck_vertex: int
    alive: int


def recognize_dh(g: Graph):
    """PruningSequence if g is distance-hereditary, else a DHFailure."""
    if g.n == 0:
        raise GraphError("empty graph")
    alive = g.full_mask
    ops = []
    while alive & (alive - 1):
        op = _find_elimination(g, alive)
        if op is None:
            return DHFailure(next(bits(alive)), alive)
        ops.append(op)
        alive &= ~(1 << op.v)
    return PruningSequence(tuple(ops), g.n)


def _find_elimination(g, alive):
    for v in bits(alive):
        row = g.row[v] & alive
        if row.bit_count() == 1:
            return PruneOp(PENDANT, v, row.bit_length() - 1)
    closed_seen = {}
    open_seen = {}
    for v in bits(alive):
        row = g.row[v] & alive
        closed = row | (1 << v)
        if closed in closed_seen:
            return PruneOp(TRUE_TWIN, v, closed_seen[closed])
        if row in open_seen:
            return PruneOp(FALSE_TWIN, v, open_seen[row])
        closed_seen[closed] = v
        open_seen[row] = v
    return None


def replay_sequence(seq: PruningSequence) -> Graph:
    """Rebuild the graph by applying the eliminations backwards."""
    n = seq.n
    if n == 0:
        return Graph(0)
    if len(seq.ops) != n - 1:
        raise GraphError(f"expected {n - 1} operations for n={n}")
    final = seq.final_vertex
    adj = [set() for _ in range(n)]
    present = {final}
    for op in reversed(seq.ops):
        if op.u not in present or op.v in present or not (0 <= op.v < n):
            raise GraphError(f"inconsistent operation {op}")
        if op.kind == PENDANT:
            nbrs = {op.u}
        elif op.kind == TRUE_TWIN:
            nbrs = adj[op.u] | {op.u}
        elif op.kind == FALSE_TWIN:
            nbrs = set(adj[op.u])
        else:
            raise GraphError(f"unknown operation kind {op.kind!r}")
        for w in nbrs:
            adj[w].add(op.v)
        adj[op.v] = nbrs
        present.add(op.v)
    return Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def serialize_sequence(seq: PruningSequence) -> str:
    return "".join(f"{op.kind} {op.v} {op.u}\n" for op in seq.ops)


def parse_sequence(text: str) -> PruningSequence:
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in (PENDANT, TRUE_TWIN, FALSE_TWIN):
            raise FormatError("expected 'pendant|ttwin|ftwin v u'", lineno)
        try:
            ops.append(PruneOp(parts[0], int(parts[1]), int(parts[2])))
        except ValueError:
            raise FormatError("vertex ids must be integers", lineno)
    n = len(ops) + 1
    ids = {op.v for op in ops} | ({ops[-1].u} if ops else {0})
    if ids != set(range(n)):
        raise FormatError("operations do not cover vertex ids 0..n-1")
    return PruningSequence(tuple(ops), n)


# --- decomposition tree ------------------------------------------------------

UNION = "union"
JOIN = "join"

TAG_LEFT = "left"
TAG_RIGHT = "right"
TAG_BOTH = "both"
TAG_EMPTY = "empty"


class DHNode:
    __slots__ = ("left", "right", "parent", "vertex", "w", "q", "label", "tag")

    def __init__(self, vertex=None):
        self.left = None
        self.right = None
        self.parent = None
        self.vertex = vertex
        self.w = 0
        self.q = 0
        self.label = None
        self.tag = None

    @property
    def is_leaf(self):
        return self.vertex is not None


@dataclass(frozen=True)
class DHDecomposition:
    root: DHNode
    n: int

    def postorder(self):
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            if not node.is_leaf:
                stack.append(node.left)
                stack.append(node.right)
        order.reverse()
        return order


def build_dh_decomposition(g: Graph, seq: PruningSequence) -> DHDecomposition:
    """Decomposition tree from a pruning sequence, fully checked against g.

    Every operation is validated at its elimination step, and afterwards the
    twinsets, node labels and twinset-composition tags are derived from the
    graph itself; any mismatch with the rank-1 shape is rejected.
    """
    if seq.n != g.n or g.n == 0:
        raise GraphError(f"sequence for n={seq.n} does not match graph n={g.n}")
    alive = g.full_mask
    for idx, op in enumerate(seq.ops):
        v, u = op.v, op.u
        if v == u or not (alive >> v & 1) or not (alive >> u & 1):
            raise GraphError(f"operation {idx} ({op.kind} {v} {u}): vertex not available")
        row_v = g.row[v] & alive
        if op.kind == PENDANT:
            ok = row_v == 1 << u
        elif op.kind == TRUE_TWIN:
            ok = (g.closed[v] & alive) == (g.closed[u] & alive)
        elif op.kind == FALSE_TWIN:
            ok = row_v == g.row[u] & alive
        else:
            raise GraphError(f"operation {idx}: unknown kind {op.kind!r}")
        if not ok:
            raise GraphError(f"operation {idx} ({op.kind} {v} {u}) is invalid at its step")
        alive &= ~(1 << v)

    leaves = [DHNode(vertex=v) for v in range(g.n)]
    root = leaves[seq.final_vertex if seq.ops else 0]
    for op in reversed(seq.ops):
        u_leaf = leaves[op.u]
        p = DHNode()
        p.left = u_leaf
        p.right = leaves[op.v]
        p.parent = u_leaf.parent
        if p.parent is None:
            root = p
        elif p.parent.left is u_leaf:
            p.parent.left = p
        else:
            p.parent.right = p
        u_leaf.parent = p
        leaves[op.v].parent = p

    decomp = DHDecomposition(root, g.n)
    _derive_structure(g, decomp)
    return decomp


def _derive_structure(g, decomp):
    full = g.full_mask
    for node in decomp.postorder():
        if node.is_leaf:
            node.w = 1 << node.vertex
            node.q = node.w if g.row[node.vertex] else 0
            continue
        node.w = node.left.w | node.right.w
        outside = full & ~node.w
        q = 0
        for v in bits(node.left.q | node.right.q):
            if g.row[v] & outside:
                q |= 1 << v
        node.q = q
        _derive_label(g, node)
        _derive_tag(node)


def _derive_label(g, node):
    m1, m2 = node.left.w, node.right.w
    q1, q2 = node.left.q, node.right.q
    if m2.bit_count() < m1.bit_count():
        m1, m2, q1, q2 = m2, m1, q2, q1
    crossing = any(g.row[v] & m2 for v in bits(m1))
    node.label = JOIN if crossing else UNION
    for v in bits(m1):
        expect = q2 if (crossing and q1 >> v & 1) else 0
        if g.row[v] & m2 != expect:
            raise GraphError(
                f"cut at vertex {v} is not rank one; sequence inconsistent with graph"
            )


def _derive_tag(node):
    q, q1, q2 = node.q, node.left.q, node.right.q
    if q == 0:
        node.tag = TAG_EMPTY
    elif q1 and q2 and q == q1 | q2:
        node.tag = TAG_BOTH
    elif q == q1:
        node.tag = TAG_LEFT
    elif q == q2:
        node.tag = TAG_RIGHT
    elif q == q1 | q2:
        node.tag = TAG_BOTH
    else:
        raise GraphError("twinset is not composed of child twinsets")


# --- value DP ----------------------------------------------------------------
#
# An item abstracts one class of independent sets A inside W_e:
#   i     whether A meets Q_e,
#   a     |A| for one representative (annotation only),
#   c     cost vector: c[u*2+d] = min |D| subject to
#         - D dominates all of A off the twinset, and all of A if u=0,
#         - D meets the twinset if d=1.
# Items whose cost vector is pointwise dominated within the same i are
# dropped; the root maximizes c[u=0,d=0] over the surviving items.


class _Item:
    __slots__ = ("i", "a", "c", "prov")

    def __init__(self, i, a, c, prov):
        self.i = i
        self.a = a
        self.c = c
        self.prov = prov


def _leaf_items(g, node):
    v = node.vertex
    if node.q:
        items = [
            _Item(False, 0, (0, 1, 0, 1), ("leaf", v, False)),
            _Item(True, 1, (1, 1, 0, 1), ("leaf", v, False)),
        ]
    else:
        items = [
            _Item(False, 0, (0, INF, 0, INF), ("leaf", v, True)),
            _Item(False, 1, (1, INF, 1, INF), ("leaf", v, True)),
        ]
    return _prune_items(items)


_ASSIGNMENTS = [(u1, d1, u2, d2) for u1 in (0, 1) for d1 in (0, 1) for u2 in (0, 1) for d2 in (0, 1)]


def _combine_items(node, items1, items2):
    join = node.label == JOIN
    l_in = node.tag in (TAG_LEFT, TAG_BOTH)
    r_in = node.tag in (TAG_RIGHT, TAG_BOTH)
    out = []
    for it1 in items1:
        for it2 in items2:
            if join and it1.i and it2.i:
                continue
            i = (it1.i and l_in) or (it2.i and r_in)
            c = [INF] * 4
            assign = [None] * 4
            for u in (0, 1):
                for d in (0, 1):
                    slot = u * 2 + d
                    for u1, d1, u2, d2 in _ASSIGNMENTS:
                        if u1 and not ((join and d2) or (l_in and u)):
                            continue
                        if u2 and not ((join and d1) or (r_in and u)):
                            continue
                        if d and not ((d1 and l_in) or (d2 and r_in)):
                            continue
                        cost = it1.c[u1 * 2 + d1] + it2.c[u2 * 2 + d2]
                        if cost < c[slot]:
                            c[slot] = cost
                            assign[slot] = (u1, d1, u2, d2)
            out.append(_Item(i, it1.a + it2.a, tuple(c), ("comb", it1, it2, tuple(assign))))
    return _prune_items(out)


def _prune_items(items):
    kept = []
    seen = set()
    for it in items:
        key = (it.i, it.c)
        if key in seen:
            continue
        seen.add(key)
        kept.append(it)
    survivors = []
    for it in kept:
        dominated = False
        for other in kept:
            if other is it or other.i != it.i:
                continue
            if all(oc >= c for oc, c in zip(other.c, it.c)) and other.c != it.c:
                dominated = True
                break
        if not dominated:
            survivors.append(it)
    return survivors


def _value_items(g, decomp):
    table = {}
    for node in decomp.postorder():
        if node.is_leaf:
            table[id(node)] = _leaf_items(g, node)
        else:
            items1 = table.pop(id(node.left))
            items2 = table.pop(id(node.right))
            table[id(node)] = _combine_items(node, items1, items2)
    return table[id(decomp.root)]


def edge_value_items(g: Graph, decomp: DHDecomposition) -> dict:
    """Per-edge value items (twinset-hit flag, |A|, cost vector) for tests:
    the Pareto-maximal cost vectors over each edge's A-configurations."""
    table = {}
    out = {}
    for node in decomp.postorder():
        if node.is_leaf:
            table[id(node)] = _leaf_items(g, node)
        else:
            table[id(node)] = _combine_items(
                node, table[id(node.left)], table[id(node.right)]
            )
        out[id(node)] = [(it.i, it.a, it.c) for it in table[id(node)]]
    return out


def _walk_certificate(root_item):
    a_mask = 0
    d_mask = 0
    stack = [(root_item, 0, 0)]
    while stack:
        item, u, d = stack.pop()
        kind = item.prov[0]
        if kind == "leaf":
            _, v, isolated = item.prov
            if item.a:
                a_mask |= 1 << v
            if d == 1 or (item.a and (u == 0 or isolated)):
                d_mask |= 1 << v
        else:
            _, it1, it2, assign = item.prov
            u1, d1, u2, d2 = assign[u * 2 + d]
            stack.append((it1, u1, d1))
            stack.append((it2, u2, d2))
    return a_mask, d_mask


def gamma_i_dh(g: Graph, decomp: DHDecomposition | None = None):
    """Independence-domination number of a distance-hereditary graph."""
    if g.n == 0:
        return 0, DominationCertificate(0, 0, 0)
    if decomp is None:
        seq = recognize_dh(g)
        if isinstance(seq, DHFailure):
            raise ClassMismatchError(
                f"input is not distance-hereditary (stuck at vertex {seq.stuck_vertex})",
                witness=seq,
            )
        decomp = build_dh_decomposition(g, seq)
    if decomp.root.is_leaf:
        v = decomp.root.vertex
        return 1, DominationCertificate(1 << v, 1 << v, 1)
    items = _value_items(g, decomp)
    best = max(items, key=lambda it: it.c[0])
    value = best.c[0]
    a_mask, d_mask = _walk_certificate(best)
    return value, DominationCertificate(a_mask, d_mask, value)


# --- feasibility tables ------------------------------------------------------
#
# EdgeTable keeps, per flag tuple (i, u, d, x), the set of feasible (|A|, |D|)
# pairs packed into one int with stride n+1. Flags are exact here: u means
# some of A's twinset part is actually undominated, d that D meets the
# twinset, x that D's twinset part dominates some vertex of A off the
# twinset; i (A meets the twinset) is projected away in the public profile
# view but is load-bearing for the join rule.


@dataclass
class EdgeTable:
    n: int
    flags: dict

    def pairs(self, i, u, d, x):
        stride = self.n + 1
        mask = self.flags.get((i, u, d, x), 0)
        return sorted((idx // stride, idx % stride) for idx in bits(mask))

    def profile_pairs(self, u, d, x):
        out = set()
        for i in (0, 1):
            out.update(self.pairs(i, u, d, x))
        return sorted(out)

    def feasible(self, a, g, profile):
        u, d, x = profile
        return (a, g) in self.profile_pairs(u, d, x)


def edge_tables(g: Graph, decomp: DHDecomposition) -> dict:
    """Bottom-up feasibility tables for every tree edge (plus the root cut)."""
    stride = g.n + 1
    tables = {}
    for node in decomp.postorder():
        if node.is_leaf:
            flags = {}
            if node.q:
                entries = [
                    ((0, 0, 0, 0), 0, 0),
                    ((0, 0, 1, 0), 0, 1),
                    ((1, 1, 0, 0), 1, 0),
                    ((1, 0, 1, 0), 1, 1),
                ]
            else:
                entries = [
                    ((0, 0, 0, 0), 0, 0),
                    ((0, 0, 0, 0), 0, 1),
                    ((0, 0, 0, 0), 1, 1),
                ]
            for key, a, dd in entries:
                flags[key] = flags.get(key, 0) | 1 << (a * stride + dd)
            tables[id(node)] = EdgeTable(g.n, flags)
        else:
            tables[id(node)] = _combine_tables(
                g.n, node, tables[id(node.left)], tables[id(node.right)]
            )
    return {id(node): tables[id(node)] for node in decomp.postorder()}


def _combine_tables(n, node, t1, t2):
    join = node.label == JOIN
    l_in = node.tag in (TAG_LEFT, TAG_BOTH)
    r_in = node.tag in (TAG_RIGHT, TAG_BOTH)
    out = {}
    for (i1, u1, d1, x1), m1 in t1.flags.items():
        for (i2, u2, d2, x2), m2 in t2.flags.items():
            if join and i1 and i2:
                continue
            res1 = u1 and not (join and d2)
            if res1 and not l_in:
                continue
            res2 = u2 and not (join and d1)
            if res2 and not r_in:
                continue
            key = (
                int((i1 and l_in) or (i2 and r_in)),
                int(res1 or res2),
                int((d1 and l_in) or (d2 and r_in)),
                int(
                    (x1 and l_in)
                    or (x2 and r_in)
                    or (join and d1 and l_in and not r_in and i2)
                    or (join and d2 and r_in and not l_in and i1)
                ),
            )
            acc = 0
            mm = m1
            while mm:
                low = mm & -mm
                acc |= m2 << (low.bit_length() - 1)
                mm ^= low
            out[key] = out.get(key, 0) | acc
    return EdgeTable(n, out)
