"""Tree decompositions and the bag dynamic program for gamma-i.

A bag vertex can be outside the pair (A, D), in A and still undominated
(gray), in A and dominated (white), in D only, or in both A and D (which
makes it white immediately; self-domination is how isolated members of A
ever get dominated). The DP keeps, per class of independent sets A, a cost
table mapping (D-in-bag pattern, dominated subset of A-in-bag) to the
minimum number of dominators spent so far. Keeping the whole table per
A-class is what lets the root take a maximum over A of a minimum over D;
a flat boolean table over counts cannot, because independent sets of equal
size with different domination costs would be merged.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graph import Graph, GraphError, FormatError, bits, mask_from, mask_to_list
from .oracle import DominationCertificate

DEFAULT_WIDTH_CEILING = 12


class CapacityError(GraphError):
    """Instance exceeds a configured resource ceiling."""


@dataclass
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class TreeDecomposition:
    n: int
    bags: list[int]
    edges: list[tuple[int, int]]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(b.bit_count() for b in self.bags) - 1

    def neighbors(self):
        adj = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def validate_decomposition(g: Graph, td: TreeDecomposition):
    """None when valid, otherwise a Violation naming the failing vertex/edge."""
    union = 0
    for b in td.bags:
        union |= b
    if union != g.full_mask:
        missing = next(bits(g.full_mask & ~union))
        return Violation("vertex-cover", f"vertex {missing} is in no bag")
    for u, v in g.edges():
        need = (1 << u) | (1 << v)
        if not any(b & need == need for b in td.bags):
            return Violation("edge-cover", f"edge ({u}, {v}) has no common bag")
    if len(td.edges) != max(len(td.bags) - 1, 0):
        return Violation("tree", "bag graph is not a tree")
    for a, b in td.edges:
        if not (0 <= a < len(td.bags) and 0 <= b < len(td.bags)):
            return Violation("tree", f"bag edge ({a}, {b}) out of range")
    adj = td.neighbors()
    if td.bags:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                for j in adj[i]:
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        if len(seen) != len(td.bags):
            return Violation("tree", "bag graph is disconnected")
    for v in range(g.n):
        holders = [i for i, b in enumerate(td.bags) if b >> v & 1]
        seen = {holders[0]}
        frontier = [holders[0]]
        while frontier:
            nxt = []
            for i in frontier:
                for j in adj[i]:
                    if j not in seen and td.bags[j] >> v & 1:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        if len(seen) != len(holders):
            return Violation("connectivity", f"occurrences of vertex {v} are disconnected")
    return None


def heuristic_decomposition(g: Graph, order: str = "fill") -> TreeDecomposition:
    """Elimination-based decomposition; min-fill by default, no width claim."""
    n = g.n
    if n == 0:
        return TreeDecomposition(0, [0], [])
    rows = list(g.row)
    alive = g.full_mask
    bags = []
    elim_pos = {}
    elim_order = []
    for step in range(n):
        best_v, best_score = -1, None
        for v in bits(alive):
            nb = rows[v] & alive & ~(1 << v)
            if order == "degree":
                score = nb.bit_count()
            else:
                fill = 0
                for u in bits(nb):
                    fill += (nb & ~rows[u] & ~(1 << u)).bit_count()
                score = fill // 2
            if best_score is None or score < best_score:
                best_v, best_score = v, score
        v = best_v
        nb = rows[v] & alive & ~(1 << v)
        bags.append(nb | (1 << v))
        elim_pos[v] = step
        elim_order.append(v)
        for u in bits(nb):
            rows[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    edges = []
    roots = []
    for step, v in enumerate(elim_order):
        rest = bags[step] & ~(1 << v)
        if rest:
            parent_vertex = min(bits(rest), key=lambda u: elim_pos[u])
            edges.append((step, elim_pos[parent_vertex]))
        else:
            roots.append(step)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(n, bags, edges)


# --- nice form ---------------------------------------------------------------

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass
class NiceNode:
    kind: str
    bag: int
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass
class NiceDecomposition:
    n: int
    nodes: list[NiceNode]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(node.bag.bit_count() for node in self.nodes) - 1


def make_nice(td: TreeDecomposition) -> NiceDecomposition:
    """Nice form: leaf/introduce/forget/join nodes, empty root bag."""
    nodes: list[NiceNode] = []

    def emit(kind, bag, children=(), vertex=None):
        nodes.append(NiceNode(kind, bag, tuple(children), vertex))
        return len(nodes) - 1

    def chain_from_empty(bag):
        nid = emit(LEAF, 0)
        current = 0
        for v in sorted(bits(bag)):
            current |= 1 << v
            nid = emit(INTRODUCE, current, (nid,), v)
        return nid

    def morph(nid, src, dst):
        current = src
        for v in sorted(bits(src & ~dst)):
            current &= ~(1 << v)
            nid = emit(FORGET, current, (nid,), v)
        for v in sorted(bits(dst & ~current)):
            current |= 1 << v
            nid = emit(INTRODUCE, current, (nid,), v)
        return nid

    if not td.bags:
        emit(LEAF, 0)
        return NiceDecomposition(td.n, nodes)

    adj = td.neighbors()

    def build(b, parent):
        children = [c for c in adj[b] if c != parent]
        if not children:
            return chain_from_empty(td.bags[b])
        branches = []
        for c in children:
            sub = build(c, b)
            branches.append(morph(sub, td.bags[c], td.bags[b]))
        nid = branches[0]
        for other in branches[1:]:
            nid = emit(JOIN, td.bags[b], (nid, other))
        return nid

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * len(td.bags) + 100))
    try:
        top = build(0, None)
    finally:
        sys.setrecursionlimit(old_limit)
    morph(top, td.bags[0], 0)
    return NiceDecomposition(td.n, nodes)


def nice_to_decomposition(nd: NiceDecomposition) -> TreeDecomposition:
    bags = [node.bag for node in nd.nodes]
    edges = []
    for i, node in enumerate(nd.nodes):
        for c in node.children:
            edges.append((i, c))
    return TreeDecomposition(nd.n, bags, edges)


# --- bag states (documentation/test helper) ----------------------------------

A_WHITE = "in-A-white"
A_GRAY = "in-A-gray"
A_SELF = "in-A-and-D"
D_ONLY = "in-D"
OUTSIDE = "outside"


def bag_status(alpha: int, dmask: int, wmask: int, v: int) -> str:
    """Status of bag vertex v in a configuration (A-pattern, D-pattern, white set)."""
    vb = 1 << v
    if alpha & vb:
        if dmask & vb:
            return A_SELF
        return A_WHITE if wmask & vb else A_GRAY
    return D_ONLY if dmask & vb else OUTSIDE


# --- the DP ------------------------------------------------------------------


class _Item:
    __slots__ = ("alpha", "table", "p", "prov")

    def __init__(self, alpha, table, p, prov):
        self.alpha = alpha
        self.table = table
        self.p = p
        self.prov = prov


def _normalize(table):
    """Per D-pattern, keep only white-set/cost pairs not beaten by a superset
    at equal or lower cost."""
    by_d = {}
    for (dm, wm), c in table.items():
        by_d.setdefault(dm, []).append((wm, c))
    out = {}
    for dm, entries in by_d.items():
        entries.sort(key=lambda e: e[1])
        kept = []
        for wm, c in entries:
            if not any(kw & wm == wm and kc <= c for kw, kc in kept):
                kept.append((wm, c))
        for wm, c in kept:
            out[(dm, wm)] = c
    return out


def _query(table, dm, wm):
    best = None
    for (d, w), c in table.items():
        if d == dm and w & wm == wm and (best is None or c < best):
            best = c
    return best


def _everywhere_at_least(b, a):
    """True if b's cost function is pointwise >= a's, so a never wins the max."""
    for (dm, wm), c in b.table.items():
        qa = _query(a.table, dm, wm)
        if qa is None or qa > c:
            return False
    return True


def _merge_items(items, pareto_threshold=10):
    by_alpha = {}
    for it in items:
        key = (it.alpha, tuple(sorted(it.table.items())))
        if key not in by_alpha:
            by_alpha[key] = it
    grouped = {}
    for (alpha, _), it in by_alpha.items():
        grouped.setdefault(alpha, []).append(it)
    out = []
    for group in grouped.values():
        if len(group) > pareto_threshold:
            kept = []
            for it in group:
                if not any(_everywhere_at_least(b, it) for b in kept):
                    kept = [b for b in kept if not _everywhere_at_least(it, b)]
                    kept.append(it)
            group = kept
        out.extend(group)
    return out


def _dp_items(g, nd):
    done = {}
    for idx, node in enumerate(nd.nodes):
        if node.kind == LEAF:
            items = [_Item(0, {(0, 0): 0}, 0, ("leaf",))]
        elif node.kind == INTRODUCE:
            items = _introduce(g, node, done[node.children[0]])
        elif node.kind == FORGET:
            items = _forget(node, done[node.children[0]])
        else:
            items = _join(done[node.children[0]], done[node.children[1]])
        done[idx] = _merge_items(items)
    return done


def _introduce(g, node, child_items):
    v = node.vertex
    vb = 1 << v
    row = g.row[v]
    items = []
    for it in child_items:
        table = {}
        for (dm, wm), c in it.table.items():
            _upd(table, dm, wm, c)
            _upd(table, dm | vb, wm | (row & it.alpha), c + 1)
        items.append(_Item(it.alpha, _normalize(table), it.p, ("intro", it, v, False)))
        if row & it.alpha == 0:
            alpha = it.alpha | vb
            table = {}
            for (dm, wm), c in it.table.items():
                _upd(table, dm, wm | (vb if dm & row else 0), c)
                _upd(table, dm | vb, wm | vb, c + 1)
            items.append(_Item(alpha, _normalize(table), it.p + 1, ("intro", it, v, True)))
    return items


def _forget(node, child_items):
    v = node.vertex
    vb = 1 << v
    items = []
    for it in child_items:
        in_a = bool(it.alpha & vb)
        table = {}
        for (dm, wm), c in it.table.items():
            if in_a and not (wm & vb):
                continue  # a forgotten member of A must be dominated by now
            _upd(table, dm & ~vb, wm & ~vb, c)
        if table:
            items.append(_Item(it.alpha & ~vb, _normalize(table), it.p, ("forget", it, v)))
    return items


def _join(items1, items2):
    by_alpha = {}
    for it in items2:
        by_alpha.setdefault(it.alpha, []).append(it)
    items = []
    for it1 in items1:
        for it2 in by_alpha.get(it1.alpha, ()):
            by_d = {}
            for (dm, wm), c in it2.table.items():
                by_d.setdefault(dm, []).append((wm, c))
            table = {}
            for (dm, w1), c1 in it1.table.items():
                for w2, c2 in by_d.get(dm, ()):
                    _upd(table, dm, w1 | w2, c1 + c2 - dm.bit_count())
            if table:
                p = it1.p + it2.p - it1.alpha.bit_count()
                items.append(_Item(it1.alpha, _normalize(table), p, ("join", it1, it2)))
    return items


def _upd(table, dm, wm, c):
    key = (dm, wm)
    if key not in table or table[key] > c:
        table[key] = c


def _walk_alpha(item):
    mask = 0
    stack = [item]
    while stack:
        it = stack.pop()
        kind = it.prov[0]
        if kind == "leaf":
            continue
        if kind == "intro":
            _, child, v, in_a = it.prov
            if in_a:
                mask |= 1 << v
            stack.append(child)
        elif kind == "forget":
            stack.append(it.prov[1])
        else:
            stack.append(it.prov[1])
            stack.append(it.prov[2])
    return mask


def gamma_i_treewidth(
    g: Graph,
    td: TreeDecomposition | None = None,
    width_ceiling: int = DEFAULT_WIDTH_CEILING,
):
    """Independence-domination number via a tree decomposition.

    The decomposition defaults to the min-fill heuristic; widths above the
    ceiling are rejected rather than attempted.
    """
    if g.n == 0:
        return 0, DominationCertificate(0, 0, 0)
    if td is None:
        td = heuristic_decomposition(g)
    bad = validate_decomposition(g, td)
    if bad is not None:
        raise GraphError(f"invalid tree decomposition ({bad})")
    if td.width > width_ceiling:
        raise CapacityError(f"decomposition width {td.width} exceeds ceiling {width_ceiling}")
    nd = make_nice(td)
    done = _dp_items(g, nd)
    root_items = done[nd.root]
    best_value = -1
    best_item = None
    for it in root_items:
        c = it.table.get((0, 0))
        if c is not None and c > best_value:
            best_value = c
            best_item = it
    a_mask = _walk_alpha(best_item)
    from .exactexp import gamma_of_independent_set_fast

    value, witness, _ = gamma_of_independent_set_fast(g, a_mask)
    if value != best_value:
        raise GraphError(
            f"internal error: DP value {best_value} but witness set needs {value}"
        )
    return best_value, DominationCertificate(a_mask, witness, best_value)


# --- PACE-style file format --------------------------------------------------
#
# Native header "s <#bags> <width+1> <n>" with 0-based "b <id> <vertices..>"
# lines and bag-edge lines "<id> <id>". Files with an "s td ..." header are
# read with PACE conventions instead: 1-based bag ids and vertex names.


def serialize_decomposition(td: TreeDecomposition) -> str:
    lines = [f"s {len(td.bags)} {td.width + 1} {td.n}"]
    for i, bag in enumerate(td.bags):
        lines.append("b {} {}".format(i, " ".join(map(str, mask_to_list(bag)))).rstrip())
    for a, b in td.edges:
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    header = None
    one_based = False
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise FormatError("duplicate 's' header", lineno)
            body = parts[1:]
            if body and body[0] == "td":
                one_based = True
                body = body[1:]
            if len(body) != 3:
                raise FormatError("expected 's [td] <#bags> <width+1> <n>'", lineno)
            header = tuple(int(x) for x in body)
        elif parts[0] == "b":
            if header is None:
                raise FormatError("bag before 's' header", lineno)
            idx = int(parts[1]) - (1 if one_based else 0)
            verts = [int(x) - (1 if one_based else 0) for x in parts[2:]]
            if idx in bags:
                raise FormatError(f"duplicate bag {parts[1]}", lineno)
            bags[idx] = mask_from(verts)
        else:
            if header is None or len(parts) != 2:
                raise FormatError("expected bag-edge line '<id> <id>'", lineno)
            a = int(parts[0]) - (1 if one_based else 0)
            b = int(parts[1]) - (1 if one_based else 0)
            edges.append((a, b))
    if header is None:
        raise FormatError("missing 's' header")
    count, _, n = header
    if sorted(bags) != list(range(count)):
        raise FormatError(f"expected bags 0..{count - 1}")
    td = TreeDecomposition(n, [bags[i] for i in range(count)], edges)
    return td
