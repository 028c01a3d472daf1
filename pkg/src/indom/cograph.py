"""Cotree recognition and closed-form domination values for cographs.

A cograph decomposes completely into disjoint unions and joins; the cotree
records that decomposition with leaves standing for vertices. Recognition
works by recursive partition: split on connected components, otherwise on
components of the complement, otherwise the block is not a cograph and a
4-vertex induced path is extracted as the refusal witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    FormatError,
    bits,
    connected_components,
    mask_from,
    mask_to_list,
)
from .oracle import DominationCertificate

LEAF = "leaf"
UNION = "union"
JOIN = "join"


class CotreeNode:
    __slots__ = ("label", "children", "vertex")

    def __init__(self, label, children=(), vertex=None):
        self.label = label
        self.children = list(children)
        self.vertex = vertex


@dataclass(frozen=True)
class Cotree:
    root: CotreeNode
    n: int


@dataclass(frozen=True)
class P4Witness:
    """Four vertices inducing a path, in path order."""

    vertices: tuple[int, int, int, int]


class ClassMismatchError(GraphError):
    """Input is outside the graph class a solver was forced onto."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _postorder(root):
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(node.children)
    order.reverse()
    return order


def _split(g, mask):
    """Classify a vertex block: leaf, union parts, join parts, or stuck."""
    if mask & (mask - 1) == 0:
        return LEAF, None
    comps = connected_components(g, mask)
    if len(comps) > 1:
        return UNION, comps
    co_comps = _co_components(g, mask)
    if len(co_comps) > 1:
        return JOIN, co_comps
    return None, None


def _co_components(g, mask):
    """Connected components of the complement, restricted to mask."""
    todo = mask
    comps = []
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= mask & ~g.row[v] & ~(1 << v)
            grow &= todo & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        todo &= ~comp
    return comps


def _is_cograph_block(g, mask):
    stack = [mask]
    while stack:
        m = stack.pop()
        kind, parts = _split(g, m)
        if kind is None:
            return False
        if kind != LEAF:
            stack.extend(parts)
    return True


def _extract_p4(g, mask):
    """Shrink a non-cograph block to exactly four vertices inducing a P4."""
    for v in mask_to_list(mask):
        smaller = mask & ~(1 << v)
        if not _is_cograph_block(g, smaller):
            mask = smaller
    quad = mask_to_list(mask)
    assert len(quad) == 4
    ends = [v for v in quad if (g.row[v] & mask).bit_count() == 1]
    a = min(ends)
    path = [a]
    seen = 1 << a
    while len(path) < 4:
        nxt = g.row[path[-1]] & mask & ~seen
        v = next(bits(nxt))
        path.append(v)
        seen |= 1 << v
    return P4Witness(tuple(path))


def build_cotree(g: Graph):
    """Cotree of g, or a P4Witness when g is not a cograph."""
    if g.n == 0:
        raise GraphError("empty graph has no cotree")
    root_holder = [None]
    stack = [(g.full_mask, root_holder, 0)]
    while stack:
        mask, holder, slot = stack.pop()
        kind, parts = _split(g, mask)
        if kind is None:
            return _extract_p4(g, mask)
        if kind == LEAF:
            node = CotreeNode(LEAF, vertex=next(bits(mask)))
        else:
            node = CotreeNode(kind, children=[None] * len(parts))
            for i, part in enumerate(parts):
                stack.append((part, node.children, i))
        holder[slot] = node
    return Cotree(root_holder[0], g.n)


def is_cograph(g: Graph) -> bool:
    return g.n == 0 or _is_cograph_block(g, g.full_mask)


def cotree_to_graph(t: Cotree) -> Graph:
    """Reconstruct adjacency from the cotree."""
    edges = []
    leaves = {}
    for node in _postorder(t.root):
        if node.label == LEAF:
            leaves[id(node)] = [node.vertex]
            continue
        parts = [leaves.pop(id(c)) for c in node.children]
        if node.label == JOIN:
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    for u in parts[i]:
                        for v in parts[j]:
                            edges.append((u, v))
        merged = [v for part in parts for v in part]
        leaves[id(node)] = merged
    vertices = leaves[id(t.root)]
    if sorted(vertices) != list(range(t.n)):
        raise GraphError("cotree leaves are not a bijection onto 0..n-1")
    return Graph(t.n, edges)


def validate_cotree(t: Cotree) -> None:
    """Check arity and label alternation along root-to-leaf paths."""
    stack = [(t.root, None)]
    seen = []
    while stack:
        node, parent_label = stack.pop()
        if node.label == LEAF:
            seen.append(node.vertex)
            continue
        if len(node.children) < 2:
            raise GraphError("internal cotree node with fewer than 2 children")
        if node.label == parent_label:
            raise GraphError("cotree labels do not alternate")
        for c in node.children:
            stack.append((c, node.label))
    if sorted(seen) != list(range(t.n)):
        raise GraphError("cotree leaves are not a bijection onto 0..n-1")


def gamma_cograph(t: Cotree) -> int:
    """Domination number from the cotree alone.

    Union nodes add up; a join is dominated by one universal vertex if some
    part has one, and by a cross pair otherwise.
    """
    values = {}
    for node in _postorder(t.root):
        if node.label == LEAF:
            values[id(node)] = 1
        else:
            child_vals = [values.pop(id(c)) for c in node.children]
            if node.label == UNION:
                values[id(node)] = sum(child_vals)
            else:
                values[id(node)] = min(min(child_vals), 2)
    return values[id(t.root)]


def cotree_component_count(t: Cotree) -> int:
    if t.root.label == UNION:
        return len(t.root.children)
    return 1


def gamma_i_cograph(g: Graph) -> tuple[int, DominationCertificate]:
    """Independence-domination number of a cograph: its component count.

    The certificate takes, per component, the lexicographically least maximal
    independent set together with one vertex adjacent to all of it.
    """
    if g.n == 0:
        return 0, DominationCertificate(0, 0, 0)
    result = build_cotree(g)
    if isinstance(result, P4Witness):
        raise ClassMismatchError("input is not a cograph", witness=result)
    comps = connected_components(g)
    a_mask = 0
    d_mask = 0
    for comp in comps:
        part = 0
        for v in bits(comp):
            if g.row[v] & part == 0:
                part |= 1 << v
        a_mask |= part
        for v in bits(comp):
            if part & ~g.closed[v] == 0:
                d_mask |= 1 << v
                break
        else:
            raise GraphError("no single dominator inside a cograph component")
    return len(comps), DominationCertificate(a_mask, d_mask, len(comps))


# --- cotree text format ------------------------------------------------------
#
# One node per line, preorder: "node <id> <parent-id|-> <UNION|JOIN|LEAF> [vertex]".

_LABELS = {"UNION": UNION, "JOIN": JOIN, "LEAF": LEAF}


def serialize_cotree(t: Cotree) -> str:
    lines = []
    stack = [(t.root, "-")]
    next_id = 0
    while stack:
        node, parent_id = stack.pop()
        my_id = next_id
        next_id += 1
        if node.label == LEAF:
            lines.append(f"node {my_id} {parent_id} LEAF {node.vertex}")
        else:
            lines.append(f"node {my_id} {parent_id} {node.label.upper()}")
            for c in reversed(node.children):
                stack.append((c, my_id))
    return "\n".join(lines) + "\n"


def parse_cotree(text: str) -> Cotree:
    nodes = {}
    root_id = None
    n_leaves = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 4 or parts[0] != "node":
            raise FormatError("expected 'node <id> <parent> <LABEL> [vertex]'", lineno)
        node_id = int(parts[1])
        label = _LABELS.get(parts[3])
        if label is None:
            raise FormatError(f"unknown label {parts[3]!r}", lineno)
        if label == LEAF:
            if len(parts) != 5:
                raise FormatError("leaf line needs a vertex", lineno)
            node = CotreeNode(LEAF, vertex=int(parts[4]))
            n_leaves += 1
        else:
            node = CotreeNode(label)
        nodes[node_id] = node
        if parts[2] == "-":
            if root_id is not None:
                raise FormatError("two roots", lineno)
            root_id = node_id
        else:
            parent = nodes.get(int(parts[2]))
            if parent is None:
                raise FormatError("parent appears after child or is missing", lineno)
            parent.children.append(node)
    if root_id is None:
        raise FormatError("no root node")
    t = Cotree(nodes[root_id], n_leaves)
    validate_cotree(t)
    return t
