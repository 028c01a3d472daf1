"""Core graph type, set algebra, products and file formats.

Vertex sets are plain Python ints used as bit masks over 0..n-1, so all
set operations (union, intersection, domination checks) are word-parallel.
Helpers below convert between masks and vertex lists.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

# Vertex ids are capped so product constructions cannot silently explode.
MAX_VERTICES = 4_000_000


class GraphError(ValueError):
    """Invalid graph construction or operation."""


class FormatError(GraphError):
    """Malformed graph text; carries the 1-based offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def mask_from(vertices: Iterable[int] | int) -> int:
    """Normalize an int mask or an iterable of vertex ids to a mask."""
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_list(mask: int) -> list[int]:
    return list(bits(mask))


class Graph:
    """Simple undirected graph with dual adjacency representation.

    ``adj[v]`` is a sorted tuple of neighbors, ``row[v]`` the same set as a
    bit mask and ``closed[v]`` the closed neighborhood ``row[v] | 1 << v``.
    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("n", "adj", "row", "closed", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} out of range 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.row = tuple(rows)
        self.adj = tuple(tuple(bits(r)) for r in rows)
        self.closed = tuple(r | (1 << v) for v, r in enumerate(rows))
        self.m = sum(r.bit_count() for r in rows) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.row[u] >> v & 1)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.row == other.row

    def __hash__(self):
        return hash((self.n, self.row))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph; duplicate edges are deduplicated."""
    return Graph(n, edges)


def is_independent(g: Graph, s: Iterable[int] | int) -> bool:
    s = mask_from(s)
    for v in bits(s):
        if g.row[v] & s:
            return False
    return True


def dominates(g: Graph, d: Iterable[int] | int, b: Iterable[int] | int) -> bool:
    """True iff every vertex of b lies in the closed neighborhood of some d vertex."""
    d = mask_from(d)
    b = mask_from(b)
    cover = 0
    for v in bits(d):
        cover |= g.closed[v]
    return b & ~cover == 0


def closed_neighborhood(g: Graph, s: Iterable[int] | int) -> int:
    s = mask_from(s)
    out = 0
    for v in bits(s):
        out |= g.closed[v]
    return out


def complement(g: Graph) -> Graph:
    full = g.full_mask
    h = Graph.__new__(Graph)
    rows = tuple((full & ~g.row[v]) & ~(1 << v) for v in range(g.n))
    h.n = g.n
    h.row = rows
    h.adj = tuple(tuple(bits(r)) for r in rows)
    h.closed = tuple(r | (1 << v) for v, r in enumerate(rows))
    h.m = sum(r.bit_count() for r in rows) // 2
    return h


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> tuple[Graph, list[int]]:
    """Induced subgraph on s plus the list mapping new ids to original ids."""
    s = mask_from(s)
    old = mask_to_list(s)
    index = {v: i for i, v in enumerate(old)}
    edges = []
    for v in old:
        for w in bits(g.row[v] & s):
            if v < w:
                edges.append((index[v], index[w]))
    return Graph(len(old), edges), old


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Component masks, in increasing order of their smallest member."""
    todo = g.full_mask if within is None else within
    comps = []
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.row[v]
            grow &= todo & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        todo &= ~comp
    return comps


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (a, b) gets index a * h.n + b.

    (a1, b1) ~ (a2, b2) iff a1 == a2 and b1 ~ b2, or a1 ~ a2 and b1 == b2.
    """
    if g.n * h.n > MAX_VERTICES:
        raise GraphError(f"product on {g.n}*{h.n} vertices exceeds the id width")
    edges = []
    for a in range(g.n):
        base = a * h.n
        for b1, b2 in h.edges():
            edges.append((base + b1, base + b2))
    for a1, a2 in g.edges():
        for b in range(h.n):
            edges.append((a1 * h.n + b, a2 * h.n + b))
    return Graph(g.n * h.n, edges)


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product; (a1, b1) ~ (a2, b2) iff a1 in N[a2] and b1 in N[b2]."""
    if g.n * h.n > MAX_VERTICES:
        raise GraphError(f"product on {g.n}*{h.n} vertices exceeds the id width")
    edges = list(cartesian_product(g, h).edges())
    for a1, a2 in g.edges():
        for b1, b2 in h.edges():
            edges.append((a1 * h.n + b1, a2 * h.n + b2))
            edges.append((a1 * h.n + b2, a2 * h.n + b1))
    return Graph(g.n * h.n, edges)


def product_index(h: Graph, a: int, b: int) -> int:
    return a * h.n + b


def product_pair(h: Graph, index: int) -> tuple[int, int]:
    """Row-major product index back to its (g-vertex, h-vertex) pair."""
    return divmod(index, h.n)


def edge_clique_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Edge-clique graph: vertices are the edges of g in lexicographic order.

    Two distinct edges are adjacent iff the union of their endpoints spans a
    clique of g: a shared endpoint plus a triangle, or two disjoint edges
    whose four endpoints induce a K4.
    """
    edge_list = sorted(g.edges())
    index = {e: i for i, e in enumerate(edge_list)}
    out = []
    for i, (a, b) in enumerate(edge_list):
        for j in range(i + 1, len(edge_list)):
            c, d = edge_list[j]
            endpoints = {a, b, c, d}
            if all(g.has_edge(u, v) for u, v in itertools.combinations(endpoints, 2)):
                out.append((i, j))
    return Graph(len(edge_list), out), edge_list


# --- text formats -----------------------------------------------------------
#
# edge-list: first non-comment line "n m", then m lines "u v" (0-based).
# DIMACS-like: "p <n> <m>" header, then "e u v" lines (0-based).
# '#' starts a comment in edge-list files, 'c' lines are DIMACS comments.

EDGE_LIST = "edge-list"
DIMACS = "dimacs"


def _content_lines(text, comment_prefixes):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or any(line.startswith(p) for p in comment_prefixes):
            continue
        yield lineno, line


def parse(text: str, fmt: str = EDGE_LIST) -> Graph:
    if fmt == EDGE_LIST:
        return _parse_edge_list(text)
    if fmt == DIMACS:
        return _parse_dimacs(text)
    raise FormatError(f"unknown format {fmt!r}")


def _parse_edge_list(text):
    n = None
    m = None
    edges = []
    for lineno, line in _content_lines(text, ("#",)):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2:
                raise FormatError("expected header 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError("expected integer header 'n m'", lineno)
            continue
        if len(parts) != 2:
            raise FormatError("expected edge 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("expected integer edge 'u v'", lineno)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"bad edge ({u}, {v}) for n={n}", lineno)
        edges.append((u, v))
    if n is None:
        raise FormatError("empty input: missing 'n m' header")
    if m is not None and len(edges) != m:
        raise FormatError(f"header declared {m} edges, found {len(edges)}")
    return Graph(n, edges)


def _parse_dimacs(text):
    n = None
    edges = []
    for lineno, line in _content_lines(text, ("c",)):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("duplicate 'p' header", lineno)
            # accept both "p n m" and "p <name> n m"
            nums = [p for p in parts[1:] if p.lstrip("-").isdigit()]
            if len(nums) < 2:
                raise FormatError("expected 'p <n> <m>'", lineno)
            n = int(nums[-2])
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before 'p' header", lineno)
            if len(parts) != 3:
                raise FormatError("expected 'e u v'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("expected integer edge", lineno)
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"bad edge ({u}, {v}) for n={n}", lineno)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown directive {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p' header")
    return Graph(n, edges)


def serialize(g: Graph, fmt: str = EDGE_LIST) -> str:
    edge_list = sorted(g.edges())
    if fmt == EDGE_LIST:
        lines = [f"{g.n} {len(edge_list)}"]
        lines += [f"{u} {v}" for u, v in edge_list]
        return "\n".join(lines) + "\n"
    if fmt == DIMACS:
        lines = [f"p {g.n} {len(edge_list)}"]
        lines += [f"e {u} {v}" for u, v in edge_list]
        return "\n".join(lines) + "\n"
    raise FormatError(f"unknown format {fmt!r}")
