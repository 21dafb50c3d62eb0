"""Immutable simple graphs with bitset adjacency.

Vertices are labelled 0..n-1. Each vertex's neighborhood is stored as a
Python int used as a bitset, which makes adjacency tests, neighborhood
intersections and component sweeps cheap for the dense graphs this
package works with (n up to ~1000). Graphs are frozen after construction;
every derived graph is built fresh.

A graph may carry a bipartition: a frozenset holding the S-side vertices.
When present, every edge must cross the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for graph construction/input errors."""


class VertexRangeError(GraphError):
    """An endpoint is outside 0..n-1."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered pair appears twice in the input."""


class NonEdgeError(GraphError):
    """An operation referenced an edge that is not in the graph."""


class BipartitionError(GraphError):
    """A declared bipartition is inconsistent with the edge set."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    bipartition: frozenset[int] | None = None
    e: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        if self.e < 0:
            object.__setattr__(self, "e", sum(a.bit_count() for a in self.adj) // 2)
        if self.bipartition is not None:
            s_mask = mask_of(self.bipartition)
            t_mask = ((1 << self.n) - 1) & ~s_mask
            for v in range(self.n):
                side = t_mask if (s_mask >> v) & 1 else s_mask
                if self.adj[v] & ~side:
                    raise BipartitionError(
                        f"edge at vertex {v} does not cross the bipartition"
                    )

    # -- basic queries ----------------------------------------------------

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        self._check_vertex(v)
        return iter_bits(self.adj[v])

    def edges(self) -> Iterator[Edge]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            for w in iter_bits(rest):
                yield (u, u + 1 + w)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} not in 0..{self.n - 1}")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- constructors ---------------------------------------------------------


def make_graph(
    n: int,
    edges: Iterable[Edge],
    s_side: Iterable[int] | None = None,
) -> Graph:
    """Build a simple graph, rejecting loops, duplicates and bad labels."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    seen: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexRangeError(f"edge ({u},{v}) out of range 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = norm_edge(u, v)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    part = None
    if s_side is not None:
        part = frozenset(s_side)
        for v in part:
            if not 0 <= v < n:
                raise VertexRangeError(f"bipartition vertex {v} out of range")
    return Graph(n, tuple(adj), part)


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def edgeless(n: int) -> Graph:
    if n < 1:
        raise GraphError("edgeless graph needs n >= 1")
    return Graph(n, (0,) * n)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("complete bipartite graph needs a, b >= 1")
    s_mask = (1 << a) - 1
    t_mask = ((1 << (a + b)) - 1) ^ s_mask
    adj = tuple(t_mask if v < a else s_mask for v in range(a + b))
    return Graph(a + b, adj, frozenset(range(a)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return make_graph(n, [(v, (v + 1) % n) for v in range(n)])


def join(g: Graph, h: Graph) -> Graph:
    """Join: g's labels kept, h's shifted by g.n, all cross pairs added."""
    n = g.n + h.n
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << n) - 1) ^ g_mask
    adj = [0] * n
    for v in range(g.n):
        adj[v] = g.adj[v] | h_mask
    for v in range(h.n):
        adj[g.n + v] = (h.adj[v] << g.n) | g_mask
    return Graph(n, tuple(adj))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Side-by-side copies, h's labels shifted by g.n."""
    n = g.n + h.n
    adj = list(g.adj) + [a << g.n for a in h.adj]
    part = None
    if g.bipartition is not None and h.bipartition is not None:
        part = frozenset(g.bipartition) | frozenset(v + g.n for v in h.bipartition)
    return Graph(n, tuple(adj), part)


def delete_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """Remove the given edges; removing a non-edge is an error."""
    adj = list(g.adj)
    removed: set[Edge] = set()
    for u, v in edges:
        g._check_vertex(u)
        g._check_vertex(v)
        key = norm_edge(u, v)
        if key in removed:
            raise DuplicateEdgeError(f"edge {key} listed twice for deletion")
        if not (adj[u] >> v) & 1:
            raise NonEdgeError(f"cannot delete non-edge {key}")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        removed.add(key)
    return Graph(g.n, tuple(adj), g.bipartition)


def add_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """Add the given edges; adding an existing edge is an error."""
    adj = list(g.adj)
    added: set[Edge] = set()
    for u, v in edges:
        g._check_vertex(u)
        g._check_vertex(v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = norm_edge(u, v)
        if key in added or (adj[u] >> v) & 1:
            raise DuplicateEdgeError(f"edge {key} already present")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        added.add(key)
    # an added edge may break a declared bipartition; drop it if so
    part = g.bipartition
    if part is not None:
        s_mask = mask_of(part)
        for u, v in added:
            same = ((s_mask >> u) & 1) == ((s_mask >> v) & 1)
            if same:
                part = None
                break
    return Graph(g.n, tuple(adj), part)


# -- statistics -----------------------------------------------------------


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("min_degree of empty graph")
    return min(g.degrees())


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by the given vertices, relabelled in sorted order."""
    vs = sorted(set(vertices))
    for v in vs:
        g._check_vertex(v)
    index = {v: i for i, v in enumerate(vs)}
    sub_mask = mask_of(vs)
    adj = [0] * len(vs)
    for v in vs:
        for w in iter_bits(g.adj[v] & sub_mask):
            adj[index[v]] |= 1 << index[w]
    part = None
    if g.bipartition is not None:
        part = frozenset(index[v] for v in vs if v in g.bipartition)
    return Graph(len(vs), tuple(adj), part)


def component_masks(g: Graph, removed: int = 0) -> list[int]:
    """Connected components as bitmasks, after dropping `removed` vertices."""
    unseen = ((1 << g.n) - 1) & ~removed
    comps = []
    while unseen:
        start = unseen & -unseen
        comp = 0
        frontier = start
        while frontier:
            comp |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp & ~removed
        comps.append(comp)
        unseen &= ~comp
    return comps


def components(g: Graph) -> int:
    return len(component_masks(g))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def two_coloring(g: Graph) -> frozenset[int] | None:
    """A proper 2-coloring (one side returned) or None if an odd cycle exists.

    Disconnected graphs get an arbitrary side choice per component.
    """
    color = [-1] * g.n
    for comp in component_masks(g):
        start = (comp & -comp).bit_length() - 1
        color[start] = 0
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for w in iter_bits(g.adj[v]):
                    if color[w] == -1:
                        color[w] = 1 - color[v]
                        nxt.append(w)
                    elif color[w] == color[v]:
                        return None
            frontier = nxt
    return frozenset(v for v in range(g.n) if color[v] == 0)


def balanced_bipartition(g: Graph) -> frozenset[int] | None:
    """An equal-sized bipartition of g, or None.

    Uses the stored bipartition when present. Otherwise 2-colors each
    component and solves the side-assignment subset-sum so both sides
    reach n/2 (relevant only for disconnected inputs).
    """
    if g.n % 2:
        return None
    half = g.n // 2
    if g.bipartition is not None:
        return g.bipartition if len(g.bipartition) == half else None
    coloring = two_coloring(g)
    if coloring is None:
        return None
    side_mask = mask_of(coloring)
    pieces = []  # (vertices on color-0 side, vertices on color-1 side)
    for comp in component_masks(g):
        zeros = comp & side_mask
        ones = comp & ~side_mask
        pieces.append((zeros, ones))
    # choose per component which color class goes to the S side
    achievable: dict[int, int] = {0: 0}  # S-size so far -> chosen mask
    for zeros, ones in pieces:
        nz, no = zeros.bit_count(), ones.bit_count()
        nxt: dict[int, int] = {}
        for size, msk in achievable.items():
            if size + nz <= half:
                nxt.setdefault(size + nz, msk | zeros)
            if size + no <= half:
                nxt.setdefault(size + no, msk | ones)
        achievable = nxt
    if half not in achievable:
        return None
    return frozenset(iter_bits(achievable[half]))


# -- serialization --------------------------------------------------------


def to_edgelist_text(g: Graph) -> str:
    lines = []
    if g.bipartition is not None and g.bipartition == frozenset(
        range(len(g.bipartition))
    ):
        lines.append(f"#bipartition {len(g.bipartition)}")
    lines.append(f"{g.n} {g.e}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edgelist_text(text: str) -> Graph:
    """Parse the `n m` / `u v` edge-list format.

    An optional `#bipartition s` header declares S = {0..s-1}; other
    `#` lines are comments.
    """
    s_size: int | None = None
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "bipartition":
                if len(parts) != 2 or not parts[1].isdigit():
                    raise GraphError(f"line {lineno}: malformed bipartition header")
                s_size = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise GraphError("missing `n m` header line")
    n, m = header
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    s_side = range(s_size) if s_size is not None else None
    return make_graph(n, edges, s_side)


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (no bipartition carried by the format)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("graph6 string has characters outside 0x3f..0x7e")
    if data[0] <= 62:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    elif len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        body = data[8:]
    else:
        raise GraphError("truncated graph6 size field")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(
            f"graph6 body length {len(body)} does not match n={n}"
        )
    bits = 0
    for b in body:
        bits = (bits << 6) | b
    pad = len(body) * 6 - nbits
    bits >>= pad
    edges = []
    pos = nbits - 1
    for v in range(1, n):
        for u in range(v):
            if (bits >> pos) & 1:
                edges.append((u, v))
            pos -= 1
    return make_graph(n, edges)


def load_graph_text(text: str) -> Graph:
    """Accept either the edge-list format or a graph6 string."""
    stripped = text.strip()
    first = stripped.splitlines()[0].strip() if stripped else ""
    if first.startswith("#") or (
        first and all(tok.lstrip("-").isdigit() for tok in first.split()) and len(first.split()) == 2
    ):
        return parse_edgelist_text(text)
    return parse_graph6(stripped)
