"""Immutable simple graphs on vertices 0..n-1 with bitmask adjacency."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "GraphError",
    "Graph6Error",
    "from_edge_list",
    "parse_graph6",
    "encode_graph6",
    "parse_edge_list_text",
    "format_edge_list_text",
    "is_connected",
    "components",
    "two_core",
    "contract",
    "delete_edge",
    "delete_vertex",
    "induced_subgraph",
    "is_clique",
    "degeneracy_order",
]

GRAPH6_MAX_N = 62


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph.

    ``adj[v]`` is an integer bitmask whose bit ``u`` is set iff ``uv`` is an
    edge. Instances are hashable and compare by labelled structure.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in _bits(self.adj[v] & ((1 << v) - 1))]

    def vertices(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


# -- graph6 -----------------------------------------------------------------


def parse_graph6(line: str | bytes) -> Graph:
    """Decode one graph6 line (n <= 62, optional ``>>graph6<<`` header)."""
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.strip()
    start = 0
    if data.startswith(b">>graph6<<"):
        start = len(b">>graph6<<")
    if len(data) <= start:
        raise Graph6Error("empty graph6 string", start)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"byte {data[i]!r} outside printable range 63..126", i)
    n = data[start] - 63
    if n > GRAPH6_MAX_N:
        raise Graph6Error("multi-byte size header (n > 62) is not supported", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start + 1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit stream: need {nbytes} bytes, got {len(body)}", len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage after bit stream", start + 1 + nbytes)

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            chunk = body[k // 6] - 63
            if chunk >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def encode_graph6(G: Graph) -> str:
    if G.n > GRAPH6_MAX_N:
        raise GraphError(f"graph6 encoder supports n <= {GRAPH6_MAX_N}, got {G.n}")
    out = [chr(G.n + 63)]
    acc = 0
    k = 0
    for j in range(1, G.n):
        for i in range(j):
            acc = acc << 1 | (G.adj[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


# -- plain edge-list text -----------------------------------------------------


def parse_edge_list_text(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    try:
        n, m = (int(t) for t in lines[0])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge-list input: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


def format_edge_list_text(G: Graph) -> str:
    edges = G.edges()
    return "\n".join([f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# -- structure ---------------------------------------------------------------


def components(G: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, ordered by lowest vertex."""
    seen = 0
    comps = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    if G.n < 1:
        raise GraphError("connectivity is undefined for the empty graph")
    return len(components(G)) == 1


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled in increasing order."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in _bits(G.adj[v]):
            if u in index:
                row |= 1 << index[u]
        adj.append(row)
    return Graph(len(keep), tuple(adj))


def two_core(G: Graph) -> tuple[Graph, list[int]]:
    """Peel vertices of degree <= 1 until none remain.

    Returns the core (relabelled, original order preserved) and the removed
    vertices in removal order.
    """
    deg = G.degrees()
    alive = [True] * G.n
    queue = deque(v for v in range(G.n) if deg[v] <= 1)
    removed = []
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        removed.append(v)
        for u in _bits(G.adj[v]):
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    queue.append(u)
    return induced_subgraph(G, (v for v in range(G.n) if alive[v])), removed


def delete_vertex(G: Graph, v: int) -> Graph:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} not in graph on {G.n} vertices")
    return induced_subgraph(G, (u for u in range(G.n) if u != v))


def delete_edge(G: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    adj = list(G.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(G.n, tuple(adj))


def contract(G: Graph, u: int, v: int) -> Graph:
    """Identify non-adjacent ``u`` and ``v``.

    The merged vertex keeps the lower index; the last vertex ``n-1`` is moved
    into the slot freed by the higher index.
    """
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise GraphError(f"({u}, {v}) has an endpoint outside the graph")
    if u == v:
        raise GraphError("cannot contract a vertex with itself")
    if G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is an edge; only non-adjacent pairs are contracted")
    lo, hi = min(u, v), max(u, v)
    last = G.n - 1
    # relabel: hi -> lo, last -> hi (if hi != last)
    relabel = list(range(G.n))
    relabel[hi] = lo
    if hi != last:
        relabel[last] = hi
    adj = [0] * (G.n - 1)
    for a, b in G.edges():
        x, y = relabel[a], relabel[b]
        adj[x] |= 1 << y
        adj[y] |= 1 << x
    return Graph(G.n - 1, tuple(adj))


def is_clique(G: Graph) -> bool:
    full = (1 << G.n) - 1
    return all(row | (1 << v) == full for v, row in enumerate(G.adj))


def degeneracy_order(G: Graph) -> list[int]:
    """Elimination order: repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    alive = (1 << G.n) - 1
    order = []
    for _ in range(G.n):
        best = min(_bits(alive), key=lambda v: ((G.adj[v] & alive).bit_count(), v))
        order.append(best)
        alive &= ~(1 << best)
    return order
