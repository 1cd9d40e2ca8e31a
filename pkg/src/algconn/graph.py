"""Immutable simple graphs and the combinatorial routines built on them.

Vertices are dense integers ``0..n-1``. Every routine that needs a connected
input raises :class:`DisconnectedGraphError` instead of returning an
infinite value.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "GraphError",
    "DisconnectedGraphError",
    "GraphFormatError",
    "Graph",
    "CellPartition",
    "BlockDecomposition",
    "EquitableCheck",
    "DegreeProfile",
    "build_graph",
    "bfs_distances",
    "is_connected",
    "eccentricities",
    "diameter",
    "distance_partition",
    "block_decomposition",
    "is_equitable",
    "coarsest_equitable_partition",
    "degree_profile",
    "is_regular",
    "format_graph",
    "parse_graph",
    "read_graph",
    "write_graph",
]


class GraphError(ValueError):
    """Invalid graph input (bad edge, bad partition, ...)."""


class DisconnectedGraphError(GraphError):
    pass


class GraphFormatError(GraphError):
    """The text form of a graph deviates from the canonical format."""


@dataclass(frozen=True, eq=True)
class Graph:
    """Simple undirected graph stored as sorted adjacency tuples.

    Use :func:`build_graph` (or :meth:`from_edges`) rather than the
    constructor; it validates the edge list.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    edge_count: int = field(compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return build_graph(n, edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    @cached_property
    def _edge_array(self) -> np.ndarray:
        out = np.fromiter(
            (x for e in self.edges() for x in e), dtype=np.int64, count=2 * self.edge_count
        ).reshape(-1, 2)
        out.flags.writeable = False
        return out

    def edge_array(self) -> np.ndarray:
        """Read-only ``(m, 2)`` array of the edges, lexicographically sorted."""
        return self._edge_array

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adj[u]
        i = np.searchsorted(nbrs, v) if nbrs else 0
        return i < len(nbrs) and nbrs[i] == v

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def check_invariants(self) -> None:
        """Raise :class:`GraphError` if any representation invariant fails."""
        total = 0
        for u, nbrs in enumerate(self.adj):
            for i, v in enumerate(nbrs):
                if not 0 <= v < self.n:
                    raise GraphError(f"vertex {u} has out-of-range neighbour {v}")
                if v == u:
                    raise GraphError(f"loop at vertex {u}")
                if i and nbrs[i - 1] >= v:
                    raise GraphError(f"adjacency of {u} not strictly ascending")
                if u not in self.adj[v]:
                    raise GraphError(f"edge ({u}, {v}) is not symmetric")
            total += len(nbrs)
        if total != 2 * self.edge_count:
            raise GraphError("edge_count does not match adjacency lists")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a :class:`Graph`, rejecting loops, out-of-range endpoints and duplicates."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a loop")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"edge ({u}, {v}) is duplicated")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    return Graph(n=n, adj=adj, edge_count=len(seen))


class CellPartition:
    """Ordered partition of ``0..n-1`` into nonempty cells."""

    __slots__ = ("cells", "n")

    def __init__(self, cells: Iterable[Iterable[int]], n: int | None = None):
        cells = tuple(tuple(int(v) for v in c) for c in cells)
        flat = [v for c in cells for v in c]
        if n is None:
            n = len(flat)
        if any(len(c) == 0 for c in cells):
            raise GraphError("partition has an empty cell")
        if len(flat) != n or len(set(flat)) != n or (flat and (min(flat) < 0 or max(flat) >= n)):
            raise GraphError(f"cells do not partition 0..{n - 1}")
        self.cells = cells
        self.n = n

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "CellPartition":
        """Contiguous cells of the given sizes, in index order."""
        cells, start = [], 0
        for s in sizes:
            cells.append(range(start, start + s))
            start += s
        return cls(cells, start)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.cells[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CellPartition) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells]

    def cell_index(self) -> np.ndarray:
        """Array mapping each vertex to the index of its cell."""
        out = np.empty(self.n, dtype=np.int64)
        for i, c in enumerate(self.cells):
            out[list(c)] = i
        return out

    def __repr__(self) -> str:
        return f"CellPartition(sizes={self.sizes()})"


def _require_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range for graph on {G.n} vertices")


def bfs_distances(G: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    _require_vertex(G, source)
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    adj = G.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return False
    return min(bfs_distances(G, 0)) >= 0


def _require_connected(G: Graph) -> None:
    if not is_connected(G):
        raise DisconnectedGraphError("graph is disconnected: infinite diameter")


def eccentricities(G: Graph) -> list[int]:
    _require_connected(G)
    return [max(bfs_distances(G, v)) for v in range(G.n)]


def diameter(G: Graph) -> int:
    """Largest BFS eccentricity."""
    return max(eccentricities(G))


def distance_partition(G: Graph, v: int) -> CellPartition:
    """Cells ``P_i`` of vertices at distance ``i`` from ``v``."""
    dist = bfs_distances(G, v)
    if min(dist) < 0:
        raise DisconnectedGraphError("graph is disconnected: distance partition undefined")
    layers: list[list[int]] = [[] for _ in range(max(dist) + 1)]
    for u, d in enumerate(dist):
        layers[d].append(u)
    return CellPartition(layers, G.n)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[tuple[tuple[int, int], ...], ...]
    cut_vertices: frozenset[int]
    block_tree_is_path: bool
    end_blocks: tuple[int, ...]

    def cut_count(self, i: int) -> int:
        return len(self.blocks[i] & self.cut_vertices)


def block_decomposition(G: Graph) -> BlockDecomposition:
    """Blocks (biconnected components and bridges) via an iterative DFS."""
    _require_connected(G)
    n, adj = G.n, G.adj
    if n == 1:
        return BlockDecomposition((frozenset({0}),), ((),), frozenset(), False, ())

    disc = [-1] * n
    low = [0] * n
    edge_stack: list[tuple[int, int]] = []
    raw_blocks: list[list[tuple[int, int]]] = []
    cuts: set[int] = set()

    root = 0
    disc[root] = low[root] = 0
    clock = 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        descended = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append((v, w))
                disc[w] = low[w] = clock
                clock += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(adj[w])))
                descended = True
                break
            if w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if descended:
            continue
        stack.pop()
        if not stack:
            break
        u = stack[-1][0]
        if low[v] < low[u]:
            low[u] = low[v]
        if low[v] >= disc[u]:
            comp = []
            while True:
                e = edge_stack.pop()
                comp.append(e)
                if e == (u, v):
                    break
            raw_blocks.append(comp)
            if u != root:
                cuts.add(u)
    if root_children > 1:
        cuts.add(root)

    pairs = []
    for comp in raw_blocks:
        verts = frozenset(x for e in comp for x in e)
        edges = tuple(sorted((a, b) if a < b else (b, a) for a, b in comp))
        pairs.append((min(verts), verts, edges))
    pairs.sort(key=lambda t: (t[0], sorted(t[1])))
    blocks = tuple(p[1] for p in pairs)
    block_edges = tuple(p[2] for p in pairs)

    cut_set = frozenset(cuts)
    per_block = [len(b & cut_set) for b in blocks]
    membership = Counter(c for b in blocks for c in b & cut_set)
    path_like = (
        len(blocks) >= 2
        and all(k <= 2 for k in per_block)
        and all(membership[c] == 2 for c in cut_set)
    )
    ends = tuple(i for i, k in enumerate(per_block) if k <= 1) if path_like else ()
    return BlockDecomposition(blocks, block_edges, cut_set, path_like, ends)


@dataclass(frozen=True)
class EquitableCheck:
    """Outcome of :func:`is_equitable`.

    On success ``quotient[i, j]`` is the number of neighbours a vertex of
    cell ``i`` has in cell ``j``. On failure ``witness`` is
    ``(u, v, j)``: two vertices of one cell with different neighbour
    counts into cell ``j``.
    """

    quotient: np.ndarray | None
    witness: tuple[int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.quotient is not None

    def __bool__(self) -> bool:
        return self.ok


def is_equitable(G: Graph, partition: CellPartition) -> EquitableCheck:
    if partition.n != G.n:
        raise GraphError(f"partition covers {partition.n} vertices, graph has {G.n}")
    k = len(partition)
    cell_of = partition.cell_index()
    counts = np.zeros((G.n, k), dtype=np.int64)
    if G.edge_count:
        e = G.edge_array()
        np.add.at(counts, (e[:, 0], cell_of[e[:, 1]]), 1)
        np.add.at(counts, (e[:, 1], cell_of[e[:, 0]]), 1)
    Q = np.empty((k, k), dtype=np.int64)
    for i, cell in enumerate(partition.cells):
        rows = counts[list(cell)]
        bad = np.nonzero((rows != rows[0]).any(axis=1))[0]
        if bad.size:
            j = int(np.nonzero(rows[bad[0]] != rows[0])[0][0])
            return EquitableCheck(None, (cell[0], cell[int(bad[0])], j))
        Q[i] = rows[0]
    return EquitableCheck(Q)


def coarsest_equitable_partition(G: Graph) -> CellPartition:
    """Colour refinement from the trivial partition; cells ordered by smallest vertex."""
    colors = [0] * G.n
    count = 1 if G.n else 0
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in G.adj[v]))) for v in range(G.n)]
        index: dict = {}
        new = [index.setdefault(sg, len(index)) for sg in sigs]
        if len(index) == count:
            break
        colors, count = new, len(index)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return CellPartition(sorted(cells.values()), G.n)


class DegreeProfile(NamedTuple):
    min: int
    max: int
    counts: dict[int, int]


def degree_profile(G: Graph) -> DegreeProfile:
    degs = Counter(len(a) for a in G.adj)
    if not degs:
        return DegreeProfile(0, 0, {})
    return DegreeProfile(min(degs), max(degs), dict(sorted(degs.items())))


def is_regular(G: Graph, d: int | None = None) -> bool:
    prof = degree_profile(G)
    if G.n == 0:
        return False
    return prof.min == prof.max and (d is None or prof.min == d)


# -- text format ----------------------------------------------------------

def format_graph(G: Graph) -> str:
    """Canonical text: ``n m`` then one ``u v`` line per edge (``u < v``, sorted)."""
    lines = [f"{G.n} {G.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit() or (len(tok) > 1 and tok[0] == "0"):
        raise GraphFormatError(f"line {lineno}: {tok!r} is not a canonical non-negative integer")
    return int(tok)


def parse_graph(text: str) -> Graph:
    """Inverse of :func:`format_graph`; any deviation from the canonical form is rejected."""
    if not text.endswith("\n"):
        raise GraphFormatError("missing final newline")
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 2:
        raise GraphFormatError("line 1: expected 'n m'")
    n, m = (_parse_int(t, 1) for t in header)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1} lines")
    edges = []
    prev = None
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        u, v = (_parse_int(t, lineno) for t in parts)
        if not u < v:
            raise GraphFormatError(f"line {lineno}: endpoints must satisfy u < v")
        if prev is not None and (u, v) <= prev:
            raise GraphFormatError(f"line {lineno}: edges not strictly sorted")
        prev = (u, v)
        edges.append((u, v))
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from exc


def read_graph(path: str | Path) -> Graph:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_graph(fh.read())


def write_graph(G: Graph, path: str | Path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_graph(G))
