"""Finite graphs viewed as geodesic metric spaces with unit edge lengths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (parse errors, loops, multi-edges, disconnection)."""


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on vertices ``0 .. vertex_count - 1``.

    ``labels`` records the original vertex names after canonical renumbering;
    ``adjacency`` holds sorted neighbor tuples.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()
    name: str = ""
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)
    _edge_pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        labels = self.labels or tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise GraphError("label count does not match vertex count")
        if len(set(labels)) != n:
            raise GraphError("duplicate vertex labels")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        canon = []
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {labels[u]}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge {labels[u]}-{labels[v]}")
            nbrs[u].add(v)
            nbrs[v].add(u)
            canon.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(s)) for s in nbrs))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})
        object.__setattr__(self, "_edge_pos", {e: k for k, e in enumerate(self.edges)})
        if not self._connected():
            raise GraphError("graph is disconnected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertex(self, ref: int | str) -> int:
        """Resolve a vertex index or label to an index."""
        if isinstance(ref, int):
            if not 0 <= ref < self.vertex_count:
                raise GraphError(f"invalid vertex id {ref}")
            return ref
        if ref in self._index:
            return self._index[ref]
        raise GraphError(f"unknown vertex label {ref!r}")

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_bipartite(self) -> bool:
        color = [-1] * self.vertex_count
        color[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
        return True

    def subdivide(self) -> "Graph":
        """Barycentric subdivision: one new vertex per edge, labelled ``m(a,b)``.

        Original vertex ``v`` keeps index ``v``; the midpoint of ``edges[k]`` gets
        index ``vertex_count + k``. Distances double exactly.
        """
        n = self.vertex_count
        new_edges = []
        labels = list(self.labels)
        for k, (u, v) in enumerate(self.edges):
            new_edges.append((u, n + k))
            new_edges.append((v, n + k))
            labels.append(f"m({self.labels[u]},{self.labels[v]})")
        return Graph(n + len(self.edges), tuple(new_edges), tuple(labels), name=f"sd({self.name})")

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_pos[(min(u, v), max(u, v))]
        except KeyError:
            raise GraphError(f"no edge {u}-{v}") from None


def bfs_distances(graph: Graph, source: int) -> list[int]:
    dist = [-1] * graph.vertex_count
    dist[source] = 0
    queue = deque([source])
    adj = graph.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


class DistanceOracle:
    """Exact path-metric queries on a :class:`Graph`.

    ``mode="table"`` computes all pairs up front; ``mode="bfs"`` runs one
    breadth-first search per queried source and memoizes the row. Memoized rows
    are written once and never mutated, so concurrent readers are safe.
    """

    def __init__(self, graph: Graph, mode: str = "table") -> None:
        if mode not in ("table", "bfs"):
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.graph = graph
        self.mode = mode
        self._rows: dict[int, list[int]] = {}
        if mode == "table":
            for u in range(graph.vertex_count):
                self._rows[u] = bfs_distances(graph, u)

    def row(self, u: int) -> list[int]:
        r = self._rows.get(u)
        if r is None:
            r = bfs_distances(self.graph, u)
            self._rows[u] = r
        return r

    def table(self) -> list[list[int]]:
        return [self.row(u) for u in range(self.graph.vertex_count)]

    def distance(self, u: int | str, v: int | str) -> int:
        u = self.graph.vertex(u)
        v = self.graph.vertex(v)
        return self.row(v)[u]

    def geodesic(self, u: int | str, v: int | str) -> list[int]:
        """Shortest path from u to v, taking the least-index neighbor at each step."""
        u = self.graph.vertex(u)
        v = self.graph.vertex(v)
        to_v = self.row(v)
        path = [u]
        cur = u
        while cur != v:
            want = to_v[cur] - 1
            cur = next(w for w in self.graph.adjacency[cur] if to_v[w] == want)
            path.append(cur)
        return path

    def path_of_prescribed_length(self, u: int | str, v: int | str, m: int) -> list[int] | None:
        """Walk from u to v with exactly ``m`` steps, or ``None`` if none exists.

        Built as the deterministic geodesic (or, when ``m - d(u, v)`` is odd, the
        shortest walk of the right parity) padded by back-and-forth moves on the
        terminal edge.
        """
        u = self.graph.vertex(u)
        v = self.graph.vertex(v)
        d = self.distance(u, v)
        if m < d:
            return None
        if (m - d) % 2 == 0:
            walk = self.geodesic(u, v)
        else:
            walk = self._parity_walk(u, v, m % 2)
            if walk is None or len(walk) - 1 > m:
                return None
        if len(walk) - 1 < m:
            if not self.graph.adjacency[v]:
                return None
            prev = walk[-2] if len(walk) > 1 else self.graph.adjacency[v][0]
            while len(walk) - 1 < m:
                walk.extend((prev, v))
        return walk

    def _parity_walk(self, u: int, v: int, parity: int) -> list[int] | None:
        """Shortest walk u -> v whose length has the given parity (lex-least steps)."""
        n = self.graph.vertex_count
        adj = self.graph.adjacency
        # dist[w][p]: shortest walk w -> v with length parity p
        dist = [[-1, -1] for _ in range(n)]
        dist[v][0] = 0
        queue = deque([(v, 0)])
        while queue:
            x, p = queue.popleft()
            for w in adj[x]:
                if dist[w][1 - p] < 0:
                    dist[w][1 - p] = dist[x][p] + 1
                    queue.append((w, 1 - p))
        if dist[u][parity] < 0:
            return None
        walk = [u]
        cur, p = u, parity
        while (cur, p) != (v, 0):
            want = dist[cur][p] - 1
            cur = next(w for w in adj[cur] if dist[w][1 - p] == want)
            p = 1 - p
            walk.append(cur)
        return walk


@dataclass(frozen=True)
class DiscreteCircle:
    """Closed walk ``v_0, ..., v_{n-1}`` (step ``v_{n-1} -> v_0`` implied).

    Repeated vertices are allowed; length is the number of steps.
    """

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(x) for x in self.vertices))
        if len(self.vertices) < 2:
            raise ValueError("a discrete circle needs at least 2 steps")

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i % len(self.vertices)]

    def check(self, graph: Graph) -> "DiscreteCircle":
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if not (0 <= a < graph.vertex_count):
                raise GraphError(f"invalid vertex id {a}")
            if not graph.has_edge(a, b):
                raise GraphError(f"step {i}: {graph.labels[a]} -> {graph.labels[b]} is not an edge")
        return self

    def rotated(self, k: int) -> "DiscreteCircle":
        k %= len(self.vertices)
        return DiscreteCircle(self.vertices[k:] + self.vertices[:k])

    def reflected(self) -> "DiscreteCircle":
        v = self.vertices
        return DiscreteCircle((v[0],) + tuple(reversed(v[1:])))

    def canonical(self) -> "DiscreteCircle":
        """Lexicographically least rotation/reflection."""
        return DiscreteCircle(canonical_cyclic(self.vertices))


def canonical_cyclic(seq: Sequence[int]) -> tuple[int, ...]:
    n = len(seq)
    seq = tuple(seq)
    rev = (seq[0],) + tuple(reversed(seq[1:]))
    best = seq
    for s in (seq, rev):
        for k in range(n):
            cand = s[k:] + s[:k]
            if cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class ScaledNGonMetric:
    """Vertex set of the n-cycle with the path metric scaled by ``lam``."""

    n: int
    lam: Fraction

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("n-gon needs n >= 3")
        lam = Fraction(self.lam)
        if lam <= 0:
            raise ValueError("lambda must be positive")
        object.__setattr__(self, "lam", lam)

    def index_distance(self, i: int, j: int) -> int:
        k = abs(i - j) % self.n
        return min(k, self.n - k)

    def distance(self, i: int, j: int) -> Fraction:
        return self.lam * self.index_distance(i, j)


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse whitespace-separated ``u v`` lines ('#' starts a comment).

    Integer ids are renumbered in increasing order; other labels in order of
    first appearance. The original names are kept as vertex labels.
    """
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        pairs.append((parts[0], parts[1]))
    if not pairs:
        raise GraphError("edge list is empty")
    tokens: list[str] = []
    for a, b in pairs:
        for t in (a, b):
            if t not in tokens:
                tokens.append(t)
    if all(t.isdigit() for t in tokens):
        tokens.sort(key=int)
        tokens = [str(int(t)) for t in tokens]
        pairs = [(str(int(a)), str(int(b))) for a, b in pairs]
    index = {t: i for i, t in enumerate(tokens)}
    if len(index) != len(tokens):
        raise GraphError("duplicate vertex ids after normalization")
    edges = [(index[a], index[b]) for a, b in pairs]
    return Graph(len(tokens), tuple(edges), tuple(tokens), name=name or "edgelist")


def load_graph(source: str) -> Graph:
    """Load a graph from edge-list text, a path to an edge-list file, or a generator spec."""
    from . import generators

    if "\n" not in source and generators.looks_like_spec(source):
        return generators.generate(source)
    if "\n" not in source and not source.strip().replace(" ", "").isdigit():
        import os

        if os.path.exists(source):
            with open(source) as fh:
                return parse_edge_list(fh.read(), name=os.path.basename(source))
        if ":" in source:
            raise GraphError(f"unknown graph spec {source!r}; families: {', '.join(generators.FAMILIES)}")
    return parse_edge_list(source)


def walk_is_closed(graph: Graph, walk: Iterable[int]) -> bool:
    w = list(walk)
    return all(graph.has_edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))
