"""Built-in graph families, addressed by short spec strings such as ``cycle:8``.

Supported specs::

    cycle:n           n-cycle C_n (n >= 3)
    path:n            path on n vertices
    grid:AxB          A-by-B vertex lattice, vertex (x, y) with 0 <= x < A, 0 <= y < B
    tree:b:d          complete b-ary tree of depth d
    hypercube:d       d-dimensional cube graph
    theta:a:b:c       two poles joined by internally disjoint paths of lengths a, b, c
    complete:n        complete graph K_n
    petersen          the Petersen graph
    cayley:G:r        radius-r ball in a Cayley graph, G in Z, Z2, Z2-diag, H3, F2
"""

from __future__ import annotations

import itertools

from .graphs import Graph, GraphError

FAMILIES = ("cycle", "path", "grid", "tree", "hypercube", "theta", "complete", "petersen", "cayley")


def looks_like_spec(source: str) -> bool:
    head = source.strip().split(":", 1)[0]
    return head in FAMILIES


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphError(f"bad {what} {tok!r}") from None


def generate(spec: str) -> Graph:
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "cycle":
            return cycle(_int(args[0], "cycle length"))
        if kind == "path":
            return path(_int(args[0], "path size"))
        if kind == "grid":
            a, _, b = args[0].lower().partition("x")
            return grid(_int(a, "grid width"), _int(b or a, "grid height"))
        if kind == "tree":
            return tree(_int(args[0], "branching"), _int(args[1], "depth"))
        if kind == "hypercube":
            return hypercube(_int(args[0], "dimension"))
        if kind == "theta":
            return theta(*(_int(x, "theta arm") for x in args[:3]))
        if kind == "complete":
            return complete(_int(args[0], "size"))
        if kind == "petersen":
            return petersen()
        if kind == "cayley":
            from .groups import GROUPS, cayley_ball

            if args[0] not in GROUPS:
                raise GraphError(f"unknown group {args[0]!r}")
            graph, _ = cayley_ball(GROUPS[args[0]](), _int(args[1], "radius"))
            return graph
    except IndexError:
        raise GraphError(f"generator spec {spec!r} is missing arguments") from None
    raise GraphError(f"unknown generator spec {spec!r}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), name=f"cycle:{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"path:{n}")


def grid_index(x: int, y: int, height: int) -> int:
    return x * height + y


def grid(width: int, height: int) -> Graph:
    """Vertex (x, y) has index ``x * height + y`` so index order is lexicographic."""
    if width < 1 or height < 1:
        raise GraphError("grid dimensions must be positive")
    edges = []
    for x in range(width):
        for y in range(height):
            i = grid_index(x, y, height)
            if x + 1 < width:
                edges.append((i, grid_index(x + 1, y, height)))
            if y + 1 < height:
                edges.append((i, grid_index(x, y + 1, height)))
    labels = tuple(f"({x},{y})" for x in range(width) for y in range(height))
    return Graph(width * height, tuple(edges), labels, name=f"grid:{width}x{height}")


def grid_boundary(width: int, height: int) -> list[int]:
    """Boundary walk of a grid with at least two rows and columns, from (0,0) counterclockwise."""
    if width < 2 or height < 2:
        raise GraphError("boundary walk needs a grid of at least 2x2 vertices")
    pts = [(x, 0) for x in range(width)]
    pts += [(width - 1, y) for y in range(1, height)]
    pts += [(x, height - 1) for x in range(width - 2, -1, -1)]
    pts += [(0, y) for y in range(height - 2, 0, -1)]
    return [grid_index(x, y, height) for x, y in pts]


def tree(branching: int, depth: int) -> Graph:
    if branching < 1 or depth < 0:
        raise GraphError("tree needs branching >= 1 and depth >= 0")
    edges = []
    level = [0]
    count = 1
    for _ in range(depth):
        nxt = []
        for p in level:
            for _ in range(branching):
                edges.append((p, count))
                nxt.append(count)
                count += 1
        level = nxt
    return Graph(count, tuple(edges), name=f"tree:{branching}:{depth}")


def hypercube(d: int) -> Graph:
    if d < 1:
        raise GraphError("hypercube needs d >= 1")
    n = 1 << d
    edges = [(i, i ^ (1 << k)) for i in range(n) for k in range(d) if i < i ^ (1 << k)]
    labels = tuple(format(i, f"0{d}b") for i in range(n))
    return Graph(n, tuple(edges), labels, name=f"hypercube:{d}")


def theta(a: int, b: int, c: int) -> Graph:
    """Poles 0 and 1 joined by three paths; interior vertices numbered arm by arm."""
    if min(a, b, c) < 1:
        raise GraphError("theta arms must have length >= 1")
    if sorted((a, b, c))[1] < 2:
        raise GraphError("theta graph with two unit arms has a parallel edge")
    edges = []
    nxt = 2
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(nxt, tuple(edges), name=f"theta:{a}:{b}:{c}")


def theta_circuits(a: int, b: int, c: int) -> list[list[int]]:
    """The three embedded cycles of ``theta(a, b, c)``, each starting at pole 0."""
    arms = []
    nxt = 2
    for length in (a, b, c):
        arm = [0] + list(range(nxt, nxt + length - 1)) + [1]
        nxt += length - 1
        arms.append(arm)
    out = []
    for i, j in itertools.combinations(range(3), 2):
        out.append(arms[i] + list(reversed(arms[j]))[1:-1])
    return out


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, tuple(itertools.combinations(range(n), 2)), name=f"complete:{n}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner), name="petersen")
