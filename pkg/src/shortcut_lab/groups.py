"""Finitely generated groups with exact element encodings, and Cayley-graph balls."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable

from .graphs import Graph

Element = Hashable


@dataclass(frozen=True)
class Group:
    """Multiplication oracle plus a symmetric generating set used for the Cayley graph."""

    name: str
    identity: Element
    mul: Callable[[Element, Element], Element]
    inv: Callable[[Element], Element]
    generators: tuple[Element, ...]

    def fmt(self, g: Element) -> str:
        if isinstance(g, tuple) and self.name.startswith("F2"):
            return "".join({1: "a", -1: "A", 2: "b", -2: "B"}[x] for x in g) or "e"
        if isinstance(g, tuple) and len(g) == 1:
            return str(g[0])
        return str(g).replace(" ", "")


def _vec_add(g, h):
    return tuple(a + b for a, b in zip(g, h))


def _vec_neg(g):
    return tuple(-a for a in g)


def integers() -> Group:
    return Group("Z", (0,), _vec_add, _vec_neg, ((1,), (-1,)))


def z2_standard() -> Group:
    return Group("Z2-std", (0, 0), _vec_add, _vec_neg, ((1, 0), (-1, 0), (0, 1), (0, -1)))


def z2_diagonal() -> Group:
    """Z^2 with generators (1,0), (0,1), (1,1) and inverses (triangular lattice)."""
    gens = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))
    return Group("Z2-diag", (0, 0), _vec_add, _vec_neg, gens)


def _h3_mul(g, h):
    a, b, c = g
    x, y, z = h
    return (a + x, b + y, c + z + a * y)


def _h3_inv(g):
    a, b, c = g
    return (-a, -b, -c + a * b)


def heisenberg() -> Group:
    """Integer Heisenberg group; (a,b,c) stands for the matrix [[1,a,c],[0,1,b],[0,0,1]]."""
    gens = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0))
    return Group("H3", (0, 0, 0), _h3_mul, _h3_inv, gens)


def _free_mul(g, h):
    g = list(g)
    i = 0
    while g and i < len(h) and g[-1] == -h[i]:
        g.pop()
        i += 1
    return tuple(g) + tuple(h[i:])


def _free_inv(g):
    return tuple(-x for x in reversed(g))


def free_group() -> Group:
    """Free group on a=1, b=2 as reduced words (negative letters are inverses)."""
    return Group("F2", (), _free_mul, _free_inv, ((1,), (-1,), (2,), (-2,)))


GROUPS = {
    "Z": integers,
    "Z2": z2_standard,
    "Z2-std": z2_standard,
    "Z2-diag": z2_diagonal,
    "H3": heisenberg,
    "F2": free_group,
}


MAX_BALL_VERTICES = 500_000


def cayley_ball(group: Group, radius: int, max_vertices: int = MAX_BALL_VERTICES) -> tuple[Graph, list[Element]]:
    """Ball of the given radius about the identity in the Cayley graph.

    Returns the induced graph (vertex 0 is the identity, then BFS order) and the
    element at each vertex. Distances from vertex 0 are exact word lengths.
    Raises ValueError once the ball would exceed ``max_vertices``.
    """
    elements = [group.identity]
    index = {group.identity: 0}
    depth = [0]
    queue = deque([0])
    edges = set()
    while queue:
        i = queue.popleft()
        g = elements[i]
        for s in group.generators:
            h = group.mul(g, s)
            j = index.get(h)
            if j is None:
                if depth[i] == radius:
                    continue
                j = len(elements)
                if j >= max_vertices:
                    raise ValueError(f"{group.name} ball of radius {radius} exceeds {max_vertices} vertices")
                index[h] = j
                elements.append(h)
                depth.append(depth[i] + 1)
                queue.append(j)
            if i != j:
                edges.add((min(i, j), max(i, j)))
    labels = tuple(group.fmt(g) for g in elements)
    graph = Graph(len(elements), tuple(sorted(edges)), labels, name=f"cayley:{group.name}:{radius}")
    return graph, elements
