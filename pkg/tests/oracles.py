"""Independent reference implementations used to freeze expected values.

Nothing here imports the search, metric or tightening code of the package.
Distances come from networkx on an explicitly subdivided graph, searches are
plain exhaustive enumeration, and closed-form constants are re-transcribed
in sympy.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import sympy as sp


def nx_graph(vertex_count: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(vertex_count))
    g.add_edges_from(edges)
    return g


class Subdivided:
    """Vertices and edge midpoints as nodes of a networkx graph with unit half-steps."""

    def __init__(self, g: nx.Graph):
        self.g = g
        h = nx.Graph()
        for v in g.nodes:
            h.add_node(("v", v))
        for a, b in g.edges:
            m = ("m", frozenset((a, b)))
            h.add_edge(("v", a), m)
            h.add_edge(m, ("v", b))
        self.h = h
        self.dist = dict(nx.all_pairs_shortest_path_length(h))

    def point(self, walk, pos):
        """Node at doubled position pos of a closed walk."""
        n = len(walk)
        pos %= 2 * n
        if pos % 2 == 0:
            return ("v", walk[pos // 2])
        i = pos // 2
        return ("m", frozenset((walk[i], walk[(i + 1) % n])))

    def d(self, x, y) -> int:
        return self.dist[x][y]


def antipodal_ratio_anchored(sub: Subdivided, walk) -> Fraction | float:
    """(n/2) over the least distance of an antipodal pair containing a walk vertex."""
    n = len(walk)
    best = None
    for p in range(2 * n):
        q = p + n
        if p % 2 and q % 2:
            continue
        dd = sub.d(sub.point(walk, p), sub.point(walk, q))
        best = dd if best is None else min(best, dd)
    return float("inf") if best == 0 else Fraction(n, best)


def antipodal_ratio_all(sub: Subdivided, walk) -> Fraction | float:
    n = len(walk)
    best = min(sub.d(sub.point(walk, p), sub.point(walk, p + n)) for p in range(2 * n))
    return float("inf") if best == 0 else Fraction(n, best)


def canonical(walk) -> tuple:
    n = len(walk)
    forms = []
    for seq in (list(walk), list(reversed(walk))):
        for k in range(n):
            forms.append(tuple(seq[k:] + seq[:k]))
    return min(forms)


def closed_walks(g: nx.Graph, n: int):
    """Every closed walk of n steps whose least vertex comes first (one rotation per class at least)."""
    adj = {v: sorted(g.neighbors(v)) for v in g.nodes}
    for v0 in sorted(g.nodes):
        stack = [(v0, [v0])]
        while stack:
            v, w = stack.pop()
            if len(w) == n:
                if v0 in adj[v]:
                    yield tuple(w)
                continue
            for u in adj[v]:
                if u >= v0:
                    stack.append((u, w + [u]))


def brute_force_cycle_search(g: nx.Graph, K: Fraction, cap: int):
    """(length, ratio, canonical witness) of the best walk, or None.

    Best means longest, then smallest anchored ratio, then lexicographically
    least canonical form.
    """
    sub = Subdivided(g)
    for n in range(cap, 1, -1):
        best = None
        for w in closed_walks(g, n):
            k = antipodal_ratio_anchored(sub, w)
            if k == float("inf") or k > K:
                continue
            key = (k, canonical(w))
            if best is None or key < best:
                best = key
        if best is not None:
            return n, best[0], best[1]
    return None


def index_distance(n, i, j):
    k = abs(i - j) % n
    return min(k, n - k)


def distortion(dist, pts, lam) -> Fraction | float:
    n = len(pts)
    worst = Fraction(1)
    for i, j in itertools.combinations(range(n), 2):
        d = dist[pts[i]][pts[j]]
        if d == 0:
            return float("inf")
        t = lam * index_distance(n, i, j)
        worst = max(worst, Fraction(d) / t, t / d)
    return worst


def brute_force_ngon(g: nx.Graph, n: int, K: Fraction):
    """(lambda, canonical tuple, distortion) with the largest admissible lambda, or None.

    Lambda ranges over d/j for graph distances d > 0 and 1 <= j <= n/2. Each
    tuple of distinct vertices admits exactly the lambdas in the interval
    [max d/(K c), min K d/c] over its pairs (c the n-gon index distance).
    """
    dist = dict(nx.all_pairs_shortest_path_length(g))
    ds = {x for row in dist.values() for x in row.values() if x > 0}
    lams = sorted({Fraction(d, j) for d in ds for j in range(1, n // 2 + 1)}, reverse=True)
    intervals = []
    for t in itertools.permutations(sorted(g.nodes), n):
        lo, hi = Fraction(0), None
        for i, j in itertools.combinations(range(n), 2):
            c = index_distance(n, i, j)
            d = dist[t[i]][t[j]]
            lo = max(lo, Fraction(d) / (K * c))
            up = K * Fraction(d, c)
            hi = up if hi is None else min(hi, up)
        if lo <= hi:
            intervals.append((lo, hi, t))
    for lam in lams:
        hits = [canonical(t) for lo, hi, t in intervals if lo <= lam <= hi]
        if hits:
            best = min(hits)
            return lam, best, distortion(dist, best, lam)
    return None


def qi_violations_nx(g: nx.Graph, nodes, L: Fraction, C: Fraction) -> int:
    """Count pairs of a subdivided circle (node list, half-unit steps) breaking the (L, C) bounds."""
    sub = Subdivided(g)
    N = len(nodes)
    bad = 0
    for a in range(N):
        for b in range(a + 1, N):
            k = b - a
            ds = Fraction(min(k, N - k), 2)
            dx = Fraction(sub.d(nodes[a], nodes[b]), 2)
            if dx < ds / L - C or dx > L * ds + C:
                bad += 1
    return bad


# closed forms, transcribed symbolically
_N, _L = sp.symbols("N L", positive=True)
K_GREEDY = _N * _L * (3 * _L - 2) / ((3 * _N - 2) * _L**2 - (2 * _N - 4) * _L - 2)
K_DISJOINT = _L * (9 * _L**2 - 3 * _L - 4) / (7 * _L**3 + 3 * _L**2 - 10 * _L + 2)


def sympy_k_max(N, L) -> Fraction:
    subs = {_N: sp.Rational(str(N)), _L: sp.Rational(str(L))}
    val = sp.Min(K_GREEDY.subs(subs), K_DISJOINT.subs(subs))
    return Fraction(int(val.p), int(val.q))


def sympy_k_greedy(N, L) -> Fraction:
    v = K_GREEDY.subs({_N: sp.Rational(str(N)), _L: sp.Rational(str(L))})
    return Fraction(int(v.p), int(v.q))


def sympy_k_disjoint(L) -> Fraction:
    v = K_DISJOINT.subs({_L: sp.Rational(str(L))})
    return Fraction(int(v.p), int(v.q))


def sympy_m(N, L, R, K) -> Fraction | float:
    """Largest of the five circle-length thresholds B / (T - A), or inf if some room is non-positive."""
    N, L, R, K = (sp.Rational(str(x)) for x in (N, L, R, K))
    s = (K - 1) / K
    d2 = 2 * (L - 1) ** 2
    terms = [
        (6 * L * R / (L - 1), 1 / N - s * L * (3 * L - 2) / d2),
        (6 * L * R / (L - 1), 1 - s * L * (5 * L - 4) / d2),
        (3 * L * R / (L - 1), sp.Rational(1, 2) - s * L * (7 * L - 6) / (2 * d2)),
        (6 * R * (L + 1) / (L - 1), (L - 1) / L - s * (9 * L**2 - 3 * L - 4) / d2),
        (6 * L * R / (L - 1), 1 - s * L * (7 * L - 6) / d2),
    ]
    if R == 0:
        return Fraction(0)
    if any(room <= 0 for _, room in terms):
        return float("inf")
    best = max(b / room for b, room in terms)
    return Fraction(int(best.p), int(best.q))


def replay_greedy(g: nx.Graph, circles, node_of, L: Fraction, C: Fraction, R: int = 0) -> list[str]:
    """Re-derive every greedy step of a tightening run from the circles alone.

    ``circles`` are successive entry lists at half-step resolution and
    ``node_of`` maps an entry to its node in the subdivided graph. Each step
    must cut a violating pair at maximal circle distance (least pair on ties),
    keep the rest of the circle, and splice in a path of minimal length. The
    final circle must have no violating pair. With R = 1 every vertex is held
    for two half-steps and a splice carries a constant end of length R at
    each side, so consecutive entries may sit two half-units apart.
    """
    sub = Subdivided(g)
    problems = []
    two_cl = 2 * C * L

    def choose(ent):
        N = len(ent)
        best = None
        for a in range(N):
            for b in range(a + 1, N):
                ds = min(b - a, N - (b - a))
                dx = sub.d(node_of(ent[a]), node_of(ent[b]))
                if L * dx < ds - two_cl and (best is None or ds > best[0]):
                    best = (ds, a, b)
        return best

    for i in range(len(circles) - 1):
        old, new = list(circles[i]), list(circles[i + 1])
        pick = choose(old)
        if pick is None:
            problems.append(f"step {i}: no violating pair, yet the run continued")
            continue
        ds, a, b = pick
        N = len(old)
        dx = sub.d(node_of(old[a]), node_of(old[b]))
        forward = b - a <= N - (b - a)
        removed = b - a if forward else N - (b - a)
        want = N - removed + dx + 4 * R
        if len(new) != want:
            problems.append(f"step {i}: length {len(new)} != {want}")
        for k in range(len(new)):
            if sub.d(node_of(new[k]), node_of(new[(k + 1) % len(new)])) > 1 + R:
                problems.append(f"step {i}: entries {k} and {k + 1} are not adjacent")
                break
        if forward:
            intact = new[:a + 1] == old[:a + 1] and new[len(new) - (N - b):] == old[b:]
        else:
            intact = _contains_cyclic(new, old[a:b + 1])
        if not intact:
            problems.append(f"step {i}: the arc outside the surgery changed")
    if choose(list(circles[-1])) is not None:
        problems.append("final circle still has a violating pair")
    return problems


def _contains_cyclic(seq, part) -> bool:
    n, m = len(seq), len(part)
    # m may exceed n by one when the kept arc closes on itself
    if m > n + 1:
        return False
    doubled = list(seq) + list(seq)
    return any(doubled[k:k + m] == list(part) for k in range(n))
