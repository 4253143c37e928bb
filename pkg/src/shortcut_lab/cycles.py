"""Antipodal ratios of closed walks and search for long almost-isometric cycles.

A circle of ``n`` steps is analysed at half-step resolution. Doubled position
``2i`` is the vertex ``v_i``; doubled position ``2i + 1`` is the midpoint of the
edge ``v_i v_{i+1}``. Distances between such points in the geometric
realization of the graph are measured in half-units, so every quantity stays
an integer until the final ratio.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graphs import DiscreteCircle, DistanceOracle, Graph, canonical_cyclic

INF = math.inf

HalfPoint = tuple[int, int]  # (a, a) is a vertex, (a, b) with a < b an edge midpoint


def half_point(circle: DiscreteCircle, pos: int) -> HalfPoint:
    """Point of the graph at doubled position ``pos`` (taken mod 2n)."""
    n = len(circle)
    pos %= 2 * n
    i = pos // 2
    a = circle.vertices[i]
    if pos % 2 == 0:
        return (a, a)
    b = circle.vertices[(i + 1) % n]
    return (a, b) if a < b else (b, a)


def half_distance(oracle: DistanceOracle, p: HalfPoint, q: HalfPoint) -> int:
    """Distance in half-units between two vertices/midpoints of the geometric realization."""
    if p == q:
        return 0
    a, b = p
    c, d = q
    row = oracle.row
    if a == b and c == d:
        return 2 * row(a)[c]
    if a == b:
        r = row(a)
        return 2 * min(r[c], r[d]) + 1
    if c == d:
        r = row(c)
        return 2 * min(r[a], r[b]) + 1
    ra, rb = row(a), row(b)
    return 2 * min(ra[c], ra[d], rb[c], rb[d]) + 2


def circle_half_distance(n: int, p: int, q: int) -> int:
    """Distance along the circle between doubled positions, in half-units."""
    k = (p - q) % (2 * n)
    return min(k, 2 * n - k)


def measured_positions(n: int, points: str) -> list[int]:
    """Doubled positions P in 0..n-1 whose antipodal pair (P, P + n) is measured."""
    if points == "all":
        return list(range(n))
    if points == "anchored":
        return [p for p in range(n) if p % 2 == 0 or (p + n) % 2 == 0]
    raise ValueError(f"unknown point set {points!r}")


@dataclass(frozen=True)
class AlmostIsometryReport:
    """How far a closed walk is from being almost isometric.

    ``k_value`` is ``(n/2) / min_distance`` over the measured antipodal pairs,
    or ``math.inf`` if one of them collapses. ``worst_pair`` holds the two
    circle positions (multiples of 1/2) of the first minimizing pair.
    ``midpoint_slack`` bounds, in graph units, how far the anchored minimum can
    sit above the minimum over all antipodal pairs of the continuous circle.
    """

    circle: DiscreteCircle
    k_value: Fraction | float
    worst_pair: tuple[Fraction, Fraction]
    min_distance: Fraction
    points: str = "anchored"
    midpoint_slack: int = 1
    certified_exact: bool = True

    @property
    def length(self) -> int:
        return len(self.circle)

    @property
    def is_degenerate(self) -> bool:
        return self.k_value == INF

    def is_almost_isometric(self, K: Fraction) -> bool:
        return self.k_value != INF and self.k_value <= K


def antipodal_ratio(
    circle: DiscreteCircle | Sequence[int],
    oracle: DistanceOracle,
    points: str = "anchored",
) -> AlmostIsometryReport:
    """Measure the antipodal ratio of a closed walk.

    ``points="anchored"`` measures the antipodal pairs in which at least one
    point is a vertex of the walk: the ``n/2`` vertex pairs for even ``n`` and
    all ``n`` vertex-midpoint pairs for odd ``n``. ``points="all"`` adds the
    midpoint pairs of even walks, which gives the exact continuous value.
    """
    if not isinstance(circle, DiscreteCircle):
        circle = DiscreteCircle(tuple(circle))
    circle.check(oracle.graph)
    n = len(circle)
    best = None
    best_pos = 0
    for p in measured_positions(n, points):
        dist = half_distance(oracle, half_point(circle, p), half_point(circle, p + n))
        if best is None or dist < best:
            best, best_pos = dist, p
            if dist == 0:
                break
    k = INF if best == 0 else Fraction(n, best)
    pair = (Fraction(best_pos, 2), Fraction(best_pos + n, 2))
    return AlmostIsometryReport(circle, k, pair, Fraction(best, 2), points)


def global_to_local_violations(
    circle: DiscreteCircle,
    oracle: DistanceOracle,
    K: Fraction | float,
    points: str = "anchored",
) -> list[tuple[int, int, int, Fraction]]:
    """Pairs breaking ``d(a(p), a(q)) >= d_S(p, q) - ((K-1)/K) |S|/2``.

    Checked over doubled positions, so values are in half-units. When only
    anchored pairs were measured for an even walk, antipodal midpoint pairs
    carry no guarantee and are skipped. Returns ``(P, Q, image, bound)`` tuples.
    """
    if K == INF:
        return []
    K = Fraction(K)
    n = len(circle)
    slack = (K - 1) / K * n
    pts = [half_point(circle, p) for p in range(2 * n)]
    bad = []
    for p in range(2 * n):
        for q in range(p + 1, 2 * n):
            ds = circle_half_distance(n, p, q)
            if points == "anchored" and n % 2 == 0 and ds == n and p % 2 == 1:
                continue
            bound = ds - slack
            if bound <= 0:
                continue
            img = half_distance(oracle, pts[p], pts[q])
            if img < bound:
                bad.append((p, q, img, bound))
    return bad


# --------------------------------------------------------------------------
# exact search


@dataclass(frozen=True)
class SearchConfig:
    """Options for :func:`search_max_almost_isometric_cycle`.

    ``mode`` is ``"exact"`` or ``"beam"``. ``prune`` toggles the
    global-to-local distance bound (turning it off only costs time).
    """

    mode: str = "exact"
    width: int = 32
    prune: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "beam"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.width < 1:
            raise ValueError("beam width must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")


def _min_image_table(n: int, target: int, prune: bool) -> list[int]:
    """Least admissible image distance for each circle distance ds (full units).

    ``target`` is the required antipodal image distance in half-units; the
    walk then has ratio ``K = n / target`` and the bound reads
    ``d >= ds - (n - target) / 2``.
    """
    if not prune:
        return [0] * (n // 2 + 1)
    return [max(0, -((n - target - 2 * ds) // 2)) for ds in range(n // 2 + 1)]


def _antipodes_ok(walk: Sequence[int], oracle: DistanceOracle, target: int) -> bool:
    circle = DiscreteCircle(tuple(walk))
    n = len(walk)
    for p in measured_positions(n, "anchored"):
        if half_distance(oracle, half_point(circle, p), half_point(circle, p + n)) < target:
            return False
    return True


def _search_subtree(
    graph: Graph,
    oracle: DistanceOracle,
    n: int,
    target: int,
    v0: int,
    prune: bool,
) -> tuple[int, ...] | None:
    """Lex-least canonical closed walk of length n starting at its least vertex v0."""
    adj = graph.adjacency
    mind = _min_image_table(n, target, prune)
    row0 = oracle.row(v0)
    walk = [v0]
    # one iterator of candidate neighbors per depth
    stack = [iter(adj[v0])]
    while stack:
        depth = len(walk)
        nxt = None
        for w in stack[-1]:
            if w < v0 or row0[w] > n - depth:
                continue
            if depth == n - 1 and not graph.has_edge(w, v0):
                continue
            rw = oracle.row(w)
            for i in range(depth):
                ds = min(depth - i, n - depth + i)
                if rw[walk[i]] < mind[ds]:
                    break
            else:
                nxt = w
                break
        if nxt is None:
            stack.pop()
            walk.pop()
            continue
        walk.append(nxt)
        if len(walk) < n:
            stack.append(iter(adj[nxt]))
            continue
        tup = tuple(walk)
        walk.pop()
        if canonical_cyclic(tup) == tup and _antipodes_ok(tup, oracle, target):
            return tup
    return None


def _subtree_job(args):
    graph, n, target, v0, prune = args
    return _search_subtree(graph, DistanceOracle(graph, "bfs"), n, target, v0, prune)


def _exists_walk(
    graph: Graph,
    oracle: DistanceOracle,
    n: int,
    target: int,
    cfg: SearchConfig,
) -> tuple[int, ...] | None:
    starts = [v for v in range(graph.vertex_count) if graph.adjacency[v]]
    if cfg.workers > 1 and len(starts) > 1:
        jobs = [(graph, n, target, v0, cfg.prune) for v0 in starts]
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for res in pool.map(_subtree_job, jobs):
                # results arrive in v0 order, and smaller v0 means lex-smaller walk
                if res is not None:
                    return res
        return None
    for v0 in starts:
        res = _search_subtree(graph, oracle, n, target, v0, cfg.prune)
        if res is not None:
            return res
    return None


def _beam_walk(
    graph: Graph,
    oracle: DistanceOracle,
    n: int,
    target: int,
    width: int,
) -> tuple[int, ...] | None:
    """Beam version of the subtree search; keeps the `width` walks with largest margin."""
    mind = _min_image_table(n, target, True)
    adj = graph.adjacency
    beam: list[tuple[int, tuple[int, ...]]] = [(0, (v,)) for v in range(graph.vertex_count)]
    for depth in range(1, n):
        cand = []
        for _, walk in beam:
            v0 = walk[0]
            for w in adj[walk[-1]]:
                if w < v0 or oracle.row(v0)[w] > n - depth:
                    continue
                if depth == n - 1 and not graph.has_edge(w, v0):
                    continue
                rw = oracle.row(w)
                margin = None
                for i in range(depth):
                    ds = min(depth - i, n - depth + i)
                    m = rw[walk[i]] - mind[ds]
                    if m < 0:
                        margin = None
                        break
                    margin = m if margin is None else min(margin, m)
                if margin is None:
                    continue
                cand.append((-margin, walk + (w,)))
        cand.sort()
        beam = cand[:width]
        if not beam:
            return None
    done = sorted(
        w for _, w in beam
        if canonical_cyclic(w) == w and _antipodes_ok(w, oracle, target)
    )
    return done[0] if done else None


def search_max_almost_isometric_cycle(
    graph: Graph,
    oracle: DistanceOracle,
    K: Fraction,
    length_cap: int,
    config: SearchConfig | None = None,
) -> AlmostIsometryReport | None:
    """Longest closed walk (length <= cap) whose anchored antipodal ratio is at most K.

    Among walks of the maximal length the smallest ratio wins, then the
    lexicographically least canonical form. Exact mode is exhaustive and
    exponential in the cap; beam mode returns a lower-bound witness with
    ``certified_exact=False``.
    """
    cfg = config or SearchConfig()
    K = Fraction(K)
    if K <= 1:
        raise ValueError("K must exceed 1")
    if length_cap < 2:
        raise ValueError("length cap must be at least 2")
    bipartite = graph.is_bipartite()
    for n in range(length_cap, 1, -1):
        if bipartite and n % 2:
            continue
        # walks with ratio n/target <= K; try the smallest ratio first
        lowest = -((-n * K.denominator) // K.numerator)  # ceil(n / K)
        for target in range(n, max(lowest, 1) - 1, -1):
            if cfg.mode == "exact":
                walk = _exists_walk(graph, oracle, n, target, cfg)
            else:
                walk = _beam_walk(graph, oracle, n, target, cfg.width)
            if walk is not None:
                rep = antipodal_ratio(walk, oracle)
                return AlmostIsometryReport(
                    rep.circle, rep.k_value, rep.worst_pair, rep.min_distance,
                    certified_exact=cfg.mode == "exact",
                )
    return None


@dataclass(frozen=True)
class ProfileRow:
    K: Fraction
    length_cap: int
    best_length_found: int
    certified_exact: bool
    witness: tuple[int, ...] = ()
    k_value: Fraction | float | None = None


@dataclass(frozen=True)
class ShortcutProfile:
    graph_id: str
    rows: tuple[ProfileRow, ...] = field(default_factory=tuple)


def shortcut_profile(
    graph: Graph,
    oracle: DistanceOracle,
    K_grid: Sequence[Fraction],
    length_cap: int,
    config: SearchConfig | None = None,
) -> ShortcutProfile:
    """One search per K; a row with length 0 means no almost-isometric cycle exists."""
    cfg = config or SearchConfig()
    rows = []
    for K in K_grid:
        rep = search_max_almost_isometric_cycle(graph, oracle, Fraction(K), length_cap, cfg)
        if rep is None:
            rows.append(ProfileRow(Fraction(K), length_cap, 0, cfg.mode == "exact"))
        else:
            rows.append(ProfileRow(Fraction(K), length_cap, rep.length, rep.certified_exact,
                                   rep.circle.vertices, rep.k_value))
    return ShortcutProfile(graph.name, tuple(rows))
