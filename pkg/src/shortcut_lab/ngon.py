"""Bilipschitz copies of scaled n-gons, and conversions between n-gons and cycles."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cycles import INF, AlmostIsometryReport, antipodal_ratio
from .graphs import DiscreteCircle, DistanceOracle, Graph, ScaledNGonMetric


@dataclass(frozen=True)
class NGonEmbedding:
    vertices: tuple[int, ...]
    n: int
    lam: Fraction
    k_achieved: Fraction | float

    @property
    def metric(self) -> ScaledNGonMetric:
        return ScaledNGonMetric(self.n, self.lam)


def _cycle_index_distance(n: int, i: int, j: int) -> int:
    k = abs(i - j) % n
    return min(k, n - k)


def bilipschitz_constant(points: Sequence[int], lam: Fraction, oracle: DistanceOracle) -> Fraction | float:
    """Least K with ``lam*d_n/K <= d <= K*lam*d_n`` on every pair; inf if two points coincide."""
    n = len(points)
    if n < 3:
        raise ValueError("need at least 3 points")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    worst = Fraction(1)
    for i in range(n):
        row = oracle.row(points[i])
        for j in range(i + 1, n):
            d = row[points[j]]
            if d == 0:
                return INF
            target = lam * _cycle_index_distance(n, i, j)
            worst = max(worst, d / target, target / d)
    return worst


def lambda_candidates(oracle: DistanceOracle, n: int) -> list[Fraction]:
    """All values d(u, v)/j with d > 0 and 1 <= j <= n/2, largest first."""
    dists = {x for row in oracle.table() for x in row if x > 0}
    return sorted({Fraction(d, j) for d in dists for j in range(1, n // 2 + 1)}, reverse=True)


def _bounds(n: int, lam: Fraction, K: Fraction) -> tuple[list[int], list[int]]:
    lo = [0] * (n // 2 + 1)
    hi = [0] * (n // 2 + 1)
    for j in range(1, n // 2 + 1):
        t = lam * j
        lo[j] = math.ceil(t / K)
        hi[j] = math.floor(K * t)
    return lo, hi


def _ngon_subtree(graph: Graph, oracle: DistanceOracle, n: int, lo, hi, v0: int) -> tuple[int, ...] | None:
    """Lex-least tuple with least entry v0 first, v1 < v_{n-1}, meeting all pair bounds."""
    V = graph.vertex_count
    tup = [v0]

    def fits(w: int, p: int) -> bool:
        rw = oracle.row(w)
        for i in range(p):
            j = min(p - i, n - p + i)
            d = rw[tup[i]]
            if d < lo[j] or d > hi[j]:
                return False
        return True

    def extend(p: int) -> bool:
        start = v0 + 1
        if p == n - 1:
            start = max(start, tup[1] + 1)
        for w in range(start, V):
            if w in tup or not fits(w, p):
                continue
            tup.append(w)
            if p == n - 1 or extend(p + 1):
                return True
            tup.pop()
        return False

    return tuple(tup) if extend(1) else None


def _ngon_job(args):
    graph, n, lo, hi, v0 = args
    return _ngon_subtree(graph, DistanceOracle(graph, "bfs"), n, lo, hi, v0)


def search_ngon(
    graph: Graph,
    oracle: DistanceOracle,
    n: int,
    K: Fraction,
    workers: int = 1,
) -> NGonEmbedding | None:
    """K-bilipschitz copy of a scaled n-gon with the largest candidate lambda.

    Lambda ranges over :func:`lambda_candidates`. For the winning lambda the
    lexicographically least canonical tuple is returned (least vertex first,
    then the smaller neighbor).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    K = Fraction(K)
    if K < 1:
        raise ValueError("K must be at least 1")
    if n > graph.vertex_count:
        return None
    diam = max(max(row) for row in oracle.table())
    for lam in lambda_candidates(oracle, n):
        lo, hi = _bounds(n, lam, K)
        if lo[n // 2] > diam or any(lo[j] > hi[j] for j in range(1, n // 2 + 1)):
            continue
        starts = range(graph.vertex_count - n + 1)
        found = None
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for res in pool.map(_ngon_job, [(graph, n, lo, hi, v0) for v0 in starts]):
                    if res is not None:
                        found = res
                        break
        else:
            for v0 in starts:
                found = _ngon_subtree(graph, oracle, n, lo, hi, v0)
                if found is not None:
                    break
        if found is not None:
            return NGonEmbedding(found, n, lam, bilipschitz_constant(found, lam, oracle))
    return None


@dataclass(frozen=True)
class StitchedCycle:
    """Closed walk built by joining consecutive n-gon vertices with paths of prescribed length.

    ``fallbacks`` lists ``(i, m_i)`` for every segment whose length differs
    from ``floor(L*lam)``. The inverse-constant guarantee is asserted only
    when it is positive and no segment needed the ``+1`` length.
    """

    circle: DiscreteCircle
    predicted_inverse_K: Fraction
    segment_lengths: tuple[int, ...]
    fallbacks: tuple[tuple[int, int], ...]
    guarantee_applies: bool
    report: AlmostIsometryReport

    @property
    def guarantee_holds(self) -> bool | None:
        if not self.guarantee_applies:
            return None
        k = self.report.k_value
        return k != INF and 1 / k >= self.predicted_inverse_K


def predicted_inverse_k(n: int, L: Fraction, lam: Fraction) -> Fraction:
    return Fraction(n - 1, n) / (L * L) - Fraction(3, n) - 1 / (L * lam)


def ngon_to_cycle(embedding: NGonEmbedding, L: Fraction, oracle: DistanceOracle) -> StitchedCycle:
    L = Fraction(L)
    if embedding.k_achieved == INF or len(set(embedding.vertices)) != embedding.n:
        raise ValueError("n-gon vertices must be pairwise distinct")
    if not L > embedding.k_achieved:
        raise ValueError(f"L = {L} must exceed the achieved constant {embedding.k_achieved}")
    n = embedding.n
    base = math.floor(L * embedding.lam)
    walk: list[int] = []
    lengths = []
    fallbacks = []
    plus_one = False
    for i in range(n):
        u = embedding.vertices[i]
        w = embedding.vertices[(i + 1) % n]
        d = oracle.distance(u, w)
        seg = None
        for m in (base, base - 1, base + 1):
            if m < d:
                continue
            seg = oracle.path_of_prescribed_length(u, w, m)
            if seg is not None:
                break
        if seg is None:
            raise ValueError(f"no path of length near {base} joins n-gon vertices {i} and {(i + 1) % n}")
        if m != base:
            fallbacks.append((i, m))
            plus_one = plus_one or m == base + 1
        lengths.append(m)
        walk.extend(seg[:-1])
    circle = DiscreteCircle(tuple(walk))
    pred = predicted_inverse_k(n, L, embedding.lam)
    report = antipodal_ratio(circle, oracle, points="all")
    return StitchedCycle(circle, pred, tuple(lengths), tuple(fallbacks), pred > 0 and not plus_one, report)


@dataclass(frozen=True)
class SampledNGon:
    """n-gon read off a circle at the rounded equal-subdivision positions.

    ``predicted_K`` is the constant for exact (continuous) sampling;
    ``rounded_bound`` also accounts for moving each sample by at most half a step.
    """

    embedding: NGonEmbedding
    positions: tuple[int, ...]
    predicted_K: Fraction
    rounded_bound: Fraction | float

    @property
    def within_bound(self) -> bool:
        return self.embedding.k_achieved <= self.rounded_bound


def cycle_to_ngon(
    circle: DiscreteCircle,
    report: AlmostIsometryReport,
    n: int,
    oracle: DistanceOracle,
) -> SampledNGon:
    n_prime = len(circle)
    Kp = report.k_value
    if n < 3:
        raise ValueError("n must be at least 3")
    if Kp == INF:
        raise ValueError("the circle has a collapsed antipodal pair")
    eps = n * (Kp - 1) / (2 * Kp)
    if eps >= 1:
        raise ValueError(f"n(K'-1)/(2K') = {eps} must be below 1")
    if n_prime < n:
        raise ValueError("circle is shorter than the requested n")
    # nearest position to j*n'/n, ties to the lower one
    positions = tuple(-((n - 2 * j * n_prime) // (2 * n)) for j in range(n))
    verts = tuple(circle.vertices[p % n_prime] for p in positions)
    lam = Fraction(n_prime, n)
    predicted = 1 / (1 - eps)
    bound = predicted * n_prime / (n_prime - n * predicted) if n_prime > n * predicted else INF
    emb = NGonEmbedding(verts, n, lam, bilipschitz_constant(verts, lam, oracle))
    return SampledNGon(emb, positions, predicted, bound)
