"""Admissible constants for greedy tightening, in exact rational arithmetic."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

INF = math.inf


def k_greedy(N: Fraction, L: Fraction) -> Fraction:
    """Largest K for which the summed tightened length stays below |S|/N (for large |S|)."""
    return N * L * (3 * L - 2) / ((3 * N - 2) * L * L - (2 * N - 4) * L - 2)


def k_disjoint(L: Fraction) -> Fraction:
    """Largest K for which every greedy tightening sequence is completely disjoint (for large |S|)."""
    return L * (9 * L * L - 3 * L - 4) / (7 * L ** 3 + 3 * L * L - 10 * L + 2)


def _shrink(K: Fraction) -> Fraction:
    return (K - 1) / K


def _threshold(numer: Fraction, room: Fraction) -> Fraction | float:
    """Least |S| with numer/|S| < room; infinite when room <= 0."""
    if numer == 0:
        return Fraction(0)
    if room <= 0:
        return INF
    return numer / room


def length_thresholds(N: Fraction, L: Fraction, K: Fraction, R: Fraction) -> dict[str, Fraction | float]:
    """Circle lengths beyond which each |S|-dependent inequality of the disjointness argument holds.

    Each inequality has the form ``A + B/|S| < T`` with ``A < T`` under the
    K hypotheses, so the threshold is ``B / (T - A)``. All vanish when R = 0.
    """
    s = _shrink(K)
    d2 = 2 * (L - 1) ** 2
    return {
        "sum_below_fraction": _threshold(6 * L * R / (L - 1), 1 / N - s * L * (3 * L - 2) / d2),
        "outgrows_first_segment": _threshold(6 * L * R / (L - 1), 1 - s * L * (5 * L - 4) / d2),
        "embeds_in_circle": _threshold(3 * L * R / (L - 1), Fraction(1, 2) - s * L * (7 * L - 6) / (2 * d2)),
        "antipodal_contradiction": _threshold(6 * R * (L + 1) / (L - 1), (L - 1) / L - s * (9 * L * L - 3 * L - 4) / d2),
        "adjacent_segments": _threshold(6 * L * R / (L - 1), 1 - s * L * (7 * L - 6) / d2),
    }


@dataclass(frozen=True)
class ConstantsReport:
    """Thresholds for the tightening guarantees.

    ``M`` is a sufficient circle length (not necessarily the least one). It is
    evaluated at ``K`` when given; without K and with R > 0 it is reported as
    infinite, since every threshold diverges as K approaches ``K_max``.
    """

    N: Fraction
    L: Fraction
    R: Fraction
    K_greedy: Fraction
    K_disjoint: Fraction
    K_max: Fraction
    M: Fraction | float
    K: Fraction | None = None
    thresholds: tuple[tuple[str, Fraction | float], ...] = ()


def admissible_constants(N, L, R=0, K=None) -> ConstantsReport:
    N, L, R = Fraction(N), Fraction(L), Fraction(R)
    if N <= 1 or L <= 1:
        raise ValueError("N and L must exceed 1")
    if R < 0:
        raise ValueError("R must be non-negative")
    kg, kd = k_greedy(N, L), k_disjoint(L)
    kmax = min(kg, kd)
    if K is not None:
        K = Fraction(K)
        if K <= 1:
            raise ValueError("K must exceed 1")
    if R == 0:
        return ConstantsReport(N, L, R, kg, kd, kmax, Fraction(0), K)
    if K is None:
        return ConstantsReport(N, L, R, kg, kd, kmax, INF, K)
    th = length_thresholds(N, L, K, R)
    return ConstantsReport(N, L, R, kg, kd, kmax, max(th.values()), K, tuple(th.items()))


def check_rational_inequalities(L, N) -> tuple[bool, bool, bool, bool]:
    """The four comparisons that make the tightening thresholds exceed 1 and stay compatible."""
    L, N = Fraction(L), Fraction(N)
    if L <= 1 or N <= 1:
        raise ValueError("L and N must exceed 1")
    kd = k_disjoint(L)
    return (
        1 < kd,
        1 < k_greedy(N, L),
        kd <= L * (5 * L - 4) / (3 * L * L - 2),
        kd <= L * (7 * L - 6) / (5 * L * L - 2 * L - 2),
    )


def random_rational_above_one(rng: random.Random, hi: int = 100, max_den: int = 1000) -> Fraction:
    """Rational in (1, hi] with denominator at most ``max_den``."""
    q = rng.randint(1, max_den)
    p = rng.randint(q + 1, hi * q)
    return Fraction(p, q)


@dataclass(frozen=True)
class InequalitySweep:
    seed: int
    samples: int
    failures: tuple[tuple[Fraction, Fraction, tuple[bool, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def sweep_rational_inequalities(samples: int = 1000, seed: int = 0, hi: int = 100) -> InequalitySweep:
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        L = random_rational_above_one(rng, hi)
        N = random_rational_above_one(rng, hi)
        res = check_rational_inequalities(L, N)
        if not all(res):
            failures.append((L, N, res))
    return InequalitySweep(seed, samples, tuple(failures))
