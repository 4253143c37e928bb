"""Greedy (L, C)-tightening of closed walks, with a checker for its length bounds.

Circles are handled at half-step resolution. In geodesic mode (R = 0) a
circle is a closed walk in the barycentric subdivision, so every entry is a
vertex or an edge midpoint of the original graph and one step is half a unit.
In vertex mode (R = 1) each vertex of the walk is held for two half-steps,
which turns the vertex sequence into a 1-rough circle. All lengths below are
stored in half-units and reported in graph units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .constants import admissible_constants
from .graphs import DiscreteCircle, DistanceOracle, Graph

INF = math.inf


class TighteningInvariantError(AssertionError):
    """A guaranteed bound failed during a run; this signals an implementation bug."""


@dataclass(frozen=True)
class TighteningConfig:
    L: Fraction
    C: Fraction
    R: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("L", "C", "R"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.L <= 1:
            raise ValueError("L must exceed 1")
        if self.C <= 0:
            raise ValueError("C must be positive (C = 0 need not terminate)")
        if self.R not in (0, 1):
            raise ValueError("R must be 0 (geodesic mode) or 1 (vertex mode)")
        if self.C < 4 * self.R:
            raise ValueError("C must be at least 4R")

    @property
    def min_drop(self) -> Fraction:
        """Guaranteed length decrease per step, in graph units."""
        return (self.L - 1) * (self.C - 2 * self.R)


class HalfSpace:
    """Distances (in half-units) and replacement paths for one tightening mode."""

    def __init__(self, graph: Graph, R: Fraction, oracle: DistanceOracle | None = None) -> None:
        self.graph = graph
        self.R = R
        if R == 0:
            self.carrier = graph.subdivide()
            self.oracle = DistanceOracle(self.carrier, "bfs")
        else:
            self.carrier = graph
            self.oracle = oracle if oracle is not None and oracle.graph is graph else DistanceOracle(graph, "bfs")

    def distance(self, x: int, y: int) -> int:
        d = self.oracle.row(y)[x]
        return d if self.R == 0 else 2 * d

    def replacement(self, x: int, y: int) -> list[int]:
        """Entries of the tightened segment from x to y, both endpoints included."""
        path = self.oracle.geodesic(x, y)
        if self.R == 0:
            return path
        # constant path of length R at each end, each graph step spread over two half-steps
        out = [path[0]] * 3
        for k in range(1, len(path)):
            out += [path[k - 1], path[k]]
        out += [path[-1]] * 2
        return out

    def entries_of(self, circle: DiscreteCircle) -> list[int]:
        v = circle.vertices
        n = len(v)
        if self.R == 0:
            base = self.graph.vertex_count
            out = []
            for i in range(n):
                out += [v[i], base + self.graph.edge_index(v[i], v[(i + 1) % n])]
            return out
        return [x for x in v for _ in range(2)]

    def label(self, x: int) -> str:
        return self.carrier.labels[x]


def _arc_distance(N: int, a: int, b: int) -> int:
    k = (b - a) % N
    return min(k, N - k)


def violating_pairs_half(entries: Sequence[int], space: HalfSpace, L: Fraction, C: Fraction) -> list[tuple[int, int]]:
    """Pairs a < b of half positions with ``d_X < d_S / L - C``."""
    N = len(entries)
    out = []
    two_cl = 2 * C * L
    for a in range(N):
        xa = entries[a]
        for b in range(a + 1, N):
            ds = _arc_distance(N, a, b)
            if ds <= two_cl:
                continue
            if L * space.distance(xa, entries[b]) < ds - two_cl:
                out.append((a, b))
    return out


def violating_pairs(
    circle: DiscreteCircle,
    oracle: DistanceOracle,
    L: Fraction,
    C: Fraction,
) -> list[tuple[Fraction, Fraction]]:
    """Circle positions (multiples of 1/2) of the pairs too close in the graph.

    Every vertex and edge midpoint of the walk is considered, in geodesic mode.
    """
    circle.check(oracle.graph)
    space = HalfSpace(oracle.graph, Fraction(0))
    L, C = Fraction(L), Fraction(C)
    return [(Fraction(a, 2), Fraction(b, 2)) for a, b in violating_pairs_half(space.entries_of(circle), space, L, C)]


@dataclass(frozen=True)
class TighteningStep:
    """One surgery. Positions are in units of the circle before the step."""

    i: int
    p: Fraction
    q: Fraction
    arc: str  # "forward": p -> q through increasing positions; "wrap": q -> p through position 0
    len_Q: Fraction
    len_Qbar: Fraction
    image_distance: Fraction
    circle_len_after: Fraction
    disjoint: bool
    original_span: tuple[int, ...]  # half positions of S_0 covered by Q, empty if it reaches new material

    @property
    def s(self) -> Fraction:
        return self.len_Q


@dataclass(frozen=True)
class TighteningTrace:
    graph: Graph
    input_circle: DiscreteCircle
    config: TighteningConfig
    steps: tuple[TighteningStep, ...]
    circles: tuple[tuple[int, ...], ...]  # half-resolution entries of S_0 .. S_T
    preimage: tuple[int | None, ...]  # origin in S_0 of every final entry, None for new material
    termination: str
    labels: tuple[str, ...] = field(repr=False, default=())

    @property
    def initial_length(self) -> Fraction:
        return Fraction(len(self.circles[0]), 2)

    @property
    def final_length(self) -> Fraction:
        return Fraction(len(self.circles[-1]), 2)

    @property
    def final_entries(self) -> tuple[int, ...]:
        return self.circles[-1]

    @property
    def disjoint_prefix(self) -> int:
        """Number of leading steps whose segments avoid all earlier surgery."""
        j = 0
        for st in self.steps:
            if not st.disjoint:
                break
            j += 1
        return j

    @property
    def completely_disjoint(self) -> bool:
        return self.disjoint_prefix == len(self.steps)

    def as_graph_walk(self) -> DiscreteCircle | None:
        """The final circle as a closed walk in the input graph, when it is one."""
        ent = self.final_entries
        if self.config.R == 1:
            if len(ent) % 2 or any(ent[k] != ent[k + 1] for k in range(0, len(ent), 2)):
                return None
            walk = tuple(ent[::2])
        else:
            n = self.graph.vertex_count
            start = next((k for k, x in enumerate(ent) if x < n), None)
            if start is None:
                return None
            ent = ent[start:] + ent[:start]
            if any((x < n) != (k % 2 == 0) for k, x in enumerate(ent)):
                return None
            walk = tuple(ent[::2])
            for k in range(len(walk)):
                u, v = walk[k], walk[(k + 1) % len(walk)]
                if u == v or self.graph.edge_index(u, v) + n != ent[2 * k + 1]:
                    return None
        if len(walk) < 2:
            return None
        return DiscreteCircle(walk)


def greedy_tighten(
    circle: DiscreteCircle,
    oracle: DistanceOracle,
    config: TighteningConfig,
) -> TighteningTrace:
    """Run the greedy tightening sequence to completion.

    Each step takes a violating pair at maximal circle distance (least pair on
    ties), cuts out the shorter arc between them (the arc through increasing
    positions when both arcs tie) and splices in a geodesic. Every step checks
    the guaranteed per-step bounds and the run checks the step-count bound.
    """
    graph = oracle.graph
    circle.check(graph)
    L, C, R = config.L, config.C, config.R
    space = HalfSpace(graph, R, oracle)
    entries = space.entries_of(circle)
    # origin in S_0 (or None) and whether the entry was a surgery endpoint
    origin: list[int | None] = list(range(len(entries)))
    touched = [False] * len(entries)
    circles = [tuple(entries)]
    steps: list[TighteningStep] = []
    budget = Fraction(len(entries), 2) / config.min_drop
    while True:
        N = len(entries)
        best = None
        two_cl = 2 * C * L
        for a in range(N):
            xa = entries[a]
            for b in range(a + 1, N):
                ds = _arc_distance(N, a, b)
                if ds <= two_cl or (best is not None and ds < best[0]):
                    continue
                if L * space.distance(xa, entries[b]) < ds - two_cl:
                    if best is None or ds > best[0]:
                        best = (ds, a, b)
        if best is None:
            break
        ds, a, b = best
        rep = space.replacement(entries[a], entries[b])
        img = space.distance(entries[a], entries[b])
        forward = b - a <= N - (b - a)
        if forward:
            arc = list(range(a, b + 1))
        else:
            arc = list(range(b, N)) + list(range(0, a + 1))
        disjoint = all(origin[k] is not None and not touched[k] for k in arc)
        span = tuple(origin[k] for k in arc) if disjoint else ()
        # a one-point replacement merges the two endpoints into entry a
        merged = len(rep) == 1
        mid = max(len(rep) - 2, 0)
        if forward:
            new_entries = entries[:a] + rep + entries[b + 1:]
            if merged:
                new_origin = origin[:a + 1] + origin[b + 1:]
                new_touched = touched[:a] + [True] + touched[b + 1:]
            else:
                new_origin = origin[:a + 1] + [None] * mid + origin[b:]
                new_touched = touched[:a] + [True] + [False] * mid + [True] + touched[b + 1:]
        else:
            # keep a..b-1, then walk the replacement back from entries[b] towards entries[a]
            tail = rep[::-1][:-1]
            new_entries = entries[a:b] + tail
            new_origin = origin[a:b] + ([origin[b]] + [None] * mid if tail else [])
            new_touched = [True] + touched[a + 1:b] + ([True] + [False] * mid if tail else [])
        if not len(new_entries) == len(new_origin) == len(new_touched):
            raise TighteningInvariantError(f"step {len(steps)}: bookkeeping out of sync")
        len_q = Fraction(ds, 2)
        len_qbar = Fraction(len(rep) - 1, 2)
        after = Fraction(len(new_entries), 2)
        if not len_qbar <= len_q / L:
            raise TighteningInvariantError(f"step {len(steps)}: replacement {len_qbar} exceeds |Q|/L = {len_q / L}")
        if not len_q >= L * (C - 2 * R):
            raise TighteningInvariantError(f"step {len(steps)}: |Q| = {len_q} below L(C-2R)")
        if not Fraction(N, 2) - after >= config.min_drop:
            raise TighteningInvariantError(f"step {len(steps)}: length dropped by less than (L-1)(C-2R)")
        steps.append(TighteningStep(
            len(steps), Fraction(a, 2), Fraction(b, 2), "forward" if forward else "wrap",
            len_q, len_qbar, Fraction(img, 2), after, disjoint, span,
        ))
        entries, origin, touched = new_entries, new_origin, new_touched
        circles.append(tuple(entries))
        if len(steps) > budget:
            raise TighteningInvariantError(f"more than {budget} steps")
    return TighteningTrace(
        graph, circle, config, tuple(steps), tuple(circles), tuple(origin),
        "no violating pairs", space.carrier.labels,
    )


def entries_antipodal_k(entries: Sequence[int], space: HalfSpace) -> Fraction | float:
    """Ratio |S|/2 over the least antipodal image distance, over all half positions."""
    N = len(entries)
    h = N // 2
    worst = min(space.distance(entries[p], entries[(p + h) % N]) for p in range(h))
    return INF if worst == 0 else Fraction(h, worst)


def qi_violations(
    entries: Sequence[int],
    space: HalfSpace,
    L: Fraction,
    C: Fraction,
) -> list[tuple[int, int, Fraction, Fraction]]:
    """All half-position pairs breaking ``d_S/L - C <= d_X <= L d_S + C``.

    Returns ``(a, b, d_X, d_S)`` in graph units.
    """
    N = len(entries)
    bad = []
    for a in range(N):
        for b in range(a + 1, N):
            ds = _arc_distance(N, a, b)
            dx = space.distance(entries[a], entries[b])
            if L * dx < ds - 2 * C * L or dx > L * ds + 2 * C:
                bad.append((a, b, Fraction(dx, 2), Fraction(ds, 2)))
    return bad


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | not-applicable | informational
    detail: str
    witness: tuple = ()


@dataclass(frozen=True)
class VerificationReport:
    K_input: Fraction | float
    K_measured: Fraction | float
    N: Fraction
    M: Fraction | float
    K_greedy: Fraction
    K_disjoint: Fraction
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)


def verify_trace(trace: TighteningTrace, K_input=None, N=2) -> VerificationReport:
    """Check a trace against the per-step, summed and disjointness bounds.

    ``K_input`` defaults to the measured ratio of the input circle over all
    half positions. Bounds (a)-(c) hold only for a circle that really is
    1/K-almost isometric, so they are skipped when K_input is infinite or
    below the measured ratio; they are applied to the disjoint prefix.
    """
    cfg = trace.config
    L, C, R = cfg.L, cfg.C, cfg.R
    N = Fraction(N)
    space = HalfSpace(trace.graph, R)
    s0 = trace.circles[0]
    S = Fraction(len(s0), 2)
    measured = entries_antipodal_k(s0, space)
    K = measured if K_input is None else (INF if K_input == INF else Fraction(K_input))
    consts = admissible_constants(N, L, R, K if (K != INF and K > 1) else None)
    M = consts.M
    applies = K != INF and measured != INF and K >= measured
    prefix = trace.steps[:trace.disjoint_prefix]
    checks = []

    if not applies:
        why = "K is infinite" if K == INF or measured == INF else f"K_input {K} is below the measured ratio {measured}"
        for name in ("per_step", "sum", "fraction"):
            checks.append(CheckResult(name, "not-applicable", why))
    else:
        shrink = (K - 1) / K
        cap = shrink * L / (L - 1) * S / 2
        bad = [st.i for st in prefix if st.len_Q > cap]
        checks.append(CheckResult("per_step", "fail" if bad else "pass", f"|Q_i| <= {cap}", tuple(bad)))
        total = sum((st.len_Q for st in prefix), Fraction(0))
        bound = shrink * L * (3 * L - 2) / (2 * (L - 1) ** 2) * S + 6 * L * R / (L - 1)
        checks.append(CheckResult("sum", "pass" if total <= bound else "fail", f"sum {total} <= {bound}"))
        hyp = K < consts.K_greedy and S > M
        ok = total < S / N
        if hyp:
            checks.append(CheckResult("fraction", "pass" if ok else "fail", f"sum {total} < |S|/N = {S / N}"))
        else:
            checks.append(CheckResult("fraction", "informational",
                                      f"hypotheses K < {consts.K_greedy}, |S| > {M} not met; sum {total} vs |S|/N = {S / N}"))

    bad = tuple(st.i for st in trace.steps if not st.disjoint)
    hyp = applies and K < consts.K_disjoint and S > M
    if hyp:
        checks.append(CheckResult("disjoint", "fail" if bad else "pass", "segments avoid earlier surgery", bad))
    else:
        checks.append(CheckResult("disjoint", "pass" if not bad else "informational",
                                  "completely disjoint" if not bad else f"steps {list(bad)} overlap earlier surgery", bad))

    viol = qi_violations(trace.final_entries, space, L, C)
    checks.append(CheckResult("final_qi", "fail" if viol else "pass",
                              f"final circle is an ({L},{C})-quasi-isometric embedding" if not viol else
                              f"{len(viol)} pairs break the ({L},{C}) bounds", tuple(viol[:5])))
    return VerificationReport(K_input if K_input is not None else measured, measured, N, M,
                              consts.K_greedy, consts.K_disjoint, tuple(checks))
