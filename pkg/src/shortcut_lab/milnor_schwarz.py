"""Scaled word metrics from generating balls, and quasi-isometry constants of orbit maps.

A group G acts on a space X (here: a finite ball of a Cayley graph of G, on
which G acts by left multiplication). For a basepoint x0 and radius t, the
ball ``S_t = {g : d(x0, g x0) <= t}`` generates a word metric; scaled by t it
is compared with the orbit metric ``d(g x0, h x0)``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .graphs import DistanceOracle, Graph, bfs_distances
from .groups import Group, cayley_ball, free_group, heisenberg, integers, z2_diagonal, z2_standard

INF = math.inf


class BallTooSmall(ValueError):
    """The loaded ball does not contain the region a computation needs."""


@dataclass(frozen=True)
class GroupAction:
    """G acting on a loaded ball of a graph, with an injective orbit map g -> g x0.

    ``move(g, v)`` gives the vertex g.v (None outside the ball); by default
    the action is left multiplication on orbit points.
    """

    name: str
    group: Group
    space: Graph
    elements: tuple[Hashable, ...]  # orbit point at each vertex (None for non-orbit vertices)
    radius: int
    x0: int = 0
    move: Callable[[Hashable, int], int | None] | None = None

    def __post_init__(self) -> None:
        index = {g: v for v, g in enumerate(self.elements) if g is not None}
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_center", bfs_distances(self.space, self.x0))

    def vertex_of(self, g) -> int | None:
        return self._index.get(g)

    def center_distance(self, v: int) -> int:
        """Exact d(x0, v) for any loaded vertex."""
        return self._center[v]

    def act(self, g, v: int) -> int | None:
        if self.move is not None:
            return self.move(g, v)
        h = self.elements[v]
        if h is None:
            return None
        return self.vertex_of(self.group.mul(g, h))


def _make(name: str, group: Group, space_group: Group, radius: int) -> GroupAction:
    graph, elements = cayley_ball(space_group, radius)
    return GroupAction(name, group, graph, tuple(elements), radius)


def _make_even(radius: int) -> GroupAction:
    """Z^2 translating the square grid by even vectors; orbit points are the even lattice."""
    graph, coords = cayley_ball(z2_standard(), radius)
    elements = tuple((x // 2, y // 2) if x % 2 == 0 and y % 2 == 0 else None for x, y in coords)
    index = {c: v for v, c in enumerate(coords)}

    def move(g, v):
        x, y = coords[v]
        return index.get((x + 2 * g[0], y + 2 * g[1]))

    return GroupAction("Z2-even-on-Z2", z2_standard(), graph, elements, radius, move=move)


PRESETS = {
    "Z": lambda r: _make("Z", integers(), integers(), r),
    "Z-std": lambda r: _make("Z-std", integers(), integers(), r),
    "Z2-std": lambda r: _make("Z2-std", z2_standard(), z2_standard(), r),
    "Z2-diag": lambda r: _make("Z2-std-on-Z2-diag", z2_standard(), z2_diagonal(), r),
    "Z2-std-on-Z2-diag": lambda r: _make("Z2-std-on-Z2-diag", z2_standard(), z2_diagonal(), r),
    "F2-ball": lambda r: _make("F2-ball", free_group(), free_group(), r),
    "H3-ball": lambda r: _make("H3-ball", heisenberg(), heisenberg(), r),
    "Z2-even-on-Z2": _make_even,
}


def parse_preset(spec: str) -> tuple[str, int | None]:
    name, _, r = spec.partition(":")
    if name not in PRESETS:
        raise ValueError(f"unknown action preset {name!r}; choose from {sorted(PRESETS)}")
    return name, (int(r) if r else None)


def make_action(spec: str, radius: int | None = None) -> GroupAction:
    """Build a preset action; an explicit ``:r`` suffix overrides ``radius``."""
    name, r = parse_preset(spec)
    r = r if r is not None else radius
    if r is None or r < 1:
        raise ValueError("a positive ball radius is required")
    return PRESETS[name](r)


def check_action(action: GroupAction, samples: int = 200, seed: int = 0) -> list[str]:
    """Spot-check isometry and equivariance on points well inside the ball.

    Points are drawn within radius/4 of x0 so all geodesics involved stay in the
    loaded ball and truncation cannot distort distances.
    """
    rng = random.Random(seed)
    inner = [v for v in range(action.space.vertex_count) if 4 * action.center_distance(v) <= action.radius]
    orbit = [v for v in inner if action.elements[v] is not None]
    oracle = DistanceOracle(action.space, "bfs")
    problems = []
    for _ in range(samples):
        g = action.elements[rng.choice(orbit)]
        u, v = rng.choice(inner), rng.choice(inner)
        gu, gv = action.act(g, u), action.act(g, v)
        if gu is None or gv is None:
            problems.append(f"translate of {u} or {v} by {g} left the ball")
            continue
        if oracle.distance(gu, gv) != oracle.distance(u, v):
            problems.append(f"d(g.u, g.v) != d(u, v) for g={g}, u={u}, v={v}")
        h = action.elements[rng.choice(orbit)]
        gh = action.vertex_of(action.group.mul(g, h))
        if gh is not None and action.act(g, action.vertex_of(h)) != gh:
            problems.append(f"orbit map not equivariant at g={g}, h={h}")
    return problems


@dataclass(frozen=True)
class GeneratingBall:
    t: Fraction
    elements: tuple[Hashable, ...]
    group: Group

    def __contains__(self, g) -> bool:
        return g in set(self.elements)


def generating_ball(action: GroupAction, t) -> GeneratingBall:
    """All g with d(x0, g x0) <= t, pulled back through the orbit map."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if t > action.radius:
        raise BallTooSmall(f"t = {t} exceeds the loaded radius {action.radius}; generate a larger ball")
    elems = tuple(
        action.elements[v] for v in range(action.space.vertex_count)
        if action.elements[v] is not None and action.center_distance(v) <= t
    )
    return GeneratingBall(t, elems, action.group)


def check_generating_ball(action: GroupAction, ball: GeneratingBall) -> list[str]:
    """Membership, symmetry and identity checks over every loaded orbit point."""
    problems = []
    members = set(ball.elements)
    for v, g in enumerate(action.elements):
        if g is None:
            continue
        inside = action.center_distance(v) <= ball.t
        if inside != (g in members):
            problems.append(f"membership of {g} disagrees with d(x0, g x0) = {action.center_distance(v)}")
    if action.group.identity not in members:
        problems.append("identity missing")
    for g in ball.elements:
        if action.group.inv(g) not in members:
            problems.append(f"inverse of {g} missing")
    return problems


def word_ball_metric(ball: GeneratingBall, g, g_prime, cap: int) -> Fraction | float:
    """t times the word length of g^-1 g' over the ball, or inf if not reached within cap letters."""
    grp = ball.group
    target = grp.mul(grp.inv(g), g_prime)
    if target == grp.identity:
        return Fraction(0)
    seen = {grp.identity}
    frontier = [grp.identity]
    gens = [s for s in ball.elements if s != grp.identity]
    for depth in range(1, cap + 1):
        nxt = []
        for h in frontier:
            for s in gens:
                x = grp.mul(h, s)
                if x == target:
                    return ball.t * depth
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
        if not frontier:
            break
    return INF


def required_radius(t, R, sample_radius: int) -> int:
    """Loaded ball radius that makes every scaled word length in the sample exact.

    A word of length l has prefixes within l*t of x0, and the lower orbit
    bound gives l <= ceil(s / (t - R)); one more t covers the neighborhoods
    explored around the last layer.
    """
    t, R = Fraction(t), Fraction(R)
    layers = math.ceil(Fraction(sample_radius) / (t - R))
    return math.floor(t * layers) + math.floor(t)


def scaled_word_lengths(action: GroupAction, t, R, sample_radius: int) -> dict[int, Fraction | float]:
    """d_t(1, g) for every orbit vertex g x0 within sample_radius of x0.

    Breadth-first search in the scaled Cayley graph: the neighbors of h are
    the orbit points within t of h x0, found by a depth-floor(t) search in the
    space around the current layer.
    """
    t, R = Fraction(t), Fraction(R)
    need = required_radius(t, R, sample_radius)
    if need > action.radius:
        raise BallTooSmall(f"need a ball of radius {need}, loaded {action.radius}")
    rho = need - math.floor(t)
    depth_cap = math.floor(t)
    adj = action.space.adjacency
    center = action._center
    word = {action.x0: 0}
    frontier = [action.x0]
    k = 0
    while frontier:
        k += 1
        seen = {v: 0 for v in frontier}
        queue = deque(frontier)
        new = []
        while queue:
            u = queue.popleft()
            du = seen[u]
            if du == depth_cap:
                continue
            for w in adj[u]:
                if w in seen:
                    continue
                seen[w] = du + 1
                queue.append(w)
                if w not in word and center[w] <= rho and action.elements[w] is not None:
                    word[w] = k
                    new.append(w)
        frontier = new
    out = {}
    for v in range(action.space.vertex_count):
        if action.elements[v] is not None and center[v] <= sample_radius:
            out[v] = t * word[v] if v in word else INF
    return out


@dataclass(frozen=True)
class FineMSReport:
    """Observed orbit-map constants at one scale t.

    ``K_empirical`` is the least K >= 1 with ``d_t / K - (t - R) <= d <= K d_t + (t - R)``
    on the sample (the upper bound always holds with K = 1).
    ``additive_constant_observed`` is the largest ``((t-R)/t) d_t - d`` seen.
    """

    action: str
    t: Fraction
    R: Fraction
    sample_radius: int
    K_certified: Fraction
    K_empirical: Fraction | float
    additive_constant_observed: Fraction | float
    pairs_checked: int
    lower_violations: tuple[tuple, ...]
    upper_violations: tuple[tuple, ...]
    ball_size: int

    @property
    def ok(self) -> bool:
        return not self.lower_violations and not self.upper_violations and self.K_empirical <= self.K_certified


def fine_ms_report(action: GroupAction, t, R, sample_radius: int) -> FineMSReport:
    """Check both orbit inequalities on every pair (1, g) with d(x0, g x0) <= sample_radius.

    Pairs (1, g) cover all pairs: both metrics are invariant under left translation.
    """
    t, R = Fraction(t), Fraction(R)
    if R < 0:
        raise ValueError("R must be non-negative")
    if t <= R:
        raise ValueError("t must exceed R")
    ball = generating_ball(action, t)
    lengths = scaled_word_lengths(action, t, R, sample_radius)
    shrink = (t - R) / t
    k_emp: Fraction | float = Fraction(1)
    add: Fraction | float = Fraction(0)
    lower, upper = [], []
    for v, dt in sorted(lengths.items()):
        d = action.center_distance(v)
        g = action.group.fmt(action.elements[v])
        if dt == INF:
            lower.append((g, d, "unreached"))
            k_emp = add = INF
            continue
        if d > dt:
            upper.append((g, d, dt))
        if shrink * dt - (t - R) > d:
            lower.append((g, d, dt))
        if k_emp != INF:
            k_emp = max(k_emp, dt / (d + t - R))
            add = max(add, shrink * dt - d)
    return FineMSReport(
        action.name, t, R, sample_radius, t / (t - R), k_emp, add,
        len(lengths), tuple(lower), tuple(upper), len(ball.elements),
    )


def convergence_sweep(action: GroupAction, R, t_list: Sequence, sample_radius: int) -> list[FineMSReport]:
    ts = [Fraction(t) for t in t_list]
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_list must be strictly increasing")
    return [fine_ms_report(action, t, R, sample_radius) for t in ts]


def sweep_radius(R, t_list: Sequence, sample_radius: int) -> int:
    """Ball radius sufficient for every scale of a sweep (and for the generating balls)."""
    return max(max(required_radius(t, R, sample_radius), math.ceil(Fraction(t))) for t in t_list)
