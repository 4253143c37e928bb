from __future__ import annotations

from fractions import Fraction

import pytest

from shortcut_lab.cycles import INF, global_to_local_violations
from shortcut_lab.graphs import DiscreteCircle, DistanceOracle

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def assert_local_global(circle: DiscreteCircle, oracle: DistanceOracle, K, points: str = "anchored") -> None:
    """Every almost-isometric witness must satisfy the global-to-local inequality over all doubled positions."""
    if K == INF:
        return
    bad = global_to_local_violations(circle, oracle, Fraction(K), points)
    assert not bad, f"{circle.vertices}: {bad[:3]}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def cycle8():
    from shortcut_lab import load_graph

    g = load_graph("cycle:8")
    return g, DistanceOracle(g)
