"""Exact finite-scale tools for almost-isometric cycles, n-gon embeddings,
greedy circle tightening and orbit-map constants of group actions."""

__version__ = "0.1.0"

from .graphs import DiscreteCircle, DistanceOracle, Graph, GraphError, ScaledNGonMetric, load_graph  # noqa: E402
from .cycles import (  # noqa: E402
    AlmostIsometryReport,
    SearchConfig,
    antipodal_ratio,
    search_max_almost_isometric_cycle,
    shortcut_profile,
)
from .ngon import NGonEmbedding, bilipschitz_constant, cycle_to_ngon, ngon_to_cycle, search_ngon  # noqa: E402
from .constants import admissible_constants, check_rational_inequalities  # noqa: E402
from .tightening import TighteningConfig, greedy_tighten, verify_trace, violating_pairs  # noqa: E402
from .milnor_schwarz import (  # noqa: E402
    convergence_sweep,
    fine_ms_report,
    generating_ball,
    make_action,
    word_ball_metric,
)

__all__ = [
    "AlmostIsometryReport", "DiscreteCircle", "DistanceOracle", "Graph", "GraphError",
    "NGonEmbedding", "ScaledNGonMetric", "SearchConfig", "TighteningConfig",
    "admissible_constants", "antipodal_ratio", "bilipschitz_constant", "check_rational_inequalities",
    "convergence_sweep", "cycle_to_ngon", "fine_ms_report", "generating_ball", "greedy_tighten",
    "load_graph", "make_action", "ngon_to_cycle", "search_max_almost_isometric_cycle", "search_ngon",
    "shortcut_profile", "verify_trace", "violating_pairs", "word_ball_metric",
]
