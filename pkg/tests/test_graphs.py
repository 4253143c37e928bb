from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortcut_lab.generators import generate, grid_boundary, theta, theta_circuits
from shortcut_lab.graphs import (
    DiscreteCircle,
    DistanceOracle,
    Graph,
    GraphError,
    ScaledNGonMetric,
    canonical_cyclic,
    load_graph,
    parse_edge_list,
    walk_is_closed,
)

from oracles import nx_graph


def to_nx(g: Graph) -> nx.Graph:
    return nx_graph(g.vertex_count, g.edges)


@st.composite
def connected_graphs(draw, max_n=9):
    n = draw(st.integers(2, max_n))
    # random spanning tree plus extra edges keeps the graph connected
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return Graph(n, tuple(sorted(edges)))


class TestParsing:
    def test_labels_are_renumbered_in_first_seen_order(self):
        g = parse_edge_list("a b\nb c\n# comment\nc a\n")
        assert g.vertex_count == 3
        assert g.labels == ("a", "b", "c")
        assert g.vertex("c") == 2

    def test_integer_labels_keep_their_names(self):
        g = parse_edge_list("10 20\n20 30\n")
        assert g.vertex("30") == g.vertex(2)

    @pytest.mark.parametrize("text, message", [
        ("0 0\n", "self-loop"),
        ("0 1\n1 0\n", "parallel"),
        ("0 1\n2 3\n", "disconnected"),
        ("0 1 2\n", "expected"),
    ])
    def test_malformed_inputs(self, text, message):
        with pytest.raises(GraphError, match=message):
            parse_edge_list(text)

    def test_load_graph_from_file(self, tmp_path):
        p = tmp_path / "square.txt"
        p.write_text("0 1\n1 2\n2 3\n3 0\n")
        g = load_graph(str(p))
        assert g.vertex_count == 4 and g.edge_count == 4

    def test_unknown_spec(self):
        with pytest.raises(GraphError, match="unknown graph spec"):
            load_graph("moebius:5")


class TestGenerators:
    @pytest.mark.parametrize("spec, reference", [
        ("cycle:7", nx.cycle_graph(7)),
        ("path:5", nx.path_graph(5)),
        ("grid:4x3", nx.grid_2d_graph(4, 3)),
        ("hypercube:4", nx.hypercube_graph(4)),
        ("complete:6", nx.complete_graph(6)),
        ("petersen", nx.petersen_graph()),
        ("tree:2:3", nx.balanced_tree(2, 3)),
        ("tree:3:2", nx.balanced_tree(3, 2)),
    ])
    def test_isomorphic_to_networkx(self, spec, reference):
        assert nx.is_isomorphic(to_nx(generate(spec)), reference)

    def test_grid_boundary_is_a_closed_simple_walk(self):
        g = generate("grid:7x2")
        walk = grid_boundary(7, 2)
        assert len(walk) == 14 == len(set(walk))
        assert walk_is_closed(g, walk)

    def test_theta_circuits(self):
        g = theta(2, 3, 4)
        assert g.vertex_count == 2 + 1 + 2 + 3
        lengths = sorted(len(c) for c in theta_circuits(2, 3, 4))
        assert lengths == [5, 6, 7]
        assert all(walk_is_closed(g, c) for c in theta_circuits(2, 3, 4))

    def test_cayley_generator(self):
        g = generate("cayley:Z2:2")
        assert g.vertex_count == 13

    @pytest.mark.parametrize("spec", ["cycle:2", "grid:0x3", "theta:1:1:3", "cayley:Q8:2", "tree:2"])
    def test_rejects_bad_specs(self, spec):
        with pytest.raises(GraphError):
            generate(spec)


class TestDistanceOracle:
    @settings(max_examples=40, deadline=None)
    @given(connected_graphs())
    def test_matches_networkx(self, g):
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for mode in ("table", "bfs"):
            oracle = DistanceOracle(g, mode)
            for u in range(g.vertex_count):
                for v in range(g.vertex_count):
                    assert oracle.distance(u, v) == ref[u][v]

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs(), st.data())
    def test_geodesic_is_the_lex_least_shortest_path(self, g, data):
        u = data.draw(st.integers(0, g.vertex_count - 1))
        v = data.draw(st.integers(0, g.vertex_count - 1))
        path = DistanceOracle(g).geodesic(u, v)
        assert path == min(nx.all_shortest_paths(to_nx(g), u, v))

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs(), st.data())
    def test_prescribed_length_paths(self, g, data):
        oracle = DistanceOracle(g)
        u = data.draw(st.integers(0, g.vertex_count - 1))
        v = data.draw(st.integers(0, g.vertex_count - 1))
        m = data.draw(st.integers(0, 12))
        walk = oracle.path_of_prescribed_length(u, v, m)
        d = oracle.distance(u, v)
        if walk is None:
            # only impossible when too short, or the parity cannot be fixed
            assert m < d or (m - d) % 2 == 1
            return
        assert len(walk) == m + 1 and walk[0] == u and walk[-1] == v
        assert all(g.has_edge(a, b) for a, b in zip(walk, walk[1:]))

    def test_odd_detour_needs_an_odd_cycle(self):
        path = generate("path:4")
        assert DistanceOracle(path).path_of_prescribed_length(0, 1, 2) is None
        tri = generate("cycle:3")
        assert DistanceOracle(tri).path_of_prescribed_length(0, 1, 2) == [0, 2, 1]


class TestCircles:
    def test_check_rejects_non_edges(self):
        with pytest.raises(GraphError, match="not an edge"):
            DiscreteCircle((0, 2, 1)).check(generate("path:3"))

    def test_too_short(self):
        with pytest.raises(ValueError):
            DiscreteCircle((0,))

    @given(st.lists(st.integers(0, 4), min_size=2, max_size=9), st.integers(0, 20), st.booleans())
    def test_canonical_form_is_invariant(self, seq, shift, flip):
        c = DiscreteCircle(tuple(seq))
        moved = c.rotated(shift)
        if flip:
            moved = moved.reflected()
        assert moved.canonical() == c.canonical()
        assert canonical_cyclic(seq) <= tuple(seq)

    def test_subdivision_doubles_distances(self):
        g = generate("petersen")
        sub = g.subdivide()
        assert sub.vertex_count == g.vertex_count + g.edge_count
        d, ds = DistanceOracle(g), DistanceOracle(sub)
        assert all(ds.distance(u, v) == 2 * d.distance(u, v) for u in range(10) for v in range(10))
        assert sub.labels[10] == "m(%s,%s)" % tuple(g.labels[x] for x in g.edges[0])


def test_scaled_ngon_metric():
    m = ScaledNGonMetric(6, Fraction(3, 2))
    assert m.distance(0, 4) == 3
    assert m.index_distance(5, 0) == 1
    with pytest.raises(ValueError):
        ScaledNGonMetric(2, 1)
