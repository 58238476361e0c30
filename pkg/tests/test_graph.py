import itertools

import networkx as nx
import numpy as np
import pytest
from conftest import complete_graph, cycle_graph, path_graph, petersen_graph, random_gnp, to_nx

from qlsearch.errors import CapacityError, InputError, ParameterError
from qlsearch.graph import (
    Graph,
    ball,
    exact_mis,
    from_edge_list,
    is_independent_set,
    random_regular,
    to_edge_list,
)


def brute_force_mis_size(g: Graph) -> int:
    for size in range(g.n, -1, -1):
        if any(is_independent_set(g, s) for s in itertools.combinations(range(g.n), size)):
            return size
    return 0


class TestEdgeList:
    def test_simple(self):
        g = from_edge_list("0 1\n1 2")
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]

    def test_duplicates_collapse(self):
        g = from_edge_list("0 1\n0 1\n1 0\n")
        assert g.edges() == [(0, 1)]

    def test_self_loop_names_line(self):
        with pytest.raises(InputError, match="line 2"):
            from_edge_list("0 1\n0 0\n")

    @pytest.mark.parametrize("text", ["0 x", "a", "0 1 2", "-1 2"])
    def test_parse_failures(self, text):
        with pytest.raises(InputError, match="line 1"):
            from_edge_list(text)

    def test_comments_blank_lines_and_gaps(self):
        g = from_edge_list("# header\n\n0 4\n")
        assert g.n == 5
        assert g.adjacency[2] == ()

    def test_single_id_declares_node(self):
        g = from_edge_list("0\n1\n2\n3\n4\n")
        assert g.n == 5 and g.edges() == []

    def test_round_trip(self):
        assert from_edge_list(to_edge_list(petersen_graph())) == petersen_graph()
        g = Graph.from_edges(6, [(1, 2)])
        assert from_edge_list(to_edge_list(g)) == g

    def test_graph_rejects_asymmetric_adjacency(self):
        with pytest.raises(ParameterError):
            Graph(2, ((1,), ()))


class TestRandomRegular:
    def test_k4(self):
        g = random_regular(4, 3, np.random.default_rng(0))
        assert g == complete_graph(4)

    def test_degrees_n6(self):
        g = random_regular(6, 3, np.random.default_rng(7))
        assert [g.degree(u) for u in range(6)] == [3] * 6

    @pytest.mark.parametrize("n,d", [(5, 3), (4, 4), (3, 5)])
    def test_bad_parameters(self, n, d):
        with pytest.raises(ParameterError):
            random_regular(n, d, np.random.default_rng(0))

    def test_degree_and_determinism_over_draws(self):
        for seed in range(100):
            n = 2 * (3 + seed % 20)
            g = random_regular(n, 3, np.random.default_rng(seed))
            assert all(g.degree(u) == 3 for u in range(n))
            assert g == random_regular(n, 3, np.random.default_rng(seed))


class TestBall:
    def test_k4_radius_one(self):
        nb = ball(complete_graph(4), 0, 1)
        assert nb.nodes == (0, 1, 2, 3)
        assert all(nb.interior_mask)

    def test_path_interior(self):
        nb = ball(path_graph(5), 2, 1)
        assert nb.nodes == (2, 1, 3)
        assert nb.interior_mask == (True, False, False)
        assert sorted(nb.local_edges) == [(0, 1), (0, 2)]

    def test_three_regular_radius_two_at_most_ten(self):
        for seed in range(20):
            g = random_regular(20, 3, np.random.default_rng(seed))
            for root in range(g.n):
                assert ball(g, root, 2).m <= 10

    def test_radius_zero(self):
        nb = ball(path_graph(3), 1, 0)
        assert nb.nodes == (1,)
        assert nb.interior_mask == (False,)

    def test_matches_shortest_paths(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            g = random_gnp(rng, int(rng.integers(2, 20)), 0.2)
            root = int(rng.integers(g.n))
            radius = int(rng.integers(0, 4))
            nb = ball(g, root, radius)
            lengths = nx.single_source_shortest_path_length(to_nx(g), root)
            assert set(nb.nodes) == {v for v, d in lengths.items() if d <= radius}
            assert nb.nodes[0] == root
            assert len(set(nb.nodes)) == len(nb.nodes)
            layers = [lengths[v] for v in nb.nodes]
            assert layers == sorted(layers)
            for i, u in enumerate(nb.nodes):
                assert nb.interior_mask[i] == (set(g.adjacency[u]) <= set(nb.nodes))

    def test_bad_root(self):
        with pytest.raises(ParameterError):
            ball(path_graph(3), 3, 1)


class TestIndependence:
    def test_triangle(self):
        k3 = complete_graph(3)
        assert is_independent_set(k3, {0})
        assert not is_independent_set(k3, {0, 1})

    def test_cycle(self):
        assert is_independent_set(cycle_graph(5), {0, 2})
        assert is_independent_set(cycle_graph(5), set())


class TestExactMis:
    def test_small_cases(self):
        assert exact_mis(path_graph(3)) == {0, 2}
        assert len(exact_mis(complete_graph(4))) == 1
        assert exact_mis(complete_graph(4)) == {0}

    def test_petersen(self):
        # brute force over all 2^10 subsets gives 4
        g = petersen_graph()
        assert brute_force_mis_size(g) == 4
        assert len(exact_mis(g)) == 4

    def test_cap(self):
        with pytest.raises(CapacityError):
            exact_mis(Graph.from_edges(25, []))

    def test_lexicographically_smallest(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            g = random_gnp(rng, int(rng.integers(1, 11)), 0.35)
            best = exact_mis(g)
            optimal = [
                s for s in itertools.combinations(range(g.n), len(best)) if is_independent_set(g, s)
            ]
            assert tuple(sorted(best)) == min(optimal)

    def test_optimal_on_random_graphs(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            n = int(rng.integers(1, 25))
            g = random_gnp(rng, n, float(rng.uniform(0.05, 0.6)))
            s = exact_mis(g)
            assert is_independent_set(g, s)
            # no independent superset of size |s|+1 anywhere in the graph
            if n <= 14:
                assert not any(
                    is_independent_set(g, t)
                    for t in itertools.combinations(range(n), len(s) + 1)
                )
            else:
                assert len(s) == len(nx.max_weight_clique(nx.complement(to_nx(g)), weight=None)[0])
