import numpy as np
import pytest
from conftest import complete_graph, path_graph, random_gnp

from qlsearch.ansatz import AnsatzParams, build_plan, eligible_mixer_nodes, evaluate
from qlsearch.errors import ParameterError
from qlsearch.graph import Graph, ball, random_regular


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def identity_rng():
    class _Identity:
        def permutation(self, n):
            return np.arange(n)

    return _Identity()


class TestEligibility:
    def test_three_regular_radius_two_average(self):
        # roughly 10 qubits per ball, about 4 with every neighbor inside
        sizes, counts = [], []
        for seed in range(20):
            g = random_regular(60, 3, np.random.default_rng(seed))
            for root in range(g.n):
                nb = ball(g, root, 2)
                sizes.append(nb.m)
                counts.append(len(eligible_mixer_nodes(nb)))
        assert 9.0 <= np.mean(sizes) <= 10.0
        assert abs(np.mean(counts) - 4) < 0.5

    def test_whole_graph_all_eligible_except_clamped(self):
        g = path_graph(5)
        nb = ball(g, 0, 10)
        assert eligible_mixer_nodes(nb) == [0, 1, 2, 3, 4]
        assert eligible_mixer_nodes(nb, clamped_ones={2}) == [0, 1, 3, 4]

    def test_budget_excludes_high_degree_center(self):
        nb = ball(star(5), 0, 1)
        assert 0 in eligible_mixer_nodes(nb, control_budget=5)
        assert eligible_mixer_nodes(nb, control_budget=4) == [1, 2, 3, 4, 5]

    def test_bfs_order(self):
        nb = ball(path_graph(7), 3, 2)
        assert [nb.nodes[i] for i in eligible_mixer_nodes(nb)] == [3, 2, 4]


class TestBuildPlan:
    def test_prefix_then_permutation(self, rng):
        nb = ball(path_graph(8), 0, 7)
        plan = build_plan(nb, [0, 1, 2, 3, 5], 3, rng)
        assert sorted(plan.active) == [0, 1, 2]
        assert plan.controls == tuple(nb.local_neighbors[t] for t in plan.active)

    def test_k_exceeds_eligible(self, rng):
        nb = ball(path_graph(8), 0, 7)
        assert sorted(build_plan(nb, [4, 1, 6], 10, rng).active) == [1, 4, 6]

    def test_k_one_targets_root(self, rng):
        nb = ball(path_graph(5), 2, 2)
        plan = build_plan(nb, eligible_mixer_nodes(nb), 1, rng)
        assert plan.active == (0,)

    def test_permutations_vary(self):
        nb = ball(complete_graph(6), 0, 1)
        orders = {build_plan(nb, list(range(6)), 6, np.random.default_rng(s)).active for s in range(30)}
        assert len(orders) > 10

    def test_k_zero(self, rng):
        with pytest.raises(ParameterError):
            build_plan(ball(path_graph(2), 0, 1), [0], 0, rng)


class TestEvaluate:
    def test_zero_angles_zero_energy(self, rng):
        nb = ball(path_graph(5), 2, 2)
        plan = build_plan(nb, eligible_mixer_nodes(nb), 3, rng)
        energy, psi = evaluate(nb, plan, AnsatzParams(1.2, (0.0,) * 3))
        assert energy == 0.0
        assert abs(abs(psi[0]) - 1) < 1e-15

    def test_zero_angles_with_clamps(self, rng):
        nb = ball(path_graph(5), 2, 2)
        clamped = [1, 2]  # local indices of nodes 1 and 3
        plan = build_plan(nb, eligible_mixer_nodes(nb, clamped), 3, rng)
        energy, _ = evaluate(nb, plan, AnsatzParams(0.4, (0.0,) * len(plan.active)), clamped)
        assert energy == 2.0

    def test_single_node_quarter_turn(self, rng):
        nb = ball(Graph.from_edges(1, []), 0, 1)
        plan = build_plan(nb, eligible_mixer_nodes(nb), 1, rng)
        energy, psi = evaluate(nb, plan, AnsatzParams(0.0, (np.pi / 2,)))
        assert energy == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(psi, [0, -1j], atol=1e-15)

    def test_param_length_mismatch(self, rng):
        nb = ball(path_graph(3), 1, 1)
        plan = build_plan(nb, eligible_mixer_nodes(nb), 1, rng)
        with pytest.raises(ParameterError):
            evaluate(nb, plan, AnsatzParams(0.0, (0.1, 0.2)))

    def test_periodicity(self, rng):
        for _ in range(30):
            g = random_regular(12, 3, rng)
            nb = ball(g, int(rng.integers(g.n)), 2)
            plan = build_plan(nb, eligible_mixer_nodes(nb), 5, rng)
            x = rng.uniform(0, 2 * np.pi, size=plan.num_params)
            e0, _ = evaluate(nb, plan, AnsatzParams.from_vector(x))
            shift = 2 * np.pi * rng.integers(-3, 4, size=x.size)
            e1, _ = evaluate(nb, plan, AnsatzParams.from_vector(x + shift))
            assert abs(e0 - e1) < 1e-10

    def test_deterministic_with_identity_order(self):
        g = random_regular(16, 3, np.random.default_rng(1))
        nb = ball(g, 0, 2)
        elig = eligible_mixer_nodes(nb)
        params = AnsatzParams(0.3, tuple(np.linspace(0.1, 1.0, len(elig))))
        a = evaluate(nb, build_plan(nb, elig, len(elig), identity_rng()), params)
        b = evaluate(nb, build_plan(nb, elig, len(elig), identity_rng()), params)
        assert a[0] == b[0]
        assert np.array_equal(a[1], b[1])

    def test_support_stays_feasible(self, rng):
        for _ in range(60):
            g = random_gnp(rng, int(rng.integers(4, 16)), 0.25)
            nb = ball(g, int(rng.integers(g.n)), 2)
            if nb.m > 10:
                continue
            # clamp a random independent set of the ball
            clamped = []
            for i in rng.permutation(nb.m):
                if rng.random() < 0.3 and all(j not in clamped for j in nb.local_neighbors[i]):
                    clamped.append(int(i))
            plan = build_plan(nb, eligible_mixer_nodes(nb, clamped), nb.m, rng)
            params = AnsatzParams.from_vector(rng.uniform(0, 2 * np.pi, size=plan.num_params))
            _, psi = evaluate(nb, plan, params, clamped)
            bad = sum(
                abs(psi[b]) ** 2
                for b in range(1 << nb.m)
                if any(b >> u & 1 and b >> v & 1 for u, v in nb.local_edges)
            )
            assert bad < 1e-10
