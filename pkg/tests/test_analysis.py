import math

import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as scipy_cc

from hrgsim.analysis import (
    bfs_distances,
    clustering_coefficient,
    component_diameters,
    connected_components,
    degree_statistics,
    fit_power_law_tail,
    graph_distance,
    induced_subgraph,
    merge_diameter_bound,
    verify_path_bound,
)
from hrgsim.boxes import build_dissection, mark_active
from hrgsim.generators import generate_idealized, generate_kpkvb
from hrgsim.geometry import ModelParams

from conftest import graph_from_edges
from oracles import floyd_warshall, fw_component_diameters, union_find_labels, same_partition


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graph_from_edges(n, edges), edges


class TestComponents:
    def test_empty_graph(self):
        g = graph_from_edges(0, [])
        comps = connected_components(g)
        assert comps.n_components == 0

    def test_isolated_vertices(self):
        g = graph_from_edges(5, [])
        comps = connected_components(g)
        assert comps.n_components == 5
        assert np.all(comps.sizes == 1)

    @pytest.mark.parametrize("seed", range(6))
    def test_agrees_with_union_find_oracle(self, seed):
        rng = np.random.default_rng(seed)
        g, edges = random_graph(rng, 60, 0.04)
        mine = connected_components(g).labels
        oracle = union_find_labels(60, edges)
        assert same_partition(mine, oracle)

    def test_agrees_with_scipy(self, rng):
        g, edges = random_graph(rng, 200, 0.01)
        arr = np.asarray(edges)
        mat = csr_matrix(
            (np.ones(len(edges)), (arr[:, 0], arr[:, 1])), shape=(200, 200)
        )
        _, labels = scipy_cc(mat, directed=False)
        assert same_partition(connected_components(g).labels, labels)

    def test_sizes_sum_to_n(self, rng):
        g, _ = random_graph(rng, 120, 0.02)
        comps = connected_components(g)
        assert comps.sizes.sum() == 120
        assert comps.sizes[comps.largest] == comps.sizes.max()


class TestGraphDistance:
    def test_self(self):
        g = graph_from_edges(3, [(0, 1)])
        assert graph_distance(g, 2, 2) == 0

    def test_adjacent(self):
        g = graph_from_edges(3, [(0, 1)])
        assert graph_distance(g, 0, 1) == 1

    def test_path_graph(self):
        k = 9
        g = graph_from_edges(k + 1, [(i, i + 1) for i in range(k)])
        assert graph_distance(g, 0, k) == k

    def test_disconnected_returns_none(self):
        g = graph_from_edges(4, [(0, 1), (2, 3)])
        assert graph_distance(g, 0, 3) is None

    def test_bad_vertex_rejected(self):
        g = graph_from_edges(2, [(0, 1)])
        with pytest.raises(ValueError):
            graph_distance(g, 0, 5)

    def test_matches_floyd_warshall(self, rng):
        g, edges = random_graph(rng, 40, 0.08)
        dist = floyd_warshall(40, edges)
        for u in range(0, 40, 7):
            mine = bfs_distances(g.indptr, g.indices, u, g.n)
            for v in range(40):
                expected = dist[u, v] if dist[u, v] < 10**9 else -1
                assert mine[v] == expected


class TestDiameters:
    def test_complete_graph(self):
        n = 6
        g = graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        assert component_diameters(g).max_diameter == 1

    @pytest.mark.parametrize("n", [5, 8, 13])
    def test_cycle(self, n):
        g = graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])
        assert component_diameters(g).max_diameter == n // 2

    def test_singleton(self):
        g = graph_from_edges(1, [])
        rep = component_diameters(g)
        assert rep.max_diameter == 0 and rep.diameters.tolist() == [0]

    @pytest.mark.parametrize("seed", range(10))
    def test_agrees_with_floyd_warshall(self, seed):
        rng = np.random.default_rng(100 + seed)
        n = int(rng.integers(20, 200))
        g, edges = random_graph(rng, n, rng.uniform(0.01, 0.1))
        diams, max_d = fw_component_diameters(n, edges)
        rep = component_diameters(g)
        assert rep.max_diameter == max_d
        assert sorted(rep.diameters.tolist()) == sorted(diams)

    @pytest.mark.parametrize("seed", range(4))
    def test_certified_equals_all_sources(self, seed):
        g = generate_kpkvb(ModelParams(600, 0.8, 1.3), seed=seed)
        auto = component_diameters(g, method="auto")
        full = component_diameters(g, method="all-sources")
        assert auto.max_diameter == full.max_diameter
        assert np.array_equal(auto.diameters, full.diameters)

    def test_unknown_method_rejected(self):
        g = graph_from_edges(2, [(0, 1)])
        with pytest.raises(ValueError):
            component_diameters(g, method="magic")

    def test_report_dict(self):
        g = graph_from_edges(3, [(0, 1)])
        d = component_diameters(g).to_dict()
        assert d["max_diameter"] == 1
        assert d["n_components"] == 2


class TestMergeBound:
    def test_formula(self):
        # 2*d1 + d2 + 2, checked at a few points
        assert merge_diameter_bound(0, 1) == 3
        assert merge_diameter_bound(0, 2) == 4
        assert merge_diameter_bound(3, 4) == 12

    def test_clique_case(self):
        d1 = 5
        assert merge_diameter_bound(d1, 1) == 2 * d1 + 3

    def test_monotone(self):
        for d1 in range(4):
            for d2 in range(4):
                assert merge_diameter_bound(d1 + 1, d2) > merge_diameter_bound(d1, d2)
                assert merge_diameter_bound(d1, d2 + 1) > merge_diameter_bound(d1, d2)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            merge_diameter_bound(-1, 0)

    @pytest.mark.parametrize("seed", range(30))
    def test_random_split_respects_bound(self, seed):
        # split a random graph into H1 and a connected H2; measure the bound
        rng = np.random.default_rng(seed)
        n = 30
        g, edges = random_graph(rng, n, 0.12)
        comps = connected_components(g)
        # grow a connected H2 from a random seed vertex by BFS order
        root = int(rng.integers(n))
        dist = bfs_distances(g.indptr, g.indices, root, n)
        reach = np.flatnonzero(dist >= 0)
        if reach.size < 2:
            return
        order = reach[np.argsort(dist[reach], kind="stable")]
        take = int(rng.integers(2, reach.size + 1))
        v2 = set(order[:take].tolist())
        h2_mask = np.zeros(n, dtype=bool)
        h2_mask[list(v2)] = True
        h1_mask = ~h2_mask
        h1_mask[list(rng.choice(n, 5))] = True  # overlap allowed
        if not h1_mask.any():
            return
        h1, _ = induced_subgraph(g, h1_mask)
        h2, _ = induced_subgraph(g, h2_mask)
        rep2 = component_diameters(h2)
        if rep2.components.n_components != 1:
            return  # hypothesis of the bound requires connected H2
        if not np.all(h1_mask | h2_mask):
            return
        d1 = component_diameters(h1).max_diameter
        d2 = rep2.max_diameter
        assert component_diameters(g).max_diameter <= merge_diameter_bound(d1, d2)


class TestInducedSubgraph:
    def test_identity_mask(self, rng):
        g, _ = random_graph(rng, 30, 0.1)
        sub, ids = induced_subgraph(g, np.ones(30, dtype=bool))
        assert sub.edge_count == g.edge_count
        assert np.array_equal(ids, np.arange(30))

    def test_edge_filtering(self):
        g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        mask = np.array([True, True, False, True])
        sub, ids = induced_subgraph(g, mask)
        assert sub.n == 3
        assert sub.edge_count == 1  # only (0,1) survives
        assert ids.tolist() == [0, 1, 3]


class TestDegreeStatistics:
    def test_empty(self):
        g = graph_from_edges(0, [])
        stats = degree_statistics(g)
        assert stats.mean_degree == 0.0 and stats.fit is None

    def test_regular_graph_flagged(self):
        n = 60
        g = graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])
        stats = degree_statistics(g)
        assert stats.mean_degree == 2.0
        assert stats.fit is not None and not stats.fit.reliable

    def test_mean_matches_edge_count(self, rng):
        g, edges = random_graph(rng, 100, 0.05)
        stats = degree_statistics(g)
        assert stats.mean_degree == pytest.approx(2 * len(edges) / 100)

    def test_fit_recovers_synthetic_exponent(self):
        # exact inverse-CDF sample from the zeta model with exponent 2.6
        from scipy.special import zeta as _zeta

        rng = np.random.default_rng(5)
        alpha = 2.6
        support = np.arange(1, 50_001)
        ccdf = _zeta(alpha, support) / _zeta(alpha, 1)
        u = rng.random(30_000)
        ks = support[np.searchsorted(-ccdf, -u, side="right") - 1]
        fit = fit_power_law_tail(ks)
        assert fit is not None and fit.reliable
        assert fit.exponent == pytest.approx(alpha, abs=0.1)

    def test_too_few_samples(self):
        assert fit_power_law_tail(np.array([3, 4, 5])) is None


class TestClustering:
    def test_triangle(self):
        g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert clustering_coefficient(g) == 1.0

    def test_star(self):
        g = graph_from_edges(5, [(0, i) for i in range(1, 5)])
        assert clustering_coefficient(g) == 0.0

    def test_triangle_with_pendant(self):
        g = graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        # vertices 0,1 closed; vertex 2 has 1 of 3 wedges closed; vertex 3 skipped
        assert clustering_coefficient(g) == pytest.approx((1 + 1 + 1 / 3) / 3)

    def test_model_graph_clustered(self):
        g = generate_kpkvb(ModelParams(5000, 0.8, 1.3), seed=1)
        assert clustering_coefficient(g) >= 0.1


class TestPathBoundVerifier:
    def test_no_violations_on_truncated_instance(self, rng):
        radius = ModelParams(3000, 0.8, 1.3).radius
        g = generate_idealized(0.8, 0.331, radius, seed=11)
        d = build_dissection(radius)
        act = mark_active(d, g)
        keep = g.strip[:, 1] < (d.ell_tilde + 1) * math.log(2)
        sub, _ = induced_subgraph(g, keep)
        violations = verify_path_bound(sub, act, d, n_pairs=200, rng=rng)
        assert violations == []

    def test_empty_graph(self, rng):
        radius = ModelParams(3000, 0.8, 1.3).radius
        g = generate_idealized(0.8, 1e-12, radius, seed=0)
        d = build_dissection(radius)
        act = mark_active(d, g)
        assert verify_path_bound(g, act, d, n_pairs=10, rng=rng) == []
