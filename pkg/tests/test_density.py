from fractions import Fraction

import pytest

from lapsum.density import (
    Orientation,
    OrientationInfeasible,
    SizeCapError,
    density,
    k_orientation,
    partition_density,
    partition_density_bracket,
    peel_to_low_partition_density,
    random_k_orientation,
)
from lapsum.graphs import (
    Graph,
    GraphError,
    disjoint_union,
    graph_from_edges,
    make_family,
)

from conftest import sampled_graphs, small_graphs
from oracles import edges_inside, oracle_density, oracle_nu_ell, oracle_partition_density


class TestDensity:
    def test_complete_graph(self):
        wit = density(make_family("complete:4"))
        assert wit.value == Fraction(3, 2)
        assert wit.subset == frozenset(range(4))

    def test_star(self):
        wit = density(make_family("star:7"))
        assert wit.value == Fraction(6, 7)

    def test_witness_achieves_value(self):
        for g in sampled_graphs(60, 7, seed=2):
            wit = density(g)
            if wit.value > 0:
                assert Fraction(edges_inside(g, wit.subset), len(wit.subset)) == wit.value

    def test_matches_oracle_exhaustively(self, exhaustive_n4):
        for g in exhaustive_n4:
            assert density(g).value == oracle_density(g)

    def test_empty_graph(self):
        assert density(Graph(3, ())).value == 0


class TestPartitionDensity:
    def test_triangle_pair(self):
        g = disjoint_union(make_family("complete:3"), make_family("complete:3"))
        wit = partition_density(g)
        assert wit.value == Fraction(2)
        assert wit.attained_part_size == 3
        assert len(wit.parts) == 2

    def test_path_alternating_edges(self):
        # P9 packs 4 disjoint edges into parts of size 2
        assert partition_density(make_family("path:9")).value == Fraction(2)

    def test_complete_bipartite_below_left_size(self):
        assert partition_density(make_family("complete-bipartite:3,5")).value < 3

    def test_parts_partition_vertices(self):
        for g in sampled_graphs(40, 7, seed=3):
            wit = partition_density(g)
            seen = sorted(v for p in wit.parts for v in p)
            assert seen == list(range(g.n))

    def test_matches_oracle_exhaustively(self, exhaustive_n4):
        for g in exhaustive_n4:
            assert partition_density(g).value == oracle_partition_density(g)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            partition_density(Graph(21, ()))

    def test_bracket_contains_exact_value(self):
        for g in sampled_graphs(40, 7, seed=4):
            lo, hi = partition_density_bracket(g)
            exact = partition_density(g).value
            assert lo <= exact <= hi


class TestOrientation:
    def test_cycle_one_orientation(self):
        ori = k_orientation(make_family("cycle:5"), 1)
        assert isinstance(ori, Orientation)
        assert ori.max_indegree() == 1

    def test_k4_needs_two(self):
        g = make_family("complete:4")
        bad = k_orientation(g, 1)
        assert isinstance(bad, OrientationInfeasible)
        assert bad.edges_inside > len(bad.subset)
        good = k_orientation(g, 2)
        assert isinstance(good, Orientation)

    def test_infeasible_iff_density_exceeds_k(self):
        for g in sampled_graphs(60, 7, seed=5):
            rho = density(g).value
            for k in (1, 2, 3):
                res = k_orientation(g, k)
                if rho <= k:
                    assert isinstance(res, Orientation)
                    assert res.max_indegree() <= k
                else:
                    assert isinstance(res, OrientationInfeasible)
                    assert res.edges_inside > k * len(res.subset)

    def test_orientation_validates_heads(self):
        g = graph_from_edges(3, [(0, 1), (1, 2)])
        with pytest.raises(GraphError):
            Orientation(g, (2, 1))
        with pytest.raises(GraphError):
            Orientation(g, (0,))

    def test_arcs_and_in_neighbors_consistent(self):
        g = make_family("path:4")
        ori = k_orientation(g, 1)
        ins = ori.in_neighbors()
        for tail, head in ori.arcs():
            assert tail in ins[head]

    def test_random_orientation_seeded(self):
        g = make_family("complete:5")
        a = random_k_orientation(g, 2, seed=1)
        b = random_k_orientation(g, 2, seed=1)
        assert a.heads == b.heads
        assert a.max_indegree() <= 2
        heads = {random_k_orientation(g, 2, seed=s).heads for s in range(6)}
        assert len(heads) > 1  # seeds explore different orientations

    def test_random_orientation_infeasible_raises(self):
        with pytest.raises(GraphError):
            random_k_orientation(make_family("complete:4"), 1, seed=0)


class TestPeeling:
    def test_complete_graph_peels_everything(self):
        g = make_family("complete:5")
        h, log = peel_to_low_partition_density(g, 2)
        assert h.m == 0 and len(log) == 1
        assert log[0].value == Fraction(2)

    def test_invariants_on_small_graphs(self):
        for g in small_graphs(4):
            for k in (1, 2):
                h, log = peel_to_low_partition_density(g, k)
                assert partition_density(h).value < k
                for step in log:
                    assert len(step.removed_edges) >= k * step.n_prime
                    assert step.value >= k
                # vertices never removed
                assert h.n == g.n

    def test_peeled_nu_ell_is_bounded(self):
        for g in small_graphs(4):
            for k in (1, 2):
                h, _ = peel_to_low_partition_density(g, k)
                for ell in (1, 2):
                    assert oracle_nu_ell(h, ell) < (1 + 1 / ell) * k
