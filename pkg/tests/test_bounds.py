import math

import pytest

from lapsum.bounds import (
    BOUND_TAGS,
    CONJECTURE_TAGS,
    THEOREM_TAGS,
    MissingAuxError,
    aux_requirements,
    bound_spec,
    evaluate_bound,
)
from lapsum.decomposition import star_arboricity_exact
from lapsum.graphs import (
    components_info,
    conjugate_degrees,
    is_bipartite,
    make_family,
    non_isolated_count,
)
from lapsum.matching import matching_number, min_vertex_cover
from lapsum.spectral import eps_profile

from oracles import oracle_eps


def full_aux(g):
    return {
        "eps": eps_profile(g),
        "conj_degrees": conjugate_degrees(g),
        "bipartite": is_bipartite(g),
        "n_prime": components_info(g)[1],
        "non_isolated": non_isolated_count(g),
        "nu": matching_number(g),
        "tau": len(min_vertex_cover(g)),
        "sa": star_arboricity_exact(g)[0],
    }


class TestRegistry:
    def test_tags_partition(self):
        assert set(BOUND_TAGS) == set(CONJECTURE_TAGS) | set(THEOREM_TAGS)
        assert set(CONJECTURE_TAGS) == {"brouwer", "conj-matching-improved", "conj-cover"}

    def test_unknown_tag(self):
        with pytest.raises(KeyError):
            bound_spec("nope")

    def test_aux_requirements_union(self):
        needs = aux_requirements(["matching-thm", "cover", "bipartite-sq"])
        assert needs == {"nu", "tau", "bipartite"}

    def test_missing_aux_raises(self):
        g = make_family("complete:3")
        with pytest.raises(MissingAuxError):
            evaluate_bound("cover", g, 1, {})


class TestRhsFormulas:
    def test_brouwer_rhs(self):
        g = make_family("complete:4")
        res = evaluate_bound("brouwer", g, 3, {})
        assert res.rhs == 6  # C(4,2)

    def test_bai_rhs_uses_conjugate_degrees(self):
        g = make_family("star:4")
        aux = {"conj_degrees": conjugate_degrees(g)}
        res = evaluate_bound("bai", g, 2, aux)
        assert res.rhs == (4 + 1) - 3

    def test_bai_k_beyond_n(self):
        g = make_family("complete:3")
        aux = {"conj_degrees": conjugate_degrees(g)}
        res = evaluate_bound("bai", g, 5, aux)
        assert res.rhs == g.m and res.lhs == g.m

    def test_weak_brouwer_rhs(self):
        g = make_family("complete:3")
        res = evaluate_bound("weak-brouwer", g, 2, {})
        assert res.rhs == pytest.approx(4 + 30 * math.log(2) + 130)

    def test_matching_rhs(self):
        g = make_family("complete:5")
        res = evaluate_bound("matching-thm", g, 3, {"nu": 2})
        assert res.rhs == 3 * 2 + 1

    def test_square_bounds(self):
        g = make_family("complete:5")
        assert evaluate_bound("matching-sq", g, 3, {}).rhs == 18 - 2
        aux = {"bipartite": True}
        gb = make_family("complete-bipartite:2,3")
        assert evaluate_bound("bipartite-sq", gb, 3, aux).rhs == 18 - 3

    def test_half_component_rhs_floors(self):
        g = make_family("complete:5")
        res = evaluate_bound("half-component", g, 3, {"n_prime": 5})
        assert res.rhs == 7  # floor(15/2)

    def test_conj_cover_rhs(self):
        g = make_family("star:6")
        res = evaluate_bound("conj-cover", g, 3, {"tau": 1})
        assert res.rhs == 3 * 1 - 0


class TestApplicability:
    def test_bipartite_only(self):
        g = make_family("complete:3")
        res = evaluate_bound("bipartite-sq", g, 1, {"bipartite": False})
        assert not res.applicable and res.holds and math.isnan(res.rhs)

    def test_conj_matching_k_window(self):
        g = make_family("complete:5")
        aux = {"nu": 2, "non_isolated": 5}
        assert evaluate_bound("conj-matching-improved", g, 3, aux).applicable
        assert not evaluate_bound("conj-matching-improved", g, 4, aux).applicable

    def test_conj_cover_needs_k_at_least_tau(self):
        g = make_family("complete:4")
        aux = {"tau": 3}
        assert not evaluate_bound("conj-cover", g, 2, aux).applicable
        assert evaluate_bound("conj-cover", g, 3, aux).applicable

    def test_bad_k(self):
        with pytest.raises(ValueError):
            evaluate_bound("brouwer", make_family("complete:3"), 0, {})


class TestHoldsOnKnownCases:
    def test_star_k1_all_theorems(self):
        g = make_family("star:6")
        aux = full_aux(g)
        for tag in THEOREM_TAGS:
            res = evaluate_bound(tag, g, 1, aux)
            assert res.holds, tag

    def test_matching_equality_on_odd_complete(self):
        g = make_family("complete:5")
        res = evaluate_bound("matching-thm", g, 4, full_aux(g))
        assert abs(res.slack) <= 1e-6

    def test_conj_cover_equality_on_split_family(self):
        g = make_family("split-s:6,2")
        res = evaluate_bound("conj-cover", g, 3, full_aux(g))
        assert res.applicable and abs(res.slack) <= 1e-6

    def test_lhs_matches_independent_eigensolver(self):
        for fam in ("complete:6", "cycle:7", "star:8", "complete-bipartite:3,4"):
            g = make_family(fam)
            for k in (1, 2, g.n - 1):
                res = evaluate_bound("brouwer", g, k, {})
                assert res.lhs == pytest.approx(oracle_eps(g, k), abs=1e-7)

    def test_theorems_hold_exhaustively_n4(self, exhaustive_n4):
        for g in exhaustive_n4:
            aux = full_aux(g)
            for tag in THEOREM_TAGS:
                for k in range(1, g.n + 1):
                    assert evaluate_bound(tag, g, k, aux).holds, (g, tag, k)
