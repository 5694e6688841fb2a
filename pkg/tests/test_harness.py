import json

import pytest

from lapsum.graphs import GraphSource, encode_graph6, make_family
from lapsum.harness import (
    EQUALITY_TOL,
    KRange,
    ScanReport,
    parse_krange,
    probe_table_csv,
    scan,
    tightness_probe,
)


def single(g):
    return GraphSource("single", graph=g)


class TestKRange:
    def test_all(self):
        assert KRange("all").values(4) == (1, 2, 3, 4)

    def test_list_allows_k_beyond_n(self):
        assert KRange("list", (2, 9)).values(4) == (2, 9)

    def test_nminus2(self):
        assert KRange("nminus2").values(6) == (1, 2, 3, 4)
        assert KRange("nminus2").values(2) == ()

    def test_validation(self):
        with pytest.raises(ValueError):
            KRange("weird")
        with pytest.raises(ValueError):
            KRange("list", ())
        with pytest.raises(ValueError):
            KRange("list", (0,))

    def test_parse(self):
        assert parse_krange("all") == KRange("all")
        assert parse_krange("nminus2") == KRange("nminus2")
        assert parse_krange("1,3") == KRange("list", (1, 3))
        with pytest.raises(ValueError):
            parse_krange("1,x")


class TestScan:
    def test_counts_small_exhaustive(self):
        rep = scan(GraphSource("all-labeled", n=4), ["brouwer"], KRange("all"))
        assert rep.graphs == 64
        assert rep.checks == 64 * 4
        assert rep.violation_count == 0

    def test_theorem_bounds_no_violations_n4(self):
        rep = scan(
            GraphSource("all-labeled", n=4),
            ["bai", "cover", "star-arb", "half-component", "matching-thm",
             "matching-sq", "weak-brouwer"],
            KRange("all"),
        )
        assert rep.violation_count == 0
        # min slack respects the report invariant
        for agg in rep.aggregates.values():
            assert agg.violations == 0
            if agg.min_slack != float("inf"):
                assert agg.min_slack >= -1e-6

    def test_deterministic_across_worker_counts(self):
        src = GraphSource("all-labeled", n=4)
        bounds = ["brouwer", "bai", "matching-thm"]
        a = scan(src, bounds, KRange("all"), jobs=1).to_json_dict()
        b = scan(src, bounds, KRange("all"), jobs=3).to_json_dict()
        a.pop("runtime_ms")
        b.pop("runtime_ms")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_sa_skip_record_for_large_graphs(self):
        g = make_family("complete:9")  # 36 edges, beyond the exact-sa cap
        rep = scan(single(g), ["star-arb", "brouwer"], KRange("list", (1,)))
        assert len(rep.skipped) == 1
        assert rep.skipped[0]["bound"] == "star-arb"
        assert "cap" in rep.skipped[0]["reason"]
        # the other bound still ran
        assert rep.aggregates[("brouwer", 1)].checked == 1

    def test_json_shape(self):
        rep = scan(single(make_family("complete:4")), ["brouwer"], KRange("all"))
        doc = rep.to_json_dict()
        assert doc["schema"] == 1
        assert set(doc) == {
            "schema", "source", "bounds", "totals", "violations",
            "equalities", "skipped", "runtime_ms",
        }
        assert doc["totals"]["graphs"] == 1
        json.dumps(doc)  # serializable

    def test_csv_shape(self):
        rep = scan(single(make_family("complete:4")), ["brouwer"], KRange("all"))
        lines = rep.to_csv().strip().splitlines()
        assert lines[0] == "bound,k,checked,violations,equalities,min_slack"
        assert len(lines) == 5

    def test_equality_examples_recorded(self):
        # K5, matching-thm, k=4 is a known equality case
        rep = scan(single(make_family("complete:5")), ["matching-thm"], KRange("all"))
        eqs = [e for e in rep.equality_examples if e["k"] == 4]
        assert len(eqs) == 1
        assert abs(eqs[0]["slack"]) <= EQUALITY_TOL

    def test_max_eps_ratio_logged(self):
        rep = scan(single(make_family("complete:5")), ["brouwer"], KRange("all"))
        assert rep.max_eps_over_k2 > 0

    def test_empty_bounds_rejected(self):
        with pytest.raises(ValueError):
            scan(GraphSource("all-labeled", n=3), [], KRange("all"))
        with pytest.raises(KeyError):
            scan(GraphSource("all-labeled", n=3), ["nope"], KRange("all"))

    def test_violation_invariant(self):
        # all theorem aggregates: violations empty <=> min slack >= -1e-6
        rep = scan(GraphSource("all-labeled", n=3), ["bai", "cover"], KRange("all"))
        assert rep.violations == []
        assert all(a.min_slack >= -1e-6 for a in rep.aggregates.values())


class TestProbe:
    def test_complete_graph_equalities(self):
        rows = tightness_probe(
            [f"complete:{n}" for n in (3, 5, 7)], "matching-thm"
        )
        for n in (3, 5, 7):
            row = next(
                r for r in rows if r.family == f"complete:{n}" and r.k == n - 1
            )
            assert row.equality, row

    def test_star_k1_equalities(self):
        rows = tightness_probe(
            [f"star:{n}" for n in range(2, 11)], "matching-thm", KRange("list", (1,))
        )
        assert all(r.equality for r in rows)

    def test_split_family_conj_cover(self):
        rows = tightness_probe(["split-s:6,2"], "conj-cover")
        for r in rows:
            if 2 <= r.k <= 5:
                assert r.applicable and r.equality, r

    def test_csv_output(self):
        rows = tightness_probe(["complete:4"], "brouwer", KRange("list", (1,)))
        csv = probe_table_csv(rows)
        assert csv.startswith("family,graph6,k,")
        assert "complete:4" in csv
