import json

import pytest

from lapsum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSingleGraphCommands:
    def test_stararbor_triangle(self, capsys):
        code, out, _ = run(capsys, "stararbor", "--graph6", "Bw")
        assert code == 0 and out.strip() == "2"

    def test_eps_star(self, capsys):
        code, out, _ = run(capsys, "eps", "--family", "star:6", "--k", "1")
        assert code == 0 and float(out.strip()) == pytest.approx(1.0)

    def test_spectrum_csv_row(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--graph6", "Bw")
        parts = out.strip().split(",")
        assert code == 0
        assert parts[:3] == ["Bw", "3", "3"]
        assert float(parts[3]) == pytest.approx(3.0)

    def test_density_json(self, capsys):
        code, out, _ = run(
            capsys, "density", "--family", "complete:4", "--format", "json"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["density"] == {"num": 3, "den": 2}

    def test_parden_and_bracket(self, capsys):
        code, out, _ = run(capsys, "parden", "--family", "complete:4", "--format", "json")
        assert code == 0 and json.loads(out)["partition_density"] == {"num": 3, "den": 2}

    def test_orient_feasible_and_not(self, capsys):
        code, out, _ = run(
            capsys, "orient", "--family", "cycle:5", "--k", "1", "--format", "json"
        )
        assert code == 0 and json.loads(out)["feasible"] is True
        code, out, _ = run(
            capsys, "orient", "--family", "complete:4", "--k", "1", "--format", "json"
        )
        assert code == 0 and json.loads(out)["feasible"] is False

    def test_match_cover_oddcover_arbor(self, capsys):
        code, out, _ = run(capsys, "match", "--family", "cycle:5", "--format", "json")
        assert code == 0 and json.loads(out)["nu"] == 2
        code, out, _ = run(capsys, "cover", "--family", "cycle:5", "--format", "json")
        assert code == 0 and json.loads(out)["tau"] == 3
        code, out, _ = run(capsys, "oddcover", "--graph6", "Bw", "--format", "json")
        assert code == 0 and json.loads(out)["weight"] == 1
        code, out, _ = run(capsys, "arbor", "--family", "complete:4", "--format", "json")
        assert code == 0 and json.loads(out)["arboricity"] == 2

    def test_structure_and_pipeline(self, capsys):
        code, out, _ = run(
            capsys, "structure", "--family", "star:9", "--k", "1", "--format", "json"
        )
        assert code == 0 and json.loads(out)["C"] == [0]
        code, out, _ = run(
            capsys, "pipeline", "--family", "star:9", "--k", "2", "--format", "json"
        )
        doc = json.loads(out)
        assert code == 0 and doc["route"] == "2a"

    def test_file_inputs(self, tmp_path, capsys):
        p = tmp_path / "g.txt"
        p.write_text("3 2\n0 1\n1 2\n")
        code, out, _ = run(capsys, "match", "--file", str(p), "--format", "json")
        assert code == 0 and json.loads(out)["nu"] == 1
        p6 = tmp_path / "g.g6"
        p6.write_text("Bw\n")
        code, out, _ = run(capsys, "stararbor", "--file", str(p6))
        assert code == 0 and out.strip() == "2"


class TestExitCodes:
    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "eps", "--family", "star:6")  # missing --k
        assert code == 2 and "error:" in err

    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 2

    def test_bad_graph6(self, capsys):
        code, _, err = run(capsys, "match", "--graph6", "B")
        assert code == 2 and err.startswith("error:")

    def test_size_cap_exit_3(self, capsys):
        code, _, err = run(capsys, "stararbor", "--family", "complete:9")
        assert code == 3 and err.startswith("error:")

    def test_parden_cap_exit_3(self, capsys):
        code, _, err = run(capsys, "parden", "--family", "complete:21")
        assert code == 3


class TestScanCommand:
    def test_scan_clean_exit_0(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--all-labeled", "4", "--bound", "brouwer",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1 and doc["totals"]["violations"] == 0

    def test_scan_csv_and_out_file(self, tmp_path, capsys):
        out_path = tmp_path / "report.csv"
        code, out, _ = run(
            capsys, "scan", "--all-labeled", "3", "--bound", "bai,cover",
            "--format", "csv", "--out", str(out_path),
        )
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("bound,k,")

    def test_scan_k_list(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--all-labeled", "3", "--bound", "brouwer",
            "--k", "1,2", "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0 and doc["totals"]["checks"] == 8 * 2

    def test_scan_gnp_source(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--gnp", "8", "0.5", "5", "3", "--bound", "bai",
            "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0 and doc["totals"]["graphs"] == 5

    def test_scan_bad_bound(self, capsys):
        code, _, err = run(
            capsys, "scan", "--all-labeled", "3", "--bound", "nope"
        )
        assert code == 2 and "error:" in err


class TestProbeCommand:
    def test_probe_csv(self, capsys):
        code, out, _ = run(
            capsys, "probe", "--family", "complete:5", "--bound", "matching-thm",
            "--k", "4",
        )
        assert code == 0
        line = [l for l in out.splitlines() if l.startswith("complete:5")][0]
        assert line.rstrip().endswith(",1")  # equality flag

    def test_probe_json_multiple_families(self, capsys):
        code, out, _ = run(
            capsys, "probe", "--family", "star:3", "--family", "star:4",
            "--bound", "matching-thm", "--k", "1", "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0 and len(doc) == 2
        assert all(row["equality"] for row in doc)
