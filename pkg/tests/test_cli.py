import json
import math

import pytest

from ginsum.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_mixed_instance(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--h1", "2", "--h2", "0.5", "--p1", "1", "--p2", "1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["regime"] == "MI1"
        assert doc["sufficient_messages"] == ["W1", "U2"]
        assert doc["sum_capacity"] == pytest.approx(1.292481250360578, abs=1e-12)

    def test_li_tin_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--h1", "0.1", "--h2", "0.1", "--p1", "1", "--p2", "1"
        )
        assert code == 0
        assert json.loads(out)["flags"]["li_tin_optimal"] is True

    def test_invalid_params_exit2(self, capsys):
        code, _, err = run_cli(
            capsys, "classify", "--h1", "-1", "--h2", "0.5", "--p1", "1", "--p2", "1"
        )
        assert code == 2
        assert "error" in err

    def test_json_roundtrip(self, capsys):
        _, out, _ = run_cli(
            capsys, "classify", "--h1", "1.3", "--h2", "0.7", "--p1", "2", "--p2", "3"
        )
        doc = json.loads(out)
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


class TestOptimize:
    def test_mixed_hits_mac(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimize", "--h1", "2", "--h2", "0.5", "--p1", "1", "--p2", "1",
            "--workers", "1",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["best_value"] == pytest.approx(1.292481250360578, abs=1e-9)
        assert doc["lp_value_at_best_split"] == pytest.approx(doc["best_value"], abs=1e-9)
        assert doc["bounds"]["min"] == pytest.approx(doc["best_value"], abs=1e-12)

    def test_restricted_tin(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimize", "--h1", "0.1", "--h2", "0.1", "--p1", "1", "--p2", "1",
            "--restrict", "U1,U2", "--workers", "1",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["best_value"] == pytest.approx(math.log2(1 + 1 / 1.01), abs=1e-9)
        assert doc["restrict"] == ["U1", "U2"]

    def test_decoupled(self, capsys):
        code, out, _ = run_cli(
            capsys, "optimize", "--h1", "0", "--h2", "0", "--p1", "1", "--p2", "1",
            "--workers", "1",
        )
        assert json.loads(out)["best_value"] == pytest.approx(1.0, abs=1e-9)

    def test_bad_restrict_exit2(self, capsys):
        code, _, err = run_cli(
            capsys, "optimize", "--h1", "1", "--h2", "1", "--p1", "1", "--p2", "1",
            "--restrict", "U1,XX",
        )
        assert code == 2


class TestConstraints:
    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "constraints", "--h1", "0.5", "--h2", "0.5", "--p1", "1", "--p2", "1",
            "--split", "1,0,0,1,0,0",
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["constraints"]) == 30
        full_rx1 = doc["constraints"][14]
        assert full_rx1["subset"] == ["U1", "V1", "V2", "W2"]
        assert full_rx1["rhs"] == pytest.approx(0.5 * math.log2(1.8), abs=1e-12)
        assert "t1" in doc["bounds"] and "min" in doc["bounds"]

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "constraints", "--h1", "0.5", "--h2", "0.5", "--p1", "1", "--p2", "1",
            "--split", "1,0,0,1,0,0", "--format", "csv",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# constraint order:")
        assert lines[1] == "receiver,subset,rhs"
        assert len([l for l in lines if not l.startswith("#")]) == 31
        # Zero-power messages show rhs 0.
        assert "1,V1,0" in out
        assert any(l.startswith("# min_bound = ") for l in lines)
        assert any(l.startswith("# lp_value = ") for l in lines)

    def test_invalid_split_exit2(self, capsys):
        code, _, _ = run_cli(
            capsys, "constraints", "--h1", "1", "--h2", "1", "--p1", "1", "--p2", "1",
            "--split", "0.5,0.5,0.5,1,0,0",
        )
        assert code == 2


class TestSweep:
    def test_csv_3x3(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--h1-range", "0.5:2:3", "--h2-range", "0.5:2:3",
            "--p1", "1", "--p2", "1", "--workers", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "h1,h2,regime,max_sum_rate,active_messages,subregions,capacity_known"
        assert len(lines) == 10
        # h1-major ordering and LI where both gains <= 1
        first = lines[1].split(",")
        assert first[0] == "0.5" and first[1] == "0.5" and first[2] == "LI"

    def test_deterministic_bytes(self, capsys, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        for out in (out1, out2):
            code, _, _ = run_cli(
                capsys, "sweep", "--h1-range", "0.2:1.8:2", "--h2-range", "0.2:1.8:2",
                "--p1", "2", "--p2", "0.5", "--out", str(out), "--workers", "2",
            )
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_svg_written(self, capsys, tmp_path):
        svg = tmp_path / "m.svg"
        code, _, _ = run_cli(
            capsys, "sweep", "--h1-range", "0.5:2:2", "--h2-range", "0.5:2:2",
            "--p1", "1", "--p2", "1", "--svg", str(svg), "--out", str(tmp_path / "x.csv"),
            "--workers", "1",
        )
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<?xml")
        assert 'version="1.1"' in text
        assert "min " in text and "max " in text

    def test_bad_range_exit2(self, capsys):
        code, _, _ = run_cli(
            capsys, "sweep", "--h1-range", "2:1:3", "--h2-range", "0.5:2:3",
            "--p1", "1", "--p2", "1",
        )
        assert code == 2
        code, _, _ = run_cli(
            capsys, "sweep", "--h1-range", "0.5:2:1", "--h2-range", "0.5:2:3",
            "--p1", "1", "--p2", "1",
        )
        assert code == 2

    def test_write_failure_leaves_no_partial_file(self, capsys, tmp_path):
        target = tmp_path / "missing" / "out.csv"
        code, _, err = run_cli(
            capsys, "sweep", "--h1-range", "0.5:2:2", "--h2-range", "0.5:2:2",
            "--p1", "1", "--p2", "1", "--out", str(target), "--workers", "1",
        )
        assert code == 1
        assert "i/o error" in err
        assert not target.exists()
        assert not target.with_suffix(".csv.tmp").exists()


class TestVerify:
    def test_single_suite_passes(self, capsys):
        code, out, err = run_cli(
            capsys, "verify", "--suite", "t3", "--trials", "2000", "--seed", "7",
            "--workers", "1",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["failures_total"] == 0
        assert len(doc["reports"]) == 1
        assert "elapsed" in err

    def test_all_suites(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--suite", "all", "--trials", "20", "--seed", "1",
            "--workers", "1",
        )
        assert code == 0
        assert len(json.loads(out)["reports"]) == 5

    def test_unknown_suite_exit2(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--suite", "bogus")
        assert code == 2
