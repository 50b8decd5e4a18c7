"""
Tests for the kgframes command line.
"""

import json

import pytest

from cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from tests.test_scenario import document


@pytest.fixture
def minimal_scenario(tmp_path):
    path = tmp_path / "minimal.json"
    path.write_text(document(), encoding="utf-8")
    return path


def test_check_minimal(minimal_scenario, capsys):
    assert main(["check", str(minimal_scenario)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("kind: frame-check\n")
    assert "consistent: yes" in out


def test_check_structured(minimal_scenario, capsys):
    assert main(["check", str(minimal_scenario), "--format", "structured"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["values"]["is_kg_frame"] is True
    assert data["values"]["optimal_lower"] == pytest.approx(1.0)


def test_check_non_frame_exits_one(tmp_path, capsys):
    path = tmp_path / "escape.json"
    family = {"members": [{"src_len": 2, "dst_len": 1, "matrix": [[[1.0, 0.0]], [[0.0, 0.0]]]}]}
    path.write_text(document(source_len=2, family=family), encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_FAILURE
    assert "family is not a K-g-frame" in capsys.readouterr().out


def test_parse_error_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(document(weights=[-1.0]), encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_USAGE
    assert "weights" in capsys.readouterr().err


def test_missing_file_exits_two(tmp_path):
    assert main(["check", str(tmp_path / "absent.json")]) == EXIT_USAGE


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["fuzz", "--theorem", "bogus"]) == EXIT_USAGE
    assert main(["fuzz", "--theorem", "k-sum", "--dims", "1,2"]) == EXIT_USAGE
    assert main(["check", "x.json", "--tol", "-1"]) == EXIT_USAGE
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK
    assert "kgframes" in capsys.readouterr().out


def test_generate_then_construct(tmp_path, capsys):
    path = tmp_path / "pre.json"
    assert main(["generate", "--theorem", "precompose", "--seed", "5", "--dims", "2,2,2,1",
                 "--output", str(path)]) == EXIT_OK
    assert path.exists()
    assert main(["construct", "--theorem", "precompose", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kind: precompose" in out and "Bounds" in out


def test_generated_frame_check(tmp_path, capsys):
    path = tmp_path / "frame.json"
    assert main(["generate", "--theorem", "frame-check", "--seed", "1", "--dims", "1,1,1,1",
                 "--output", str(path)]) == EXIT_OK
    assert main(["check", str(path)]) in (EXIT_OK, EXIT_FAILURE)
    assert "kind: frame-check" in capsys.readouterr().out


def test_construct_strict_reports_hypothesis(tmp_path, capsys):
    path = tmp_path / "zero.json"
    op = {"src_len": 1, "dst_len": 1, "matrix": [[[0.0, 0.0]]]}
    one = {"src_len": 1, "dst_len": 1, "matrix": [[[1.0, 0.0]]]}
    path.write_text(document(kind="precompose", operators={"K": one, "theta": op}), encoding="utf-8")
    assert main(["construct", "--theorem", "precompose", str(path)]) == EXIT_OK
    assert main(["construct", "--theorem", "precompose", "--strict", str(path)]) == EXIT_FAILURE
    assert "HypothesisFailed" in capsys.readouterr().err


def test_fuzz_is_repeatable(capsys):
    argv = ["fuzz", "--theorem", "frame-check", "--trials", "3", "--seed", "12"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "trials: 3" in first


def test_fuzz_save_then_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    assert main(["fuzz", "--theorem", "dual-sum", "--trials", "2", "--seed", "3",
                 "--dims", "1,2,2,1", "--save", str(path)]) == EXIT_OK
    fuzz_out = capsys.readouterr().out
    assert main(["report", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == fuzz_out
    assert main(["report", str(path), "--format", "structured", "--timing"]) == EXIT_OK
    assert "wall_clock" in capsys.readouterr().out


def test_report_rejects_garbage(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("[]", encoding="utf-8")
    assert main(["report", str(path)]) == EXIT_USAGE


@pytest.mark.parametrize("theorem", ["2.1", "3.1ii", "precompose"])
def test_fuzz_accepts_ids_and_aliases(theorem, capsys):
    assert main(["fuzz", "--theorem", theorem, "--trials", "2", "--seed", "3", "--dims", "1,2,2,1"]) == EXIT_OK
    out = capsys.readouterr().out
    expected = "2.1" if theorem == "precompose" else theorem
    assert out.startswith(f"kind: {expected}\n")


def test_generate_by_id(tmp_path):
    path = tmp_path / "sum.json"
    assert main(["generate", "--theorem", "3.1i", "--seed", "2", "--dims", "1,2,2,1",
                 "--output", str(path)]) == EXIT_OK
    assert json.loads(path.read_text(encoding="utf-8"))["kind"] == "3.1i"
