"""Command-line surface: formats, determinism, exit codes."""

import json
import subprocess
import sys

from qcayley.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dims_csv_frozen_row(capsys):
    code, out, _ = run_cli(capsys, "dims", "--spec", "Ao(3)", "--count", "6", "--format", "csv")
    assert code == 0
    assert out == "1,3,8,21,55,144\n"


def test_dims_json_records(capsys):
    code, out, _ = run_cli(capsys, "dims", "--spec", "Ao(3)", "--count", "4")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 4
    assert rows[3]["exact"] == "21"
    assert set(rows[0]) >= {"cmd", "spec", "params", "quantity", "value_lo", "value_hi", "anchor"}


def test_growth_table(capsys):
    code, out, _ = run_cli(capsys, "growth", "--spec", "Au(3)", "--n-max", "3",
                           "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,cn_lower,first_diff,slope"
    assert lines[1].startswith("1,1/18")
    assert lines[2].startswith("2,1/9,1/18")
    assert lines[3].startswith("3,1/6,1/18,1/18")


def test_tree_dump_structure(capsys):
    code, out, _ = run_cli(capsys, "tree", "--spec", "Au(3)", "--radius", "2")
    rows = [json.loads(line) for line in out.splitlines()]
    vertices = [r for r in rows if "word" in r]
    edges = [r for r in rows if "src" in r]
    assert code == 0
    assert len(vertices) == 7
    assert len(edges) == 2 * (7 - 1)
    assert {"id", "word", "length", "dimq"} == set(vertices[0])
    assert sum(1 for e in edges if e["ascending"]) == 6


def test_paths_unit_weights(capsys):
    code, out, _ = run_cli(capsys, "paths", "--spec", "Au(3)", "--radius", "3",
                           "--unit-weights")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    for r in rows:
        assert r["exact"] == str(2 * r["params"]["length"])


def test_gram_report_includes_decay_constant(capsys):
    code, out, _ = run_cli(capsys, "gram", "--spec", "Ao(3)", "--kmax", "3",
                           "--radius", "30")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert sum(1 for r in rows if r["quantity"] == "gram_entry") == 10
    assert rows[-1]["quantity"] == "decay_constant_D"


def test_rd_norm_weighted_variant(capsys):
    code, out, _ = run_cli(capsys, "rd-norm", "--spec", "Ao(7/2)", "--s", "3",
                           "--r", "2", "--radius", "80")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[0]["quantity"] == "weighted_norm_sq"
    assert float(rows[0]["tail"]) < 1e-10


def test_schur_command(capsys):
    code, out, _ = run_cli(capsys, "schur", "--a", "2", "--size", "20")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[0]["quantity"] == "schur_bound"
    assert float(rows[1]["value_hi"]) <= 3.0


def test_chain_check_command(capsys):
    code, out, _ = run_cli(capsys, "chain-check", "--a", "growth:3", "--count", "50",
                           "--seed", "11")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[0]["exact"] == "0"


def test_float_mode_paths(capsys):
    code, out, _ = run_cli(capsys, "paths", "--spec", "Ao(3)", "--radius", "4",
                           "--mode", "float")
    assert code == 0 and len(out.splitlines()) == 5


def test_bad_spec_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "dims", "--spec", "Ao(0.5)", "--count", "3")
    assert code == 2
    assert "dimq below 1" in err


def test_gate_error_surfaced_verbatim(capsys):
    code, _, err = run_cli(capsys, "fixed-vector", "--spec", "Ao(2)", "--radius", "5")
    assert code == 2
    assert "dimension" in err and "2" in err


def test_config_file_defaults_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"format": "csv", "spec": "Ao(3)", "count": 6}))
    code, out, _ = run_cli(capsys, "--config", str(cfg), "dims")
    assert code == 0 and out == "1,3,8,21,55,144\n"
    # explicit flag wins over the config value
    code, out, _ = run_cli(capsys, "--config", str(cfg), "dims", "--format", "json")
    assert code == 0 and out.startswith("{")


def test_output_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "dims.csv"
    code = main(["dims", "--spec", "Ao(3)", "--count", "6", "--format", "csv",
                 "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert target.read_text() == "1,3,8,21,55,144\n"


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, err = run_cli(capsys, "--config", str(cfg), "dims", "--spec", "Ao(3)")
    assert code == 2 and "unknown config keys" in err


def test_verify_quick_profile_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--profile", "quick", "--seed", "7")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("criterion")]
    assert len(lines) == 10
    assert all(" PASS " in l for l in lines)


def test_verify_deterministic_bytes():
    cmd = [sys.executable, "-m", "qcayley.cli", "verify", "--profile", "quick",
           "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, timeout=600)
    second = subprocess.run(cmd, capture_output=True, timeout=600)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
