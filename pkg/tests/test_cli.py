"""Command driver: output shapes, exit codes, JSON, figure files."""

import json

import pytest

from phv import catalog_list, export_catalog
from phv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim_exact_line(capsys):
    code, out, _ = run(
        capsys, "dim", "GL1^2 x Sp2 x SL3 : (w1 # w1) + (w2 # 1) + (1 # w1*)"
    )
    assert code == 0
    assert out == "dim G = 20, dim V = 20, etale-candidate: yes\n"


def test_dim_negative_candidate(capsys):
    code, out, _ = run(capsys, "dim", "GL1 x SL3 : w1")
    assert code == 0
    assert out.endswith("etale-candidate: no\n")


def test_exit_code_contract(capsys):
    # 0: a passing check
    code, _, _ = run(capsys, "check", "theorem-a", "GL1 x SL3 x SL2 : 2w1 # w1")
    assert code == 0
    # 1: a failing check
    code, _, _ = run(capsys, "check", "theorem-a", "GL1 x SL2 x SL4 x SL3 : w1 # w1 # 2w1")
    assert code == 1
    # 2: a parse error
    code, _, err = run(capsys, "dim", "GL1 x SL0 : w1")
    assert code == 2
    assert "error" in err
    # 2: usage error from the argument parser itself
    code, _, _ = run(capsys, "castle", "GL1 x SL2 : 3w1")
    assert code == 2


def test_castle_and_promote(capsys):
    code, out, _ = run(capsys, "castle", "GL1 x SL5 x SL4 : w2 # w1", "--factor", "2")
    assert code == 0
    assert "SL6" in out and "dim G = 60, dim V = 60" in out
    code, out, _ = run(capsys, "promote", "GL1 x SL2 : 3w1")
    assert code == 0
    assert "SL3" in out
    # inapplicable factor is a usage error
    code, _, err = run(capsys, "castle", "GL1 x SL5 x SL4 : w2 # w1", "--factor", "1")
    assert code == 2 and "no castling transform" in err
    # too-small promotion is a usage error
    code, _, err = run(capsys, "promote", "GL1 x SL2 : w1")
    assert code == 2 and "dimension >= 3" in err


def test_reduce_output(capsys):
    code, out, _ = run(capsys, "reduce", "GL1 x SL5 x SL6 : w2 # w1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "GL1 x SL4 x SL5 : w1 # w2"
    assert lines[1] == "dim V: 60 -> 40"


def test_orbit_table(capsys):
    code, out, _ = run(
        capsys, "orbit", "GL1 x SL2 : 3w1", "--max-steps", "2", "--max-dim", "1000"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["index", "depth", "dim_G", "dim_V", "path", "module"]
    assert lines[1].split("\t")[:4] == ["0", "0", "4", "4"]
    assert lines[-1].startswith("# members:")


def test_orbit_json(capsys):
    code, out, _ = run(
        capsys, "orbit", "GL1 x SL2 : 3w1",
        "--max-steps", "2", "--max-dim", "1000", "--json",
    )
    assert code == 0
    record = json.loads(out)
    assert record["command"] == "orbit"
    assert record["members"][0]["module"] == "GL1 x SL2 : 3w1"
    assert all(m["dim_G"] == m["dim_V"] for m in record["members"])


def test_scan_and_verify_commands(capsys):
    code, out, _ = run(capsys, "scan", "theorem-b", "--max-steps", "2", "--max-dim", "100000")
    assert code == 0 and "verdict: pass" in out
    code, out, _ = run(capsys, "verify", "catalog")
    assert code == 0 and "verdict: pass" in out
    code, out, _ = run(capsys, "verify", "catalog", "--json")
    record = json.loads(out)
    assert record["verdict"] == "pass" and record["stats"]["entries"] == 19


def test_catalog_command_matches_library(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.splitlines() == export_catalog()
    code, out, _ = run(capsys, "catalog", "--filter", "etale")
    assert code == 0
    assert out.splitlines() == export_catalog(catalog_list({"etale"}))
    code, _, err = run(capsys, "catalog", "--filter", "shiny")
    assert code == 2 and "unknown flags" in err


def test_chain_check_command(capsys):
    code, out, _ = run(
        capsys, "check", "theorem-a", "GL1 x SL3 x SL2 : 2w1 # w1",
        "--chain", "--max-steps", "2", "--max-dim", "100000",
    )
    assert code == 0
    assert "reference_gcd: 2" in out


def test_json_check_failure_payload(capsys):
    code, out, _ = run(
        capsys, "check", "theorem-a",
        "GL1 x SL2 x SL4 x SL3 : w1 # w1 # 2w1", "--json",
    )
    assert code == 1
    record = json.loads(out)
    assert record["verdict"] == "fail"
    assert {v["code"] for v in record["violations"]} == {"GCD-PAIR", "GCD-N-EXTRA"}


@pytest.mark.parametrize(
    "argv,files",
    [
        (("orbit", "GL1 x SL2 : 3w1", "--max-steps", "2", "--max-dim", "1000"),
         ("orbit.tsv", "orbit.png")),
        (("scan", "theorem-b", "--max-steps", "1", "--max-dim", "10000"),
         ("scan.tsv", "scan.png")),
        (("check", "theorem-a", "GL1 x SL3 x SL2 : 2w1 # w1"),
         ("check.tsv", "check.png")),
        (("catalog",), ("catalog.tsv", "catalog.png")),
        (("verify", "catalog"), ("verify.tsv", "verify.png")),
    ],
)
def test_figure_outputs(tmp_path, capsys, argv, files):
    out_dir = tmp_path / "figs"
    code = main([*argv, "--figures", str(out_dir)])
    capsys.readouterr()
    assert code == 0
    for name in files:
        target = out_dir / name
        assert target.exists() and target.stat().st_size > 0
        if name.endswith(".png"):
            assert target.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "phv", "dim", "GL1 x SL2 : 3w1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "dim G = 4, dim V = 4, etale-candidate: yes"
