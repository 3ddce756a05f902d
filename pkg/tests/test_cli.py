import json

import pytest

from boundarylab.cli import run
from boundarylab.fixtures import punctured_disc_plane


@pytest.fixture
def deep_zeros(tmp_path):
    path = tmp_path / "deep.json"
    path.write_text(json.dumps(
        {"generator": {"kind": "radial", "angle": 0.0, "rate": 0.5, "count": 60}}
    ))
    return str(path)


@pytest.fixture
def shallow_zeros(tmp_path):
    path = tmp_path / "shallow.json"
    path.write_text(json.dumps(
        {"generator": {"kind": "radial", "angle": 0.0, "rate": 0.5, "count": 30}}
    ))
    return str(path)


def test_scan_writes_csv(deep_zeros, tmp_path):
    out = tmp_path / "scan.csv"
    code = run(["scan", "--zeros", deep_zeros, "--r", "0.9",
                "--angles", "64", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "angle,re,im,modulus"
    assert len(lines) == 65


def test_scan_is_deterministic(deep_zeros, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["scan", "--zeros", deep_zeros, "--r", "0.9",
                "--angles", "32", "--out", str(a)]) == 0
    assert run(["scan", "--zeros", deep_zeros, "--r", "0.9",
                "--angles", "32", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_scan_streams_to_stdout(deep_zeros, capsys):
    code = run(["scan", "--zeros", deep_zeros, "--r", "0.9", "--angles", "8"])
    assert code == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "angle,re,im,modulus"


def test_scan_partial_report_on_exhausted_prefix(shallow_zeros, tmp_path, capsys):
    # the stored prefix cannot certify the default 1e-9 tolerance, so the
    # scan exits 1 but still writes the best-effort table
    out = tmp_path / "partial.csv"
    code = run(["scan", "--zeros", shallow_zeros, "--r", "0.999",
                "--angles", "16", "--out", str(out)])
    assert code == 1
    captured = capsys.readouterr()
    assert captured.err != ""
    lines = out.read_text().splitlines()
    assert lines[0] == "angle,re,im,modulus"
    assert len(lines) == 17


def test_validation_failures_exit_2(tmp_path, deep_zeros):
    assert run(["warp", "--zeros", deep_zeros]) == 2  # unknown subcommand
    assert run(["scan", "--zeros", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["scan", "--zeros", str(bad)]) == 2
    assert run(["scan", "--zeros", deep_zeros, "--truncation-tolerance", "-1"]) == 2
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("mystery = 1\n")
    assert run(["scan", "--zeros", deep_zeros, "--config", str(cfg)]) == 2
    assert run([]) == 2  # no subcommand


def test_trace_csv_header(deep_zeros, tmp_path):
    out = tmp_path / "trace.csv"
    code = run(["trace", "--zeros", deep_zeros, "--angle", "3.14159",
                "--radius-levels", "20", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "radius,re,im,modulus"
    assert len(lines) == 21


def test_probe_json_output(deep_zeros, capsys):
    code = run(["probe", "--zeros", deep_zeros, "--angle", "3.14159",
                "--window", "8"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data.keys()) == {
        "angle", "paths", "cluster_diameter_estimate", "radial_exists",
    }
    assert data["radial_exists"] is True


def test_config_file_loses_to_flags(deep_zeros, tmp_path, capsys):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("verdict_tolerance = 0.5\n")
    assert run(["probe", "--zeros", deep_zeros, "--angle", "3.14159",
                "--window", "8", "--config", str(cfg)]) == 0
    relaxed = json.loads(capsys.readouterr().out)
    assert all(p["estimate"] is not None for p in relaxed["paths"])
    assert run(["probe", "--zeros", deep_zeros, "--angle", "3.14159",
                "--window", "8", "--config", str(cfg),
                "--verdict-tolerance", "1e-18"]) == 0
    strict = json.loads(capsys.readouterr().out)
    assert all(p["estimate"] is None for p in strict["paths"])


def test_frostman_single_angle(tmp_path, capsys):
    path = tmp_path / "long.json"
    path.write_text(json.dumps(
        {"generator": {"kind": "radial", "angle": 0.0, "rate": 0.5, "count": 1050}}
    ))
    code = run(["frostman", "--zeros", str(path), "--theta", "3.141592653589793"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["classification"] == "convergent"
    assert data["theta"] > 3.0
    assert len(data["partial_sums"]) == len(data["schedule"])


def test_frostman_grid_csv(deep_zeros, tmp_path):
    out = tmp_path / "frostman.csv"
    code = run(["frostman", "--zeros", deep_zeros, "--angles", "8", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "angle,n,partial_sum,classification"
    assert len(lines) > 8


def test_series_point_and_circle(tmp_path, capsys):
    spec = {
        "weight_rule": "inverse-power-2",
        "terms": [
            {
                "weight": 0.5,
                "component": {
                    "blaschke": {
                        "generator": {
                            "kind": "radial", "angle": 0.0, "rate": 0.5, "count": 40,
                        }
                    },
                    "atoms": None,
                    "outer": None,
                    "series": None,
                },
            }
        ],
    }
    path = tmp_path / "series.json"
    path.write_text(json.dumps(spec))
    code = run(["series", "--spec", str(path), "--at", "0.1", "0.2"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data.keys()) == {"re", "im", "modulus", "terms_used", "tail_bound"}
    out = tmp_path / "series.csv"
    code = run(["series", "--spec", str(path), "--r", "0.5",
                "--angles", "16", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "angle,re,im,modulus"
    assert len(lines) == 17
    # evaluation points must stay inside the disc
    assert run(["series", "--spec", str(path), "--at", "2.0", "0.0"]) == 2


def test_arakeljan_subcommands(tmp_path, capsys):
    path = tmp_path / "remark3.grid"
    path.write_text(punctured_disc_plane(96).format_text())
    code = run(["arakeljan", "--grid", str(path), "--subject", "E"])
    assert code == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["label"] == "passes-probes"
    code = run(["arakeljan", "--grid", str(path), "--independence", "E", "F"])
    assert code == 0
    indep = json.loads(capsys.readouterr().out)
    assert indep["independent"] is False
    assert indep["witness_component"] is not None
    code = run(["arakeljan", "--grid", str(path), "--union"])
    assert code == 0
    union = json.loads(capsys.readouterr().out)
    assert union["lemma_consistent"] is True
    assert union["union"]["failed_condition"] == 1


def test_kernels_report(capsys):
    code = run(["kernels", "--r", "0.5", "--delta", "3.141592653589793"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data.keys()) == {"r", "delta", "mass", "sup_outside_delta"}
    assert abs(data["mass"] - 1.0) < 1e-8
    # at delta = pi the kernel minimum (1-r)/(1+r) = 1/3 is the tail sup
    assert abs(data["sup_outside_delta"] - 1.0 / 3.0) < 1e-12


def test_selftest_subset(capsys):
    code = run(["selftest", "--only", "2,5"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[ 2] PASS" in out
    assert "[ 5] PASS" in out
    assert "2/2 criteria passed" in out
    assert run(["selftest", "--only", "0"]) == 2
    assert run(["selftest", "--only", "banana"]) == 2


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert run(["scan", "--help"]) == 0
    out = capsys.readouterr().out
    assert "(default" in out
