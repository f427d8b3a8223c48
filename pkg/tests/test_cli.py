import json
import subprocess
import sys

import pytest

from nhkit.cli import (
    ScenarioError,
    default_labels,
    report_json,
    run,
    validate_scenario,
)


def test_validate_scenario_rejects_bad_shapes():
    with pytest.raises(ScenarioError):
        validate_scenario([])
    with pytest.raises(ScenarioError):
        validate_scenario({})
    with pytest.raises(ScenarioError):
        validate_scenario({"command": "no-such"})
    with pytest.raises(ScenarioError):
        validate_scenario({"command": "classify", "seed": "zero"})
    with pytest.raises(ScenarioError):
        validate_scenario({"command": "classify", "tolerances": {"x": -1.0}})


def test_classify_scenario_class_k_point():
    report = run(
        {
            "command": "classify",
            "seed": 0,
            "inputs": {"point": {"f": 0, "m": 0, "h": 3, "p": [0, 0], "k": [0, 0], "j": -1}},
        }
    )
    assert report["metrics"]["class"] == "K"
    assert report["metrics"]["dimension"] == 0
    assert all(report["pass"].values())


def test_evolve_scenario_period_closure():
    import math

    report = run(
        {
            "command": "evolve",
            "seed": 0,
            "inputs": {"m": 1.0, "tau": 1.0, "q0": [0, 0], "p0": [1, 0], "t_max": 2 * math.pi, "dt": 1e-3},
        }
    )
    rows = report["csv"]
    assert rows[0] == "t,q1,q2,p1,p2,h,j"
    first = [float(v) for v in rows[1].split(",")]
    last = [float(v) for v in rows[-1].split(",")]
    assert all(abs(a - b) <= 1e-6 for a, b in zip(first[1:], last[1:]))
    assert all(report["pass"].values())


def test_orbit_atlas_csv():
    report = run({"command": "orbit-atlas", "seed": 0, "inputs": {}})
    rows = report["csv"]
    assert rows[0] == "f,m,C1,C2,class,dim"
    assert report["metrics"]["rows"] == len(rows) - 1
    assert sum(report["metrics"]["class_counts"].values()) == report["metrics"]["rows"]


def test_group_check_passes():
    report = run({"command": "group-check", "seed": 7, "inputs": {"samples": 150}})
    assert all(report["pass"].values()), report["metrics"]


def test_algebra_check_passes():
    report = run({"command": "algebra-check", "seed": 7, "inputs": {"rank_samples": 30}})
    assert all(report["pass"].values()), report["metrics"]


def test_rep_check_case_f_report_shape():
    report = run(
        {"command": "rep-check", "seed": 3, "inputs": {"case": "f", "samples": 15, "hermite_n": 24}}
    )
    metrics = report["metrics"]
    assert set(metrics) >= {
        "case",
        "unitarity_max",
        "homomorphism_max",
        "generator_residuals",
        "resolution_metrics",
    }
    assert metrics["homomorphism_max"] <= 1e-6
    assert all(report["pass"].values())


def test_rep_check_every_case_smoke():
    sizes = {"a": 24, "b": 64, "c": 64, "d": 48, "e": 48, "f": 24, "g": 24}
    budgets = {"a": 2e-2, "b": 5e-2, "c": 5e-2, "d": 5e-2, "e": 5e-2}
    for case in "abcdefghijk":
        tolerances = {}
        if case in budgets:
            tolerances["homomorphism"] = budgets[case]
        report = run(
            {
                "command": "rep-check",
                "seed": 11,
                "inputs": {"case": case, "samples": 6, "hermite_n": sizes.get(case, 32)},
                "tolerances": tolerances,
            }
        )
        assert all(report["pass"].values()), (case, report["metrics"])


def test_determinism_byte_identical_reports():
    scenario = {"command": "group-check", "seed": 12345, "inputs": {"samples": 60}}
    a = report_json(run(scenario), drop_timing=True)
    b = report_json(run(scenario), drop_timing=True)
    assert a == b
    c = report_json(run({**scenario, "seed": 54321}), drop_timing=True)
    assert a != c


def test_default_labels_cover_all_cases():
    for case in "abcdefghijk":
        labels = default_labels(case)
        assert labels.orbit_class.value.lower() == case


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "nhkit.cli", *args], capture_output=True, text=True
    )


def test_cli_exit_codes(tmp_path):
    # pass -> 0
    out = _cli("classify", "--point", '{"f":0,"m":0,"h":1,"p":[0,0],"k":[0,0],"j":0}')
    assert out.returncode == 0
    json.loads(out.stdout)

    # schema violation -> 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"command": "classify", "seed": "x"}')
    out = _cli("classify", "--scenario", str(bad))
    assert out.returncode == 2

    # criterion failure -> 1, report still written
    target = tmp_path / "report.json"
    out = _cli(
        "evolve",
        "--tol", "conservation=1e-30",
        "--out", str(target),
    )
    assert out.returncode == 1
    report = json.loads(target.read_text())
    assert report["pass"]["energy_conserved"] is False or report["metrics"]["h_drift"] == 0.0

    # internal error -> 3 (labels violating the stratum blow up inside)
    out = _cli("rep-check", "--case", "a", "--labels", '{"f":1.0,"m":1.0,"C1":1,"C2":0}')
    assert out.returncode == 3


def test_cli_flag_overrides(tmp_path):
    scen = tmp_path / "scen.json"
    scen.write_text(json.dumps({"command": "group-check", "seed": 1, "inputs": {"samples": 40}}))
    out_file = tmp_path / "r.json"
    res = _cli("group-check", "--scenario", str(scen), "--seed", "2", "--out", str(out_file))
    assert res.returncode == 0
    report = json.loads(out_file.read_text())
    assert report["scenario"]["seed"] == 2
    assert report["scenario"]["inputs"]["samples"] == 40


def test_cli_csv_out(tmp_path):
    csv_file = tmp_path / "traj.csv"
    res = _cli("evolve", "--csv-out", str(csv_file))
    assert res.returncode == 0
    lines = csv_file.read_text().strip().splitlines()
    assert lines[0] == "t,q1,q2,p1,p2,h,j"
    assert len(lines) > 100
