import json
import math
import os
from pathlib import Path

import pytest

import susd


def scenario_dir():
    root = os.environ.get("SUSD_SCENARIO_DIR")
    if root is None:
        root = Path(__file__).resolve().parents[2] / "scenarios"
    return Path(root)


def test_covariance_matches_hand_value():
    c11, c12, c22 = susd.covariance([(0.0, 0.0), (2.0, 0.0), (1.0, 3.0)])
    assert c11 == pytest.approx(2.0)
    assert c12 == pytest.approx(0.0)
    assert c22 == pytest.approx(6.0)


def test_principal_axes_of_axis_aligned_cloud():
    axes = susd.principal_axes([(-1.0, 0.0), (1.0, 0.0), (0.0, 0.2), (0.0, -0.2)])
    qx, qy = axes["q"]
    assert abs(qx) == pytest.approx(1.0, abs=1e-12)
    assert qy == pytest.approx(0.0, abs=1e-12)
    assert axes["lambda_q"] == pytest.approx(2.0)
    assert axes["lambda_n"] == pytest.approx(0.08)


def test_oja_flow_converges_to_major_axis():
    q = susd.oja_flow([3.0, 0.0, 1.0], (0.6, 0.8), duration=30.0, substep=0.01)
    assert susd.alignment_error((1.0, 0.0), q) < 1e-9


def test_covariance_rejects_single_point():
    with pytest.raises(susd.DegenerateInputError):
        susd.covariance([(1.0, 2.0)])


def test_parse_error_surfaces():
    with pytest.raises(susd.ParseError):
        susd.run_scenario("{ not json")


def test_run_bundled_seeking_scenario():
    text = susd.load_scenario_text(scenario_dir() / "complete4_quadratic.json")
    result = susd.run_scenario(text)
    assert result["name"] == "complete4_quadratic"
    assert result["reason"] == "threshold"
    assert 0 < result["steps"] <= 5000
    xs = [p[0] for p in result["final_positions"]]
    ys = [p[1] for p in result["final_positions"]]
    cx = sum(xs) / len(xs)
    cy = sum(ys) / len(ys)
    assert math.hypot(cx, cy) < 0.5


def test_verify_bundled_scenario_passes():
    text = susd.load_scenario_text(scenario_dir() / "complete4_quadratic.json")
    results = susd.verify_scenario(text)
    assert len(results) > 0
    assert all(entry["status"] in ("PASS", "SKIP") for entry in results)


def test_bounds_report_fields():
    text = susd.load_scenario_text(scenario_dir() / "lct_complete4_quadratic.json")
    report = susd.bounds_report(text)
    assert report["strip_bound"] > 0
    assert 0 < report["eps3_measured"] <= 1
    assert report["max_abs_level_error"] <= report["strip_bound"]


def test_trajectory_rows_round_trip_scenario_metadata():
    scenario = json.loads(susd.load_scenario_text(scenario_dir() / "complete4_quadratic.json"))
    scenario["sim"]["max_steps"] = 5
    scenario["sim"]["termination"] = "fixed_horizon"
    result = susd.run_scenario(json.dumps(scenario), include_trajectory=True)
    assert result["reason"] == "horizon"
    assert result["steps"] == 5
    assert len(result["trajectory"]) == 6
    assert result["trajectory"][0]["step"] == 0
    assert result["trajectory"][-1]["t"] == pytest.approx(0.05)
