import json
import os
import signal
import subprocess
import sys
import time

CLI = [sys.executable, "-m", "rotagraph.cli"]


def run(*args, check=True):
    proc = subprocess.run(CLI + list(args), capture_output=True, text=True)
    if check:
        assert proc.returncode == 0, proc.stderr or proc.stdout
    return proc


def run_json(*args):
    return json.loads(run(*args).stdout)


def test_field_eval_and_round_trip():
    out = run_json("field", "eval", "--expr", "sqrt(2) * sqrt(2)")
    assert out["value"] == "2"
    nested = run_json("field", "eval", "--expr", "sqrt(2) + sqrt(3)")
    again = run_json("field", "eval", "--expr", nested["value"])
    assert again["value"] == nested["value"]


def test_field_compare_and_roots():
    assert run_json("field", "compare", "--a", "sqrt(2)", "--b", "3/2")["result"] == "less"
    out = run_json("field", "roots", "--poly=-2,0,1")
    assert len(out["roots"]) == 2


def test_field_angle_rational():
    out = run_json("field", "angle-rational", "--cos", "1/2")
    assert out == {"rational_angle": True, "witness": "pi/3"}
    out = run_json("field", "angle-rational", "--cos", "1/3")
    assert out["rational_angle"] is False


def test_plane_dist_and_equidistant():
    out = run_json("plane", "dist", "--p", "1,0,0", "--q", "4/5,3/5,0")
    assert out["cos_d"] == "4/5"
    eq = run_json("plane", "equidistant", "--p", "1,0,0", "--q", "0,1,0",
                  "--cos-l", "3/5")
    d1 = run_json("plane", "dist", "--p", "1,0,0",
                  "--q", json.dumps(eq["point"]))
    assert d1["cos_d"] == "3/5"


def test_plane_infeasible_exit_code():
    proc = run("plane", "equidistant", "--p", "1,0,0", "--q", "0,1,0",
               "--cos-l", "9/10", check=False)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["error"] == "infeasible"


def test_graph_diameter_example():
    out = run_json("graph", "diameter", "--cos-l", "4/5")
    assert out["diameter"] == 3
    assert run_json("graph", "diameter", "--cos-l", "7/8")["diameter"] == 4


def test_graph_distance_and_path():
    out = run_json("graph", "distance", "--p", "1,0,0", "--q", "0,1,0",
                   "--cos-l", "4/5")
    assert out["distance"] == 3
    path = run_json("graph", "path", "--p", "1,0,0", "--q", "0,1,0",
                    "--cos-l", "4/5")
    assert path["length"] == 3
    assert len(path["path"]) == 4 and path["verified"] is True


def test_finite_cf_and_jordan():
    out = run_json("finite", "cf", "--group", "(0 1 2 3)")
    assert out["orbit_count"] == 1
    assert out["average_fixed_points"] == "1"
    out = run_json("finite", "jordan", "--group", "(0 1 2 3)")
    assert "(" in out["witness"]


def test_finite_subgroups_and_census():
    out = run_json("finite", "subgroups", "--group", "(0 1); (0 1 2)")
    assert out["count"] == 6
    out = run_json("finite", "census", "--n-max", "3")
    assert all(out["assertions"].values())


def test_global_flags_both_positions():
    a = run("--approx", "53", "field", "eval", "--expr", "sqrt(2)").stdout
    b = run("field", "eval", "--approx", "53", "--expr", "sqrt(2)").stdout
    assert a == b
    assert json.loads(a)["value_approx"].startswith("1.414")


def test_determinism_byte_identical():
    args = ("graph", "path", "--p", "1,0,0", "--q", "0,1,0", "--cos-l", "7/8")
    assert run(*args).stdout == run(*args).stdout


def test_usage_error_exit_2():
    assert run("graph", "diameter", check=False).returncode == 2
    assert run("nonsense", check=False).returncode == 2


def test_parse_error_exit_1():
    proc = run("field", "eval", "--expr", "sqrt(", check=False)
    assert proc.returncode == 1
    assert "parse" in json.loads(proc.stdout)["error"]


def test_sigint_exit_130():
    proc = subprocess.Popen(
        CLI + ["finite", "census", "--n-max", "6"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    time.sleep(1.0)
    proc.send_signal(signal.SIGINT)
    out, _ = proc.communicate(timeout=30)
    assert proc.returncode == 130
    assert json.loads(out)["error"] == "interrupted"
