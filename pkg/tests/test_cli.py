import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qmemgame import GameConfig, StrategyParams
from qmemgame.cli import RECORD_FIELDS, SWEEP_FIELDS, ScenarioError, build_scenario, parse_scenario_text, run_cli
from qmemgame.protocol import closed_form_payoffs, simulate_protocol

HALF_PI = math.pi / 2

CASE_IV = """
# case iv, PD
game = prisoners-dilemma
gamma = 1.5707963267948966
delta = 1.5707963267948966
p = 0.5
mu = 0.5
theta1 = 1.5707963267948966
theta2 = 1.5707963267948966
alpha2 = 1.5707963267948966
"""


def run(argv, capsys):
    code = run_cli(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def scenario(tmp_path):
    path = tmp_path / "s.cfg"
    path.write_text(CASE_IV)
    return str(path)


def test_payoff_csv_round_trip(scenario, capsys):
    code, out, _ = run(["payoff", "--scenario", scenario], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == RECORD_FIELDS
    cfg = GameConfig.symmetric(HALF_PI, HALF_PI, 0.5, 0.5, "prisoners-dilemma")
    pay = closed_form_payoffs(cfg, StrategyParams(HALF_PI), StrategyParams(HALF_PI, HALF_PI, 0.0))
    assert float(rows[0]["payoff_alice"]) == pay.alice
    assert float(rows[0]["payoff_bob"]) == pay.bob
    assert float(rows[0]["payoff_alice"]) == 1.25390625


def test_payoff_simulate_json(scenario, capsys):
    code, out, _ = run(["payoff", "--scenario", scenario, "--method", "simulate", "--format", "json"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["payoff_bob"] == pytest.approx(3.79296875, abs=1e-12)


def test_set_overrides_and_degrees(capsys):
    code, out, _ = run(["payoff", "--degrees", "--set", "gamma=90", "--set", "theta1=90",
                        "--set", "theta2=90", "--set", "alpha2=90", "--set", "game=prisoners-dilemma",
                        "--format", "json"], capsys)
    assert code == 0
    # delta = 0 and no noise: case ii value 9/4 + 1/4
    rec = json.loads(out)
    assert rec["payoff_alice"] == pytest.approx(2.5, abs=1e-12)
    assert rec["payoff_bob"] == pytest.approx(2.5, abs=1e-12)


def test_custom_game(capsys):
    sets = [f"payoff_{w}_{i}{j}={v}" for w, vals in (("a", "1234"), ("b", "4321"))
            for (i, j), v in zip(("00", "01", "10", "11"), vals)]
    argv = ["payoff", "--set", "theta1=3.141592653589793"]
    for s in sets:
        argv += ["--set", s]
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["game"] == "custom"
    assert rec["payoff_alice"] == pytest.approx(3.0)


def test_sweep(scenario, capsys):
    code, out, _ = run(["sweep", "--scenario", scenario, "--param", "mu", "--points", "5"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == SWEEP_FIELDS
    assert [float(r["param"]) for r in rows] == [0, 0.25, 0.5, 0.75, 1]
    for r in rows:
        assert float(r["advantage"]) == pytest.approx(float(r["payoff_bob"]) - float(r["payoff_alice"]))


def test_best_response(scenario, capsys):
    code, out, _ = run(["best-response", "--scenario", scenario, "--responder", "bob",
                        "--format", "json"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["theta"] == pytest.approx(HALF_PI, abs=5e-3)
    assert rec["payoff"] == pytest.approx(rec["payoff_bob"])


def test_case_study_exit_codes(capsys):
    code, out, _ = run(["case-study", "--case", "i", "--game", "chicken"], capsys)
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(["case-study", "--case", "iii", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_validate_small(capsys):
    code, out, _ = run(["validate", "--draws", "50", "--seed", "3", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["check"] == "oracle_equivalence"
    assert all(r["passed"] == "true" for r in rows)


def test_seeded_output_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"]
    for path, seed in zip(paths, (7, 7, 8)):
        assert run_cli(["validate", "--draws", "100", "--seed", str(seed), "--format", "json",
                        "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].read_bytes() != paths[2].read_bytes()


@pytest.mark.parametrize("text", [
    "gamma 0.5",
    "colour = red",
    "gamma = abc",
    "gamma = 3.0",
    "p = 1.5",
    "game = stag-hunt",
    "payoff_a_00 = 1",
    "gamma = nan",
    "theta1 = =",
    "mu =",
])
def test_malformed_scenario_exit_2(tmp_path, capsys, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text + "\n")
    code, out, err = run(["payoff", "--scenario", str(path)], capsys)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_usage_errors_exit_2(capsys):
    assert run(["payoff", "--scenario", "/nonexistent/file"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["sweep", "--param", "p"], capsys)[0] == 2
    assert run(["sweep", "--param", "p", "--points", "1"], capsys)[0] == 2
    assert run(["best-response", "--responder", "bob", "--theta-steps", "1"], capsys)[0] == 2


def test_parse_helpers():
    vals = parse_scenario_text("gamma = 0.1  # comment\n\n# only comment\np=0.2")
    assert vals == {"gamma": "0.1", "p": "0.2"}
    with pytest.raises(ScenarioError):
        build_scenario({"p1": "0.5", "mu1": "-1"})
    cfg, a, b = build_scenario({"p": "0.3", "p2": "0.9", "cross_phase": "-1"})
    assert (cfg.trip1.p, cfg.trip2.p, cfg.cross_phase) == (0.3, 0.9, -1)


def test_cross_phase_cli_matches_simulation(capsys):
    argv = ["payoff", "--set", "cross_phase=-1", "--set", "gamma=1.2", "--set", "delta=0.7",
            "--set", "theta1=1.0", "--set", "alpha1=0.4", "--set", "theta2=2.2", "--set", "beta2=-1.1",
            "--format", "json"]
    closed = json.loads(run(argv, capsys)[1])
    sim = json.loads(run(argv + ["--method", "simulate"], capsys)[1])
    assert closed["payoff_alice"] == pytest.approx(sim["payoff_alice"], abs=1e-12)
    assert closed["payoff_bob"] == pytest.approx(sim["payoff_bob"], abs=1e-12)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qmemgame", "payoff", "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["payoff_alice"] == 3.0
