import math

import pytest

from qmemgame import StrategyParams, builtin_game
from qmemgame.cases import CASE_IV_OPTIMA, case_study, strategy_distance
from qmemgame.validation import random_game, structural_invariants, validate_equivalence

import numpy as np

PI = math.pi


@pytest.mark.parametrize("case_id", ["i", "ii", "iii", "iv"])
@pytest.mark.parametrize("name", ["prisoners-dilemma", "chicken", "battle-of-sexes"])
def test_case_reports_pass(case_id, name):
    report = case_study(case_id, builtin_game(name))
    failed = [c.name for c in report.claims if not c.passed and not c.informational]
    assert report.passed, failed
    assert report.to_dict()["passed"] is True
    assert "PASS" in report.format_text()


def test_case_study_deterministic():
    a = case_study("iii", builtin_game("chicken"), seed=5).format_text()
    b = case_study("iii", builtin_game("chicken"), seed=5).format_text()
    assert a == b


def test_unknown_case():
    with pytest.raises(ValueError):
        case_study("v", builtin_game("chicken"))


def test_strategy_distance_symmetries():
    target = CASE_IV_OPTIMA["prisoners-dilemma"]
    assert strategy_distance(StrategyParams(PI / 2, -PI / 2, PI), target) == pytest.approx(0.0, abs=1e-15)
    assert strategy_distance(StrategyParams(PI / 2, PI / 2, 0.1), target) == pytest.approx(0.1)


def test_validate_equivalence_report():
    rep = validate_equivalence(200, seed=1)
    assert rep.passed and rep.draws == 200 and rep.seed == 1
    assert rep.mean_deviation <= rep.max_deviation
    assert set(rep.worst) >= {"gamma", "delta", "theta1", "theta2"}
    assert validate_equivalence(100, seed=1, classical=True).passed
    with pytest.raises(ValueError):
        validate_equivalence(0, seed=1)


def test_random_game_range():
    g = random_game(np.random.default_rng(0))
    vals = np.array(g.payoff_a + g.payoff_b)
    assert vals.min() >= -5 and vals.max() <= 5


def test_structural_invariants_all_pass():
    assert all(r.passed for r in structural_invariants(60, seed=9))
