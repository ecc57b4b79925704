import math

import numpy as np
import pytest

from qmemgame import DephasingParams, GameConfig, StrategyParams, builtin_game

HALF_PI = math.pi / 2


def random_density_matrix(rng, dim=4):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_strategy(rng, classical=False):
    t = rng.uniform(0, math.pi)
    if classical:
        return StrategyParams(t)
    return StrategyParams(t, rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi))


def random_config(rng, game="prisoners-dilemma", **fixed):
    kw = dict(gamma=rng.uniform(0, HALF_PI), delta=rng.uniform(0, HALF_PI),
              p1=rng.uniform(), mu1=rng.uniform(), p2=rng.uniform(), mu2=rng.uniform())
    kw.update(fixed)
    return GameConfig(kw["gamma"], kw["delta"], DephasingParams(kw["p1"], kw["mu1"]),
                      DephasingParams(kw["p2"], kw["mu2"]), builtin_game(game))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=["prisoners-dilemma", "chicken", "battle-of-sexes"])
def game(request):
    return builtin_game(request.param)
