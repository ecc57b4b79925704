"""Bimatrix games and the three-parameter strategy unitary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

import numpy as np

NASH_TIE_TOL = 1e-12


@dataclass(frozen=True)
class Game2x2:
    """Two-player, two-strategy game.

    ``payoff_a[i][j]`` and ``payoff_b[i][j]`` are Alice's and Bob's payoffs
    when Alice plays her ``i``-th and Bob his ``j``-th strategy. Index 0 is
    the strategy reached at ``theta = 0``.
    """

    name: str
    payoff_a: Tuple[Tuple[float, float], Tuple[float, float]]
    payoff_b: Tuple[Tuple[float, float], Tuple[float, float]]
    labels: Tuple[str, str] = ("C", "D")

    def __post_init__(self):
        for attr in ("payoff_a", "payoff_b"):
            m = np.asarray(getattr(self, attr), dtype=float)
            if m.shape != (2, 2):
                raise ValueError(f"{attr} must be 2x2, got shape {m.shape}")
            if not np.all(np.isfinite(m)):
                raise ValueError(f"{attr} has non-finite entries")
            object.__setattr__(self, attr, tuple(tuple(float(x) for x in row) for row in m))

    def table(self, player: str) -> np.ndarray:
        """Payoff matrix of ``player`` ("alice" or "bob") as a 2x2 array."""
        player = normalize_player(player)
        return np.array(self.payoff_a if player == "alice" else self.payoff_b)


def normalize_player(player: str) -> str:
    p = player.lower()
    if p in ("alice", "a", "1"):
        return "alice"
    if p in ("bob", "b", "2"):
        return "bob"
    raise ValueError(f"unknown player {player!r}; expected 'alice' or 'bob'")


BUILTIN_GAMES: Dict[str, Game2x2] = {
    "prisoners-dilemma": Game2x2(
        "prisoners-dilemma", ((3, 0), (5, 1)), ((3, 5), (0, 1)), ("C", "D")
    ),
    "chicken": Game2x2("chicken", ((3, 1), (4, 0)), ((3, 4), (1, 0)), ("C", "D")),
    "battle-of-sexes": Game2x2(
        "battle-of-sexes", ((2, 0), (0, 1)), ((1, 0), (0, 2)), ("O", "T")
    ),
}


def builtin_game(name: str) -> Game2x2:
    try:
        return BUILTIN_GAMES[name]
    except KeyError:
        raise KeyError(
            f"unknown game {name!r}; choose one of {', '.join(sorted(BUILTIN_GAMES))}"
        ) from None


@dataclass(frozen=True)
class StrategyParams:
    """A player's move: mixing angle ``theta`` in [0, pi], phases in [-pi, pi]."""

    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        t, a, b = float(self.theta), float(self.alpha), float(self.beta)
        if not 0.0 <= t <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {t!r}")
        for name, v in (("alpha", a), ("beta", b)):
            if not -math.pi <= v <= math.pi:
                raise ValueError(f"{name} must lie in [-pi, pi], got {v!r}")
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def is_classical(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.theta, self.alpha, self.beta)


def strategy_unitary(s: StrategyParams) -> np.ndarray:
    """``cos(theta/2) R + sin(theta/2) P`` as a 2x2 matrix.

    ``R = diag(e^{i alpha}, e^{-i alpha})``; ``P|0> = i e^{-i beta}|1>`` and
    ``P|1> = i e^{i beta}|0>``.
    """
    c, sn = math.cos(s.theta / 2), math.sin(s.theta / 2)
    ea, eb = np.exp(1j * s.alpha), np.exp(1j * s.beta)
    return np.array(
        [[c * ea, 1j * sn * eb], [1j * sn / eb, c / ea]], dtype=np.complex128
    )


def classical_mixed_payoff(g: Game2x2, x: float, y: float) -> Tuple[float, float]:
    """Expected payoffs when Alice plays strategy 0 w.p. ``x`` and Bob w.p. ``y``."""
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError("mixing probabilities must lie in [0, 1]")
    px = np.array([x, 1.0 - x])
    py = np.array([y, 1.0 - y])
    a = np.array(g.payoff_a)
    b = np.array(g.payoff_b)
    return float(px @ a @ py), float(px @ b @ py)


def pure_nash_equilibria(g: Game2x2, tol: float = NASH_TIE_TOL) -> FrozenSet[Tuple[int, int]]:
    """All pure profiles ``(i, j)`` with no profitable unilateral deviation.

    Weak equilibria count: a deviation must gain more than ``tol``.
    """
    a = np.array(g.payoff_a)
    b = np.array(g.payoff_b)
    eq = set()
    for i in range(2):
        for j in range(2):
            if a[1 - i, j] - a[i, j] > tol:
                continue
            if b[i, 1 - j] - b[i, j] > tol:
                continue
            eq.add((i, j))
    return frozenset(eq)


def profile_labels(g: Game2x2, profile: Tuple[int, int]) -> Tuple[str, str]:
    return g.labels[profile[0]], g.labels[profile[1]]
