"""The two-qubit game protocol with a noisy channel on each leg.

The arbiter prepares ``cos(g/2)|00> + i sin(g/2)|11>`` and sends it through a
correlated dephasing channel (trip 1). Each player applies a local
:func:`~qmemgame.games.strategy_unitary`, the pair goes back through a second
channel (trip 2), and the arbiter measures in a basis entangled by ``delta``.

Payoffs are available two ways:

* :func:`simulate_protocol` builds the 4x4 density matrix step by step and
  takes ``Tr(P rho)``; it is the reference.
* :func:`closed_form_payoff` evaluates the analytic expression term by term.

Basis order is ``|00>, |01>, |10>, |11>`` with Alice as the left factor.

Measurement basis sign
----------------------
The measurement vectors are ``|psi_ij> = J(delta)|ij>`` with
``J(d) = exp(i d/2 X (x) X)``, so ``|psi_01> = cos(d/2)|01> + i sin(d/2)|10>``.
Setting ``cross_phase=-1`` flips the sign of the ``i sin`` component of
``|psi_01>`` and ``|psi_10>``. That basis swaps the sign of the
``cos 2(alpha_1 - beta_2)``, ``cos 2(alpha_2 - beta_1)`` and
``sin(alpha_1 - alpha_2 + beta_1 - beta_2)`` terms of the closed form;
:func:`closed_form_payoff` handles both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Tuple

import numpy as np

from .channels import (
    DephasingParams,
    apply_channel,
    coherence_decay_factor,
    correlated_dephasing_kraus,
)
from .games import Game2x2, StrategyParams, builtin_game, normalize_player, strategy_unitary
from .linalg import check_density_matrix

IMAG_RESIDUE_TOL = 1e-10
HALF_PI = math.pi / 2


@dataclass(frozen=True)
class GameConfig:
    """A full scenario: entanglement, measurement, both channel legs and the game."""

    gamma: float = 0.0
    delta: float = 0.0
    trip1: DephasingParams = field(default_factory=lambda: DephasingParams(0.0, 0.0))
    trip2: DephasingParams = field(default_factory=lambda: DephasingParams(0.0, 0.0))
    game: Game2x2 = field(default_factory=lambda: builtin_game("prisoners-dilemma"))
    cross_phase: int = 1

    def __post_init__(self):
        for name in ("gamma", "delta"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= HALF_PI:
                raise ValueError(f"{name} must lie in [0, pi/2], got {v!r}")
            object.__setattr__(self, name, v)
        if self.cross_phase not in (1, -1):
            raise ValueError("cross_phase must be +1 or -1")

    @classmethod
    def symmetric(cls, gamma, delta, p, mu, game, **kw) -> "GameConfig":
        """Both trips share the same ``(p, mu)``."""
        if isinstance(game, str):
            game = builtin_game(game)
        d = DephasingParams(p, mu)
        return cls(gamma, delta, d, d, game, **kw)

    def replace(self, **changes) -> "GameConfig":
        from dataclasses import replace

        return replace(self, **changes)


class PayoffPair(NamedTuple):
    alice: float
    bob: float

    @property
    def advantage(self) -> float:
        """Bob's payoff minus Alice's."""
        return self.bob - self.alice


@dataclass(frozen=True)
class ClosedFormTerms:
    eta: float
    chi: float
    xi: float
    c1: float
    c2: float
    s1: float
    s2: float
    mup1: float
    mup2: float


def initial_state(gamma: float) -> np.ndarray:
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = math.cos(gamma / 2)
    psi[3] = 1j * math.sin(gamma / 2)
    return np.outer(psi, psi.conj())


def measurement_vectors(delta: float, cross_phase: int = 1) -> dict:
    """The four measurement vectors keyed by outcome ``(i, j)``."""
    if not 0.0 <= delta <= HALF_PI:
        raise ValueError(f"delta must lie in [0, pi/2], got {delta!r}")
    c, s = math.cos(delta / 2), math.sin(delta / 2)
    e = np.eye(4, dtype=np.complex128)
    return {
        (0, 0): c * e[0] + 1j * s * e[3],
        (1, 1): c * e[3] + 1j * s * e[0],
        (1, 0): c * e[2] + cross_phase * 1j * s * e[1],
        (0, 1): c * e[1] + cross_phase * 1j * s * e[2],
    }


def payoff_operator(g: Game2x2, player: str, delta: float, cross_phase: int = 1) -> np.ndarray:
    """``sum_ij $_ij |psi_ij><psi_ij|`` for the given player's table."""
    table = g.table(player)
    op = np.zeros((4, 4), dtype=np.complex128)
    for (i, j), v in measurement_vectors(delta, cross_phase).items():
        op += table[i, j] * np.outer(v, v.conj())
    return op


def final_state(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams) -> np.ndarray:
    """Density matrix handed to the arbiter's measurement."""
    rho = apply_channel(initial_state(cfg.gamma), correlated_dephasing_kraus(cfg.trip1))
    u = np.kron(strategy_unitary(s1), strategy_unitary(s2))
    rho = u @ rho @ u.conj().T
    return apply_channel(rho, correlated_dephasing_kraus(cfg.trip2))


def _real_expectation(op: np.ndarray, rho: np.ndarray) -> float:
    val = np.trace(op @ rho)
    if abs(val.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(f"payoff has imaginary part {val.imag:.3e}")
    return float(val.real)


def simulate_protocol(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams,
                      validate: bool = False) -> PayoffPair:
    """Payoffs by explicit density-matrix evolution.

    With ``validate=True`` the final state is checked for Hermiticity, unit
    trace and positivity.
    """
    rho = final_state(cfg, s1, s2)
    if validate:
        check_density_matrix(rho)
    return PayoffPair(
        _real_expectation(payoff_operator(cfg.game, "alice", cfg.delta, cfg.cross_phase), rho),
        _real_expectation(payoff_operator(cfg.game, "bob", cfg.delta, cfg.cross_phase), rho),
    )


def closed_form_terms(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams) -> ClosedFormTerms:
    cd2, sd2 = math.cos(cfg.delta / 2) ** 2, math.sin(cfg.delta / 2) ** 2
    cg2, sg2 = math.cos(cfg.gamma / 2) ** 2, math.sin(cfg.gamma / 2) ** 2
    return ClosedFormTerms(
        eta=cd2 * cg2 + sd2 * sg2,
        chi=cd2 * sg2 + sd2 * cg2,
        xi=0.5 * math.sin(cfg.delta) * math.sin(cfg.gamma),
        c1=math.cos(s1.theta / 2) ** 2,
        c2=math.cos(s2.theta / 2) ** 2,
        s1=math.sin(s1.theta / 2) ** 2,
        s2=math.sin(s2.theta / 2) ** 2,
        mup1=coherence_decay_factor(cfg.trip1),
        mup2=coherence_decay_factor(cfg.trip2),
    )


def closed_form_payoff(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams,
                       player: str) -> float:
    t = closed_form_terms(cfg, s1, s2)
    (p00, p01), (p10, p11) = cfg.game.table(normalize_player(player))
    a1, b1 = s1.alpha, s1.beta
    a2, b2 = s2.alpha, s2.beta
    sgn = cfg.cross_phase
    phase = t.mup1 * t.mup2 * t.xi
    coh = math.sin(s1.theta) * math.sin(s2.theta) / 4

    value = t.c1 * t.c2 * (t.eta * p00 + t.chi * p11 + (p00 - p11) * phase * math.cos(2 * (a1 + a2)))
    value += t.s1 * t.s2 * (t.eta * p11 + t.chi * p00 - (p00 - p11) * phase * math.cos(2 * (b1 + b2)))
    value += t.c1 * t.s2 * (t.eta * p01 + t.chi * p10
                            + sgn * (p01 - p10) * phase * math.cos(2 * (a1 - b2)))
    value += t.c2 * t.s1 * (t.eta * p10 + t.chi * p01
                            - sgn * (p01 - p10) * phase * math.cos(2 * (a2 - b1)))
    sd, sg = math.sin(cfg.delta), math.sin(cfg.gamma)
    value += t.mup2 * (p00 - p11) * coh * sd * math.sin(a1 + a2 + b1 + b2)
    value += sgn * t.mup2 * (p10 - p01) * coh * sd * math.sin(a1 - a2 + b1 - b2)
    value += t.mup1 * (p01 + p10 - p00 - p11) * coh * sg * math.sin(a1 + a2 - b1 - b2)
    return float(value)


def closed_form_payoffs(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams) -> PayoffPair:
    return PayoffPair(closed_form_payoff(cfg, s1, s2, "alice"),
                      closed_form_payoff(cfg, s1, s2, "bob"))
