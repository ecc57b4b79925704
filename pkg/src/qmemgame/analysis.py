"""Best responses, grid epsilon-Nash checks, parameter sweeps and case studies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .channels import DephasingParams
from .games import (
    Game2x2,
    StrategyParams,
    classical_mixed_payoff,
    normalize_player,
    pure_nash_equilibria,
)
from .protocol import GameConfig, PayoffPair, closed_form_payoffs, simulate_protocol

TIE_TOL = 1e-12
NASH_EPS = 1e-6
PI = math.pi
HALF_PI = math.pi / 2

THETA_RANGE = (0.0, PI)
PHASE_RANGE = (-PI, PI)


@dataclass(frozen=True)
class GridSpec:
    """Search grid for best responses.

    The coarse grid spans the full parameter ranges. Each refinement round
    re-centres a grid with the same number of points on the incumbent, with a
    span ``refine_shrink`` times the previous one.
    """

    theta_steps: int = 41
    alpha_steps: int = 65
    beta_steps: int = 65
    refine_rounds: int = 3
    refine_shrink: float = 0.25

    def __post_init__(self):
        for name in ("theta_steps", "alpha_steps", "beta_steps"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be at least 2")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be non-negative")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie in (0, 1)")

    def resolution(self) -> Tuple[float, float, float]:
        """Final grid spacing in (theta, alpha, beta)."""
        shrink = self.refine_shrink ** self.refine_rounds
        return (
            PI / (self.theta_steps - 1) * shrink,
            2 * PI / (self.alpha_steps - 1) * shrink,
            2 * PI / (self.beta_steps - 1) * shrink,
        )


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class SweepRow:
    value: float
    payoff_alice: float
    payoff_bob: float

    @property
    def advantage(self) -> float:
        return self.payoff_bob - self.payoff_alice


def canonical_phase(x: float) -> float:
    """Representative of ``x`` modulo 2*pi in [-pi, pi]."""
    y = math.remainder(x, 2 * PI)
    return max(-PI, min(PI, y))


def _argmax_lexicographic(values: np.ndarray, tol: float = TIE_TOL):
    """Index of the lexicographically first entry within ``tol`` of the maximum."""
    best = values.max()
    flat = int(np.argmax(values >= best - tol))
    return np.unravel_index(flat, values.shape), float(values.flat[flat])


def _local_axis(center: float, span: float, steps: int, lo: float, hi: float) -> np.ndarray:
    start = max(lo, center - span / 2)
    stop = min(hi, center + span / 2)
    axis = np.linspace(start, stop, steps)
    # keep the incumbent exactly representable so a round never loses it
    return np.unique(np.append(axis, center))


def _grid_payoffs(cfg: GameConfig, fixed: StrategyParams, responder: str,
                  thetas, alphas, betas, evaluator: Optional[Callable]) -> np.ndarray:
    if evaluator is None:
        return kernels.response_grid(
            kernels.flat_table(cfg.game, responder),
            kernels.scenario_constants(cfg),
            fixed.as_tuple(),
            0 if responder == "alice" else 1,
            thetas, alphas, betas,
        )
    out = np.empty((len(thetas), len(alphas), len(betas)))
    for i, t in enumerate(thetas):
        for j, a in enumerate(alphas):
            for k, b in enumerate(betas):
                s = StrategyParams(float(t), float(a), float(b))
                pair = evaluator(cfg, s, fixed) if responder == "alice" else evaluator(cfg, fixed, s)
                out[i, j, k] = pair.alice if responder == "alice" else pair.bob
    return out


def best_response(cfg: GameConfig, opponent: StrategyParams, responder: str,
                  grid: GridSpec = DEFAULT_GRID, classical_only: bool = False,
                  evaluator: Optional[Callable] = None) -> Tuple[StrategyParams, float]:
    """Grid search for the responder's payoff-maximising strategy.

    ``classical_only`` pins the responder's phases to zero. ``evaluator``
    replaces the closed-form kernel with any ``(cfg, s1, s2) -> PayoffPair``
    callable, e.g. :func:`~qmemgame.protocol.simulate_protocol`; it is much
    slower and meant for spot checks with small grids.

    Returns the strategy and its payoff. Among near-ties (within 1e-12) the
    lexicographically smallest ``(theta, alpha, beta)`` wins.
    """
    responder = normalize_player(responder)
    thetas = np.linspace(*THETA_RANGE, grid.theta_steps)
    if classical_only:
        alphas = betas = np.zeros(1)
    else:
        alphas = np.linspace(*PHASE_RANGE, grid.alpha_steps)
        betas = np.linspace(*PHASE_RANGE, grid.beta_steps)
    vals = _grid_payoffs(cfg, opponent, responder, thetas, alphas, betas, evaluator)
    (i, j, k), best = _argmax_lexicographic(vals)
    point = (thetas[i], alphas[j], betas[k])

    spans = [PI, 2 * PI, 2 * PI]
    for _ in range(grid.refine_rounds):
        spans = [s * grid.refine_shrink for s in spans]
        thetas = _local_axis(point[0], spans[0], grid.theta_steps, *THETA_RANGE)
        if not classical_only:
            alphas = _local_axis(point[1], spans[1], grid.alpha_steps, *PHASE_RANGE)
            betas = _local_axis(point[2], spans[2], grid.beta_steps, *PHASE_RANGE)
        vals = _grid_payoffs(cfg, opponent, responder, thetas, alphas, betas, evaluator)
        (i, j, k), val = _argmax_lexicographic(vals)
        if val > best + TIE_TOL:
            best = val
            point = (thetas[i], alphas[j], betas[k])

    strat = StrategyParams(float(point[0]), canonical_phase(float(point[1])),
                           canonical_phase(float(point[2])))
    return strat, best


@dataclass(frozen=True)
class NashCheck:
    is_nash: bool
    max_gain_a: float
    max_gain_b: float
    deviation_a: StrategyParams
    deviation_b: StrategyParams


def epsilon_nash_check(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams,
                       grid: GridSpec = DEFAULT_GRID, classical1: bool = False,
                       classical2: bool = False, eps: float = NASH_EPS,
                       resolution_allowance: float = 0.0) -> NashCheck:
    """Largest unilateral gain available to each player on the search grid."""
    base = closed_form_payoffs(cfg, s1, s2)
    dev_a, best_a = best_response(cfg, s2, "alice", grid, classical1)
    dev_b, best_b = best_response(cfg, s1, "bob", grid, classical2)
    gain_a = best_a - base.alice
    gain_b = best_b - base.bob
    limit = eps + resolution_allowance
    return NashCheck(gain_a <= limit and gain_b <= limit, gain_a, gain_b, dev_a, dev_b)


SWEEP_PARAMETERS = ("p", "mu", "gamma", "delta")


def sweep_values(parameter: str, points: int, start: Optional[float] = None,
                 stop: Optional[float] = None) -> np.ndarray:
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(f"cannot sweep {parameter!r}; choose from {SWEEP_PARAMETERS}")
    if points < 2:
        raise ValueError("a sweep needs at least 2 points")
    lo, hi = (0.0, 1.0) if parameter in ("p", "mu") else (0.0, HALF_PI)
    return np.linspace(lo if start is None else start, hi if stop is None else stop, points)


def config_at(cfg: GameConfig, parameter: str, value: float) -> GameConfig:
    """``cfg`` with one parameter replaced. ``p``/``mu`` set both trips."""
    if parameter == "p":
        return cfg.replace(trip1=DephasingParams(value, cfg.trip1.mu),
                           trip2=DephasingParams(value, cfg.trip2.mu))
    if parameter == "mu":
        return cfg.replace(trip1=DephasingParams(cfg.trip1.p, value),
                           trip2=DephasingParams(cfg.trip2.p, value))
    if parameter in ("gamma", "delta"):
        return cfg.replace(**{parameter: value})
    raise ValueError(f"cannot sweep {parameter!r}; choose from {SWEEP_PARAMETERS}")


def sweep(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams, parameter: str,
          points: int, start: Optional[float] = None,
          stop: Optional[float] = None) -> List[SweepRow]:
    rows = []
    for v in sweep_values(parameter, points, start, stop):
        pay = closed_form_payoffs(config_at(cfg, parameter, float(v)), s1, s2)
        rows.append(SweepRow(float(v), pay.alice, pay.bob))
    return rows


@dataclass(frozen=True)
class AdvantageResult:
    advantage: float
    alice: StrategyParams
    bob: StrategyParams
    payoffs: PayoffPair


def quantum_advantage_detail(cfg: GameConfig, alice_classical: StrategyParams,
                             grid: GridSpec = DEFAULT_GRID,
                             respond_alice_first: bool = False) -> AdvantageResult:
    """Bob best-responds to a classical Alice; report ``$B - $A``.

    With ``respond_alice_first`` Alice's ``theta`` is first replaced by her
    classical best response to Bob's best response against her original move.
    """
    if not alice_classical.is_classical:
        raise ValueError("Alice must play a classical strategy (alpha = beta = 0)")
    alice = alice_classical
    bob, _ = best_response(cfg, alice, "bob", grid)
    if respond_alice_first:
        alice, _ = best_response(cfg, bob, "alice", grid, classical_only=True)
        bob, _ = best_response(cfg, alice, "bob", grid)
    pay = closed_form_payoffs(cfg, alice, bob)
    return AdvantageResult(pay.advantage, alice, bob, pay)


def quantum_advantage(cfg: GameConfig, alice_classical: StrategyParams,
                      grid: GridSpec = DEFAULT_GRID, respond_alice_first: bool = False) -> float:
    return quantum_advantage_detail(cfg, alice_classical, grid, respond_alice_first).advantage


def phase_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    return abs(math.remainder(a - b, 2 * PI))
