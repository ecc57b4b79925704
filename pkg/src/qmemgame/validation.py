"""Seeded cross-checks between the closed form and the density-matrix oracle.

Random draws use ``numpy.random.default_rng(seed)`` (PCG64), so a given seed
always yields the same parameters and the same report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List

import numpy as np

from .channels import (
    DephasingParams,
    apply_channel,
    coherence_decay_factor,
    correlated_dephasing_kraus,
    n_qubit_product_kraus,
)
from .games import Game2x2, StrategyParams, strategy_unitary
from .linalg import is_hermitian, is_psd
from .protocol import GameConfig, closed_form_payoffs, measurement_vectors, simulate_protocol

PI = math.pi
EQUIVALENCE_TOL = 1e-9


@dataclass
class EquivalenceReport:
    draws: int
    seed: int
    max_deviation: float
    mean_deviation: float
    worst: Dict[str, float]

    @property
    def passed(self) -> bool:
        return self.max_deviation <= EQUIVALENCE_TOL


def random_game(rng, name="random") -> Game2x2:
    vals = rng.uniform(-5, 5, 8)
    return Game2x2(name, (tuple(vals[0:2]), tuple(vals[2:4])), (tuple(vals[4:6]), tuple(vals[6:8])))


def random_scenario(rng, classical: bool = False, cross_phase: int = 1):
    """Draw a config and two strategies over the full parameter ranges."""
    gamma, delta = (0.0, 0.0) if classical else tuple(rng.uniform(0, PI / 2, 2))
    p1, mu1, p2, mu2 = rng.uniform(0, 1, 4)
    cfg = GameConfig(float(gamma), float(delta), DephasingParams(p1, mu1),
                     DephasingParams(p2, mu2), random_game(rng), cross_phase)
    s1 = StrategyParams(rng.uniform(0, PI), *rng.uniform(-PI, PI, 2))
    s2 = StrategyParams(rng.uniform(0, PI), *rng.uniform(-PI, PI, 2))
    return cfg, s1, s2


def _describe(cfg: GameConfig, s1: StrategyParams, s2: StrategyParams) -> Dict[str, float]:
    d = {"gamma": cfg.gamma, "delta": cfg.delta, "p1": cfg.trip1.p, "mu1": cfg.trip1.mu,
         "p2": cfg.trip2.p, "mu2": cfg.trip2.mu}
    for k, s in (("1", s1), ("2", s2)):
        d.update({f"theta{k}": s.theta, f"alpha{k}": s.alpha, f"beta{k}": s.beta})
    for name, tab in (("a", cfg.game.payoff_a), ("b", cfg.game.payoff_b)):
        for i in range(2):
            for j in range(2):
                d[f"payoff_{name}_{i}{j}"] = tab[i][j]
    return d


def validate_equivalence(draws: int, seed: int, classical: bool = False,
                         cross_phase: int = 1) -> EquivalenceReport:
    """Compare closed form and simulation per player over ``draws`` random scenarios."""
    if draws < 1:
        raise ValueError("draws must be positive")
    rng = np.random.default_rng(seed)
    devs = []
    worst, worst_dev = None, -1.0
    for _ in range(draws):
        cfg, s1, s2 = random_scenario(rng, classical, cross_phase)
        ref = simulate_protocol(cfg, s1, s2, validate=True)
        got = closed_form_payoffs(cfg, s1, s2)
        dev = max(abs(ref.alice - got.alice), abs(ref.bob - got.bob))
        devs.append(dev)
        if dev > worst_dev:
            worst_dev, worst = dev, (cfg, s1, s2)
    return EquivalenceReport(draws, seed, float(max(devs)), float(np.mean(devs)), _describe(*worst))


def _random_density_matrix(rng, dim=4) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


@dataclass
class InvariantResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float


def structural_invariants(draws: int, seed: int) -> List[InvariantResult]:
    """Unitarity, Kraus completeness, channel properties and coherence factors."""
    rng = np.random.default_rng(seed)
    errs = {k: 0.0 for k in ("unitarity", "completeness", "trace", "hermiticity", "psd",
                             "double_flip", "single_flip", "product_limit", "projectors")}
    for _ in range(draws):
        s = StrategyParams(rng.uniform(0, PI), *rng.uniform(-PI, PI, 2))
        u = strategy_unitary(s)
        errs["unitarity"] = max(errs["unitarity"], float(np.max(np.abs(u.conj().T @ u - np.eye(2)))))

        params = DephasingParams(*rng.uniform(0, 1, 2))
        kraus = correlated_dephasing_kraus(params)
        errs["completeness"] = max(errs["completeness"], kraus.completeness_error())

        rho = _random_density_matrix(rng)
        out = apply_channel(rho, kraus)
        errs["trace"] = max(errs["trace"], abs(np.trace(out) - 1.0))
        errs["hermiticity"] = max(errs["hermiticity"], float(np.max(np.abs(out - out.conj().T))))
        errs["psd"] = max(errs["psd"], max(0.0, -float(np.linalg.eigvalsh(out)[0])))
        mup = coherence_decay_factor(params)
        errs["double_flip"] = max(errs["double_flip"], abs(out[0, 3] - mup * rho[0, 3]),
                                  abs(out[1, 2] - mup * rho[1, 2]))
        errs["single_flip"] = max(errs["single_flip"], abs(out[0, 1] - (1 - params.p) * rho[0, 1]),
                                  abs(out[0, 2] - (1 - params.p) * rho[0, 2]))
        prod = apply_channel(rho, n_qubit_product_kraus(params.p, 2))
        uncorr = apply_channel(rho, correlated_dephasing_kraus(DephasingParams(params.p, 0.0)))
        errs["product_limit"] = max(errs["product_limit"], float(np.max(np.abs(prod - uncorr))))

        vecs = measurement_vectors(rng.uniform(0, PI / 2))
        total = sum(np.outer(v, v.conj()) for v in vecs.values())
        errs["projectors"] = max(errs["projectors"], float(np.max(np.abs(total - np.eye(4)))))

    tols = {"unitarity": 1e-12, "completeness": 1e-12, "trace": 1e-12, "hermiticity": 1e-10,
            "psd": 1e-8, "double_flip": 1e-12, "single_flip": 1e-12, "product_limit": 1e-12,
            "projectors": 1e-12}
    return [InvariantResult(k, bool(errs[k] <= tols[k]), float(errs[k]), tols[k]) for k in errs]
