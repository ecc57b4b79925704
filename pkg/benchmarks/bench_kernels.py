"""Compare the compiled and numpy payoff kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times one full ``response_grid`` call at the default search resolution and
one complete ``best_response`` (grid plus refinement) per backend, and checks
that both backends return the same grid.
"""

import argparse
import math
import time

import numpy as np

from qmemgame import GameConfig, StrategyParams, _pykernels
from qmemgame.analysis import DEFAULT_GRID
from qmemgame.kernels import flat_table, scenario_constants

try:
    from qmemgame import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cfg = GameConfig.symmetric(math.pi / 2, math.pi / 2, 0.3, 0.5, "prisoners-dilemma")
    alice = StrategyParams(math.pi / 2)
    g = DEFAULT_GRID
    axes = (np.linspace(0, math.pi, g.theta_steps), np.linspace(-math.pi, math.pi, g.alpha_steps),
            np.linspace(-math.pi, math.pi, g.beta_steps))
    call = (flat_table(cfg.game, "bob"), scenario_constants(cfg), alice.as_tuple(), 1) + axes
    points = g.theta_steps * g.alpha_steps * g.beta_steps

    backends = [("numpy", _pykernels)]
    if _kernels is None:
        print("compiled extension not built; timing numpy only")
    else:
        backends.insert(0, ("cython", _kernels))
        diff = np.max(np.abs(_kernels.response_grid(*call) - _pykernels.response_grid(*call)))
        print(f"max |cython - numpy| on the grid: {diff:.2e}")

    # a full search is 1 + refine_rounds grid evaluations of the same size
    calls = 1 + g.refine_rounds
    print(f"{'backend':8} {'grid (ms)':>10} {'Mpts/s':>8} {'search (ms)':>12}")
    base = None
    for name, mod in backends:
        t = best_of(lambda: mod.response_grid(*call), args.repeat)
        base = base or t
        print(f"{name:8} {t * 1e3:10.2f} {points / t / 1e6:8.1f} {t * calls * 1e3:12.2f}")
    if len(backends) == 2:
        t_np = best_of(lambda: _pykernels.response_grid(*call), args.repeat)
        print(f"speedup: {t_np / base:.1f}x")


if __name__ == "__main__":
    main()
