"""Backend selection for the closed-form payoff kernels.

The compiled extension is used when it imports; otherwise the numpy
implementation is used. Set ``QMEMGAME_PURE_PYTHON=1`` to force the fallback.
"""

import math
import os

from . import _pykernels
from .games import StrategyParams
from .protocol import closed_form_terms

if os.environ.get("QMEMGAME_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "numpy"

payoff_batch = _impl.payoff_batch
response_grid = _impl.response_grid


def scenario_constants(cfg):
    """Strategy-independent coefficients of the closed form for ``cfg``."""
    t = closed_form_terms(cfg, StrategyParams(0.0), StrategyParams(0.0))
    return (t.eta, t.chi, t.xi, t.mup1, t.mup2,
            math.sin(cfg.delta), math.sin(cfg.gamma), float(cfg.cross_phase))


def flat_table(game, player):
    return tuple(float(x) for x in game.table(player).ravel())
