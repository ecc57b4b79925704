"""Two-player quantum games through correlated dephasing channels."""

from .channels import (
    DephasingParams,
    KrausSet,
    apply_channel,
    coherence_decay_factor,
    correlated_dephasing_kraus,
    lambda_to_p,
    n_qubit_product_kraus,
    single_qubit_dephasing_kraus,
)
from .games import (
    BUILTIN_GAMES,
    Game2x2,
    StrategyParams,
    builtin_game,
    classical_mixed_payoff,
    pure_nash_equilibria,
    strategy_unitary,
)
from .protocol import (
    ClosedFormTerms,
    GameConfig,
    PayoffPair,
    closed_form_payoff,
    closed_form_payoffs,
    closed_form_terms,
    initial_state,
    measurement_vectors,
    payoff_operator,
    simulate_protocol,
)

__version__ = "0.1.0"
