"""Exact analysis of congestion games with perception parameters rho and sigma."""

from .bounds import BoundValue, delta_sigma, h_sigma, network_pos_bound, poa_upper_bound, pos_upper_bound
from .equilibria import (
    BudgetExceeded,
    EnumerationBudget,
    RatioResult,
    enumerate_nash,
    is_approx_nash,
    is_nash,
    potential_minimizer,
    price_of_anarchy,
    price_of_stability,
    ratios_from_scan,
    scan_profiles,
    social_optimum,
)
from .game import (
    Game,
    GameError,
    PerceptionParams,
    Resource,
    altruistic_cost,
    perceived_cost,
    potential,
    social_cost,
    tax_cost,
)
from .generators import (
    CONSTRUCTIONS,
    gen_poa_general,
    gen_poa_network,
    gen_pos_general,
    gen_singleton_pos,
    gen_two_player_tight,
)
from .network import NetworkGame, fotakis_condition, to_congestion_game
from .verifier import VerificationReport, delta_sweep, verify

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
