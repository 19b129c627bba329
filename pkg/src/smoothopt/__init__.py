"""Online optimization of smoothed piecewise-constant payoffs on [0, 1).

A continuous exponentially-weighted forecaster (full-information and
bandit variants) backed by a lazy-message interval tree, payoff-function
generators, exact payoff curves for three parameterized greedy heuristic
families, and an experiment harness with a CLI.
"""

from .adversary import (
    SmoothedAdversaryConfig,
    WorstCaseAdversary,
    covering_check,
    fine_net_size,
    min_pairwise_gap,
    smoothed_round,
)
from .bandit import BanditLearner, default_params, theoretical_bound
from .forecaster import Forecaster, ProtocolError, regret_bound, suggested_eta
from .harness import (
    ConfigError,
    ExperimentConfig,
    RegretRecord,
    checkpoints,
    emit_csv,
    run_experiment,
)
from .heuristics import (
    KMeansInstance,
    KnapsackInstance,
    MwisInstance,
    kmeans_greedy,
    knapsack_greedy,
    mwis_greedy,
    payoff_curve,
    random_kmeans,
    random_knapsack,
    random_mwis,
)
from .lazy_tree import ADDITIVE, MULTIPLICATIVE, LazyIntervalTree
from .piecewise import PiecewiseConstantFn

__all__ = [
    "ADDITIVE",
    "BanditLearner",
    "ConfigError",
    "ExperimentConfig",
    "Forecaster",
    "KMeansInstance",
    "KnapsackInstance",
    "LazyIntervalTree",
    "MULTIPLICATIVE",
    "MwisInstance",
    "PiecewiseConstantFn",
    "ProtocolError",
    "RegretRecord",
    "SmoothedAdversaryConfig",
    "WorstCaseAdversary",
    "checkpoints",
    "regret_bound",
    "covering_check",
    "default_params",
    "emit_csv",
    "fine_net_size",
    "kmeans_greedy",
    "knapsack_greedy",
    "min_pairwise_gap",
    "mwis_greedy",
    "payoff_curve",
    "random_kmeans",
    "random_knapsack",
    "random_mwis",
    "run_experiment",
    "smoothed_round",
    "suggested_eta",
    "theoretical_bound",
]
