"""Experiment driver: (learner x environment) games over repetitions.

Each repetition plays T rounds and records per-round regret
(OPT_t - payoff_t) / t at geometric checkpoints {1, 2, 4, ...} plus T;
best-in-hindsight is recomputed only at checkpoints because an exact OPT
at every t costs O(t).  Heuristic environments draw a fresh random
instance every round (its payoff curve is the round's function) unless
fixed_instance is set.  Everything is deterministic given the base seed:
repetition r uses rngs seeded from "{seed}:{r}:env" and "{seed}:{r}:alg",
and aggregation is a plain mean/std over repetitions, so results do not
depend on how repetitions are scheduled.  SMOOTHOPT_THREADS caps worker
processes (0 or unset = all cores).
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import adversary, bandit, forecaster, heuristics
from .lazy_tree import ADDITIVE, LazyIntervalTree

ENVIRONMENTS = ("smoothed", "worstcase", "knapsack", "mwis", "kmeans")
LEARNERS = ("fullinfo", "bandit")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    environment: str
    learner: str = "fullinfo"
    T: int = 1000
    rounds: int = 1  # repetitions
    eta: float | None = None
    mu: float | None = None
    gamma: float | None = None
    seed: int = 0
    # smoothed adversary
    k: int = 5
    sigma: float = 10.0
    anchors: str = adversary.FIXED_ANCHORS
    values: str = adversary.BIASED_VALUES
    # heuristic environments
    n: int = 20
    capacity: float = 1.0
    edge_prob: float = 0.3
    centers: int = 3
    fixed_instance: bool = False

    def validate(self):
        if self.environment not in ENVIRONMENTS:
            raise ConfigError(f"unknown environment {self.environment!r}")
        if self.learner not in LEARNERS:
            raise ConfigError(f"unknown learner {self.learner!r}")
        if self.T < 1 or self.rounds < 1:
            raise ConfigError("T and rounds must be >= 1")
        if self.environment == "smoothed":
            try:
                adversary.SmoothedAdversaryConfig(
                    self.k, self.sigma, self.anchors, self.values
                )
            except ValueError as e:
                raise ConfigError(str(e)) from e
        if self.environment in ("knapsack", "mwis", "kmeans") and self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.environment == "kmeans" and not 1 <= self.centers <= self.n:
            raise ConfigError("need 1 <= centers <= n")
        if self.learner == "bandit":
            mu, gamma, eta = self.bandit_params()
            try:
                bandit._check_params(mu, gamma, eta)
            except ValueError as e:
                raise ConfigError(str(e)) from e
        elif self.eta is not None and not self.eta > 0:
            raise ConfigError("eta must be positive")

    # environment-dependent parameters fed into eta / bound formulas; for
    # heuristic environments k is a per-round piece-count proxy and sigma=1
    def env_k_sigma(self) -> tuple[int, float]:
        if self.environment == "smoothed":
            return self.k, self.sigma
        if self.environment == "worstcase":
            return 3, 1.0
        if self.environment == "knapsack":
            return 1 + self.n * (self.n - 1) // 2, 1.0
        if self.environment == "mwis":
            return self.n * self.n, 1.0
        return (self.n * self.centers) ** 2, 1.0

    def fullinfo_eta(self) -> float:
        if self.eta is not None:
            return self.eta
        k, sigma = self.env_k_sigma()
        return forecaster.suggested_eta(self.T, k, sigma)

    def bandit_params(self) -> tuple[float, float, float]:
        mu, gamma, eta = bandit.default_params(self.T)
        if self.mu is not None:
            mu = self.mu
        if self.gamma is not None:
            gamma = self.gamma
        if self.eta is not None:
            eta = self.eta
        elif self.mu is not None or self.gamma is not None:
            eta = gamma * mu
        return mu, gamma, eta


@dataclass
class RegretRecord:
    t: int
    mean_regret: float
    std_regret: float
    bound: float


def checkpoints(T: int) -> list[int]:
    out = []
    t = 1
    while t < T:
        out.append(t)
        t *= 2
    out.append(T)
    return out


def _make_environment(config: ExperimentConfig, rng: random.Random):
    """Returns a zero-arg callable producing the next round's payoff fn."""
    env = config.environment
    if env == "smoothed":
        cfg = adversary.SmoothedAdversaryConfig(
            config.k, config.sigma, config.anchors, config.values
        )
        return lambda: adversary.smoothed_round(cfg, rng)
    if env == "worstcase":
        adv = adversary.WorstCaseAdversary()
        return lambda: adv.next_round(rng)
    if env == "knapsack":
        draw = lambda: heuristics.random_knapsack(config.n, rng, config.capacity)
    elif env == "mwis":
        draw = lambda: heuristics.random_mwis(config.n, config.edge_prob, rng)
    else:
        draw = lambda: heuristics.random_kmeans(config.n, config.centers, rng)
    if config.fixed_instance:
        curve = heuristics.payoff_curve(draw())
        return lambda: curve
    return lambda: heuristics.payoff_curve(draw())


def _run_rep(config: ExperimentConfig, rep: int) -> dict[int, float]:
    """One repetition; returns checkpoint t -> per-round regret."""
    env_rng = random.Random(f"{config.seed}:{rep}:env")
    alg_rng = random.Random(f"{config.seed}:{rep}:alg")
    next_fn = _make_environment(config, env_rng)
    marks = set(checkpoints(config.T))
    out = {}
    # The halving adversary pays some point in every round by construction,
    # so its optimum is exactly t.  Measuring it from the float breakpoints
    # instead would underestimate once the surviving interval shrinks below
    # the float spacing (after about 52 halvings).
    analytic_opt = config.environment == "worstcase"
    if config.learner == "fullinfo":
        learner = forecaster.Forecaster(config.fullinfo_eta(), rng=alg_rng)
        for t in range(1, config.T + 1):
            f = next_fn()
            learner.select()
            learner.update(f)
            if t in marks:
                opt = float(t) if analytic_opt else learner.best_in_hindsight()[1]
                out[t] = (opt - learner.payoff_total) / t
    else:
        mu, gamma, eta = config.bandit_params()
        learner = bandit.BanditLearner(eta, mu, gamma, rng=alg_rng)
        opt_tree = LazyIntervalTree(ADDITIVE)
        for t in range(1, config.T + 1):
            f = next_fn()
            x, _ = learner.select()
            learner.update(f.evaluate(x))
            for lo, hi, v in f.pieces():
                if v != 0.0:
                    opt_tree.range_update((lo, hi), v)
            if t in marks:
                if analytic_opt:
                    opt = float(t)
                else:
                    opt = max(v for _, v in opt_tree.leaves())
                out[t] = (opt - learner.payoff_total) / t
    return out


def _worker(args):
    return _run_rep(*args)


def _thread_budget() -> int:
    raw = os.environ.get("SMOOTHOPT_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    ncpu = os.cpu_count() or 1
    return ncpu if cap <= 0 else min(cap, ncpu)


def run_experiment(config: ExperimentConfig) -> list[RegretRecord]:
    config.validate()
    jobs = [(config, rep) for rep in range(config.rounds)]
    workers = min(_thread_budget(), config.rounds)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_rep = list(pool.map(_worker, jobs))
    else:
        per_rep = [_run_rep(*job) for job in jobs]

    if config.learner == "fullinfo":
        bound_at = lambda t: 2.0 * config.fullinfo_eta()
    else:
        mu, gamma, eta = config.bandit_params()
        k, sigma = config.env_k_sigma()
        total = bandit.theoretical_bound(config.T, k, sigma, mu, gamma, eta)
        bound_at = lambda t: total / t

    records = []
    for t in checkpoints(config.T):
        xs = [rep[t] for rep in per_rep]
        mean = sum(xs) / len(xs)
        var = sum((x - mean) ** 2 for x in xs) / len(xs)
        records.append(RegretRecord(t, mean, math.sqrt(var), bound_at(t)))
    return records


def emit_csv(records: list[RegretRecord], path: str):
    """Write `t,mean_regret,std_regret,bound` rows; byte-stable for equal
    inputs."""
    if not records:
        raise ValueError("no records to write")
    lines = ["t,mean_regret,std_regret,bound"]
    for r in records:
        lines.append(f"{r.t},{r.mean_regret!r},{r.std_regret!r},{r.bound!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
