"""Bandit learner on a fixed 1/mu grid with gamma-uniform exploration.

Only the played point's payoff is observed.  The importance-weighted
estimate observed / p(I_t) is applied to the whole grid interval I_t; the
constraint eta <= gamma * mu keeps eta times the estimate at most 1.  The
gamma-mixture is realized at sampling time (coin flip, then either a
uniform point or a tree draw), so the tree weights are exactly the
exponential weights w_t.
"""

from __future__ import annotations

import math
import random

from .forecaster import ProtocolError
from .lazy_tree import MULTIPLICATIVE, LazyIntervalTree
from .piecewise import PiecewiseConstantFn


def default_params(T: int) -> tuple[float, float, float]:
    """(mu, gamma, eta) with mu = gamma ~ T^(-1/3) and eta = gamma * mu."""
    m = max(2, round(T ** (1.0 / 3.0)))
    mu = 1.0 / m
    gamma = min(0.5, T ** (-1.0 / 3.0))
    return mu, gamma, gamma * mu


def theoretical_bound(T, k, sigma, mu, gamma, eta) -> float:
    """Four-term regret bound 2gT + 2(eta/mu)T + ln(1/mu)/eta + k sigma mu T."""
    _check_params(mu, gamma, eta)
    if T < 1 or k < 1 or sigma <= 0.0:
        raise ValueError("need T >= 1, k >= 1, sigma > 0")
    return (
        2.0 * gamma * T
        + 2.0 * (eta / mu) * T
        + math.log(1.0 / mu) / eta
        + k * sigma * mu * T
    )


def _check_params(mu, gamma, eta):
    inv = 1.0 / mu
    if abs(inv - round(inv)) > 1e-9:
        raise ValueError("1/mu must be a natural number")
    if not 0.0 < gamma <= 0.5:
        raise ValueError("gamma must lie in (0, 1/2]")
    if not 0.0 < eta <= gamma * mu * (1.0 + 1e-12):
        raise ValueError("need 0 < eta <= gamma * mu")


class BanditLearner:
    def __init__(self, eta: float, mu: float, gamma: float, rng: random.Random | None = None):
        _check_params(mu, gamma, eta)
        self.eta = float(eta)
        self.mu = float(mu)
        self.gamma = float(gamma)
        self.grid_size = round(1.0 / mu)
        self.rng = rng if rng is not None else random.Random()
        self.tree = LazyIntervalTree(MULTIPLICATIVE)
        for i in range(1, self.grid_size):
            self.tree.insert(i * self.mu)
        self.t = 0
        self.payoff_total = 0.0
        self.log_scale_offset = 0.0
        self._x = None
        self._interval = None

    def interval_of(self, x: float) -> tuple[int, tuple[float, float]]:
        """Grid index and interval containing x."""
        i = min(int(x / self.mu), self.grid_size - 1)
        return i, (i * self.mu, min(1.0, (i + 1) * self.mu))

    def interval_probability(self, interval: tuple[float, float]) -> float:
        """Exact p_t(I) = (1-gamma) mass(I)/total + gamma |I|."""
        lo, hi = interval
        _, mass = self.tree.leaf_at(lo)
        total = self.tree.total_mass()
        return (1.0 - self.gamma) * mass / total + self.gamma * (hi - lo)

    def select(self) -> tuple[float, tuple[float, float]]:
        if self._x is not None:
            raise ProtocolError("select() called twice in one round")
        if self.rng.random() < self.gamma:
            x = self.rng.random()
        else:
            x = self.tree.draw(self.rng)
        _, interval = self.interval_of(x)
        self._x, self._interval = x, interval
        return x, interval

    def update(self, observed: float):
        if self._x is None:
            raise ProtocolError("update() before select()")
        if not 0.0 <= observed <= 1.0:
            raise ValueError("observed payoff must lie in [0, 1]")
        p = self.interval_probability(self._interval)
        estimate = observed / p
        # guaranteed by eta <= gamma * mu and p >= gamma * mu
        assert self.eta * estimate <= 1.0 + 1e-9
        if estimate != 0.0:
            self.tree.range_update(self._interval, math.exp(self.eta * estimate))
        mass = self.tree.total_mass()
        if not 1e-100 < mass < 1e100:
            self.tree.range_update((0.0, 1.0), 1.0 / mass)
            self.log_scale_offset += math.log(mass)
        self.payoff_total += observed
        self.t += 1
        self._x = None
        self._interval = None
        assert self.tree.leaf_count == self.grid_size

    def regret_vs(self, payoff_fns: list[PiecewiseConstantFn]) -> float:
        """Best fixed point's payoff over the supplied round functions minus
        the realized payoff total.  The harness retains the functions; the
        learner itself never saw them in full."""
        if len(payoff_fns) != self.t:
            raise ProtocolError(
                f"got {len(payoff_fns)} round functions for {self.t} rounds"
            )
        total = payoff_fns[0]
        for f in payoff_fns[1:]:
            total = total.sum(f)
        _, opt = total.argmax_interval()
        return opt - self.payoff_total
