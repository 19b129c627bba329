"""Continuous exponentially-weighted forecaster (full information).

Each round alternates strictly: `select()` samples x_t from the density
exp(eta * F_t) / W_t, then `update(f_t)` folds the revealed payoff function
into the weights.  A multiplicative tree carries the sampling weights (with
periodic renormalization so they stay in floating-point range); a second,
additive tree tracks the cumulative payoff F_t exactly, so best-in-hindsight
and regret are free of exp/log round-trips.
"""

from __future__ import annotations

import math
import random

from .lazy_tree import ADDITIVE, MULTIPLICATIVE, LazyIntervalTree
from .piecewise import PiecewiseConstantFn

E_MINUS_2 = math.e - 2.0


class ProtocolError(RuntimeError):
    """select/update called out of turn."""


def suggested_eta(T: int, k: int, sigma: float) -> float:
    """Learning rate sqrt(ln(k^2 T^3 sigma) / ((e-2) T)), clamped to (0, 1]."""
    if T < 1 or k < 1 or sigma <= 0.0:
        raise ValueError("need T >= 1, k >= 1, sigma > 0")
    arg = k * k * float(T) ** 3 * sigma
    if arg <= 1.0:
        raise ValueError("k^2 T^3 sigma must exceed 1")
    return min(1.0, math.sqrt(math.log(arg) / (E_MINUS_2 * T)))


def regret_bound(T: int, k: int, sigma: float) -> float:
    """Expected-regret bound 2 sqrt((e-2) ln(k^2 T^3 sigma) T) + 1."""
    return 2.0 * math.sqrt(E_MINUS_2 * math.log(k * k * float(T) ** 3 * sigma) * T) + 1.0


class Forecaster:
    def __init__(
        self,
        eta: float,
        rng: random.Random | None = None,
        renorm_low: float = 1e-100,
        renorm_high: float = 1e100,
    ):
        if not eta > 0.0:
            raise ValueError("eta must be positive")
        self.eta = float(eta)
        self.rng = rng if rng is not None else random.Random()
        self.tree = LazyIntervalTree(MULTIPLICATIVE)
        self.cum_tree = LazyIntervalTree(ADDITIVE)
        self.t = 0
        self.payoff_total = 0.0
        self.log_scale_offset = 0.0
        self._renorm_low = renorm_low
        self._renorm_high = renorm_high
        self._x = None  # pending selection for the open round

    def select(self) -> float:
        if self._x is not None:
            raise ProtocolError("select() called twice in one round")
        self._x = self.tree.draw(self.rng)
        return self._x

    def update(self, f: PiecewiseConstantFn) -> float:
        if self._x is None:
            raise ProtocolError("update() before select()")
        if any(not 0.0 <= v <= 1.0 for v in f.values):
            raise ValueError("payoff values must lie in [0, 1]")
        payoff = f.evaluate(self._x)
        for lo, hi, v in f.pieces():
            if v != 0.0:
                self.tree.range_update((lo, hi), math.exp(self.eta * v))
                self.cum_tree.range_update((lo, hi), v)
        self._renormalize()
        self.payoff_total += payoff
        self.t += 1
        self._x = None
        return payoff

    def _renormalize(self):
        mass = self.tree.total_mass()
        if not self._renorm_low < mass < self._renorm_high:
            self.tree.range_update((0.0, 1.0), 1.0 / mass)
            self.log_scale_offset += math.log(mass)

    def best_in_hindsight(self) -> tuple[tuple[float, float], float]:
        """Leftmost maximal piece of the cumulative payoff and its value."""
        if self.t == 0:
            raise ProtocolError("no rounds played")
        best_iv, best_v = None, None
        for iv, v in self.cum_tree.leaves():
            if best_v is None or v > best_v:
                best_iv, best_v = iv, v
        return best_iv, best_v

    def regret(self) -> float:
        _, opt = self.best_in_hindsight()
        return opt - self.payoff_total

    def sampling_distribution(self) -> list[tuple[tuple[float, float], float]]:
        """Leaf intervals with their sampling probabilities (diagnostics)."""
        total = self.tree.total_mass()
        return [(iv, om / total) for iv, om in self.tree.leaves()]
