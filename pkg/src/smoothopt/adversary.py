"""Payoff-function generators.

The smoothed adversary draws each breakpoint from a uniform window of width
1/sigma (the simplest family with density bounded by sigma), clipped to
(0,1) by shifting the window inward so its width is preserved.  The
worst-case adversary is adaptive and halves an all-ones interval each
round; it exists to demonstrate linear regret without smoothing.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .piecewise import PiecewiseConstantFn

FIXED_ANCHORS = "fixed"
RANDOM_ANCHORS = "random"
BIASED_VALUES = "biased"
UNIFORM_VALUES = "uniform"


@dataclass
class SmoothedAdversaryConfig:
    k: int = 5
    sigma: float = 10.0
    anchors: str = FIXED_ANCHORS
    values: str = BIASED_VALUES

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.sigma < 1.0:
            raise ValueError("sigma must be >= 1")
        if self.anchors not in (FIXED_ANCHORS, RANDOM_ANCHORS):
            raise ValueError(f"unknown anchor mode {self.anchors!r}")
        if self.values not in (BIASED_VALUES, UNIFORM_VALUES):
            raise ValueError(f"unknown value mode {self.values!r}")

    def to_text(self) -> str:
        return (
            f"k {self.k}\nsigma {self.sigma!r}\n"
            f"anchors {self.anchors}\nvalues {self.values}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "SmoothedAdversaryConfig":
        kv = dict(line.split(None, 1) for line in text.splitlines() if line.strip())
        return cls(
            k=int(kv["k"]),
            sigma=float(kv["sigma"]),
            anchors=kv.get("anchors", FIXED_ANCHORS),
            values=kv.get("values", BIASED_VALUES),
        )


def _bounded_density_draw(center: float, sigma: float, rng: random.Random) -> float:
    """One draw from a uniform window of width 1/sigma around `center`,
    shifted inward so the support stays inside (0, 1)."""
    width = 1.0 / sigma
    lo = min(max(center - width / 2.0, 0.0), 1.0 - width)
    while True:
        x = lo + rng.random() * width
        if 0.0 < x < 1.0:
            return x


def smoothed_round(config: SmoothedAdversaryConfig, rng: random.Random) -> PiecewiseConstantFn:
    """One round's payoff function from the smoothed adversary."""
    k = config.k
    if config.anchors == FIXED_ANCHORS:
        centers = [i / k for i in range(1, k)]
    else:
        centers = [rng.random() for _ in range(k - 1)]
    points = sorted(_bounded_density_draw(c, config.sigma, rng) for c in centers)
    # exact duplicates are measure-zero; collapse them if they ever occur
    bps = [0.0]
    for p in points:
        if p != bps[-1]:
            bps.append(p)
    bps.append(1.0)
    npieces = len(bps) - 1
    good = (k - 1) // 2
    vals = []
    for i in range(npieces):
        u = rng.random()
        if config.values == BIASED_VALUES and i == good:
            vals.append(0.9 + 0.1 * u)
        else:
            vals.append(u)
    return PiecewiseConstantFn(tuple(bps), tuple(vals))


class WorstCaseAdversary:
    """Adaptive adversary forcing per-round regret 1/2 in expectation: keeps
    an interval on which every payoff so far was 1 and, each round, pays 1
    on a random half-extension of it."""

    def __init__(self):
        self.low = None
        self.high = None
        self.round = 0

    def next_round(self, rng: random.Random) -> PiecewiseConstantFn:
        if self.round == 0:
            a, b = 0.4, 0.6
            self.low, self.high = a, b
        else:
            m = (self.low + self.high) / 2.0
            if rng.random() < 0.5:
                a, b = m - 0.2, m
                self.low = max(self.low, a)
                self.high = m
            else:
                a, b = m, m + 0.2
                self.low = m
                self.high = min(self.high, b)
        self.round += 1
        return PiecewiseConstantFn((0.0, a, b, 1.0), (0.0, 1.0, 0.0))

    @property
    def surviving_interval(self) -> tuple[float, float]:
        return self.low, self.high


def min_pairwise_gap(points) -> float:
    pts = sorted(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    return min(b - a for a, b in zip(pts, pts[1:]))


def covering_check(anchors, samples) -> bool:
    """True iff every open gap between consecutive anchors contains at least
    one sample."""
    anchors = list(anchors)
    samples = sorted(samples)
    from bisect import bisect_right

    for lo, hi in zip(anchors, anchors[1:]):
        i = bisect_right(samples, lo)
        if i >= len(samples) or samples[i] >= hi:
            return False
    return True


def fine_net_size(eps: float, delta: float) -> int:
    """Sample count (1/eps)(ln(1/eps) + ln(1/delta)) for gap coverage."""
    return math.ceil((1.0 / eps) * (math.log(1.0 / eps) + math.log(1.0 / delta)))
