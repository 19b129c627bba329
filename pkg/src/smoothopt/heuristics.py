"""Single-parameter greedy families and exact payoff-as-a-function-of-rho.

Three problem families, each with a scoring rule parameterized by rho in
[0,1): Knapsack orders items by v_i / s_i^rho (non-increasing, so rho=0 is
greedy-by-value and rho=1 greedy-by-density), MWIS repeatedly takes the
vertex maximizing w_i / deg_i^rho after absorbing degree-0 vertices, and
weighted k-means grows a center set by the score max_{i in S} w_p /
d(p,i)^(1/rho), which favors points close to existing centers.

In log space every score is linear in rho (or in u = 1/rho for k-means),
so all score crossings have closed forms and the payoff over rho is an
exactly recoverable piecewise constant function: within an interval where
no scores cross, every greedy choice is fixed.  Curves are refined
stage by stage and agree with direct simulation at every interior point.

Because the k-means exponent 1/rho blows up at 0, its curve lives on
rho in [KMEANS_RHO_MIN, 1) remapped affinely onto [0, 1) for the learner.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .piecewise import PiecewiseConstantFn

CROSSING_TOL = 1e-12
KMEANS_RHO_MIN = 1e-3


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class KnapsackInstance:
    values: np.ndarray
    sizes: np.ndarray
    capacity: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        object.__setattr__(self, "sizes", np.asarray(self.sizes, dtype=float))
        if len(self.values) < 1 or len(self.values) != len(self.sizes):
            raise ValueError("need n >= 1 matching values and sizes")
        if not (np.all(self.values > 0) and np.all(self.sizes > 0) and self.capacity > 0):
            raise ValueError("values, sizes and capacity must be positive")

    @property
    def n(self) -> int:
        return len(self.values)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.capacity!r}"]
        lines += [f"{float(v)!r} {float(s)!r}" for v, s in zip(self.values, self.sizes)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KnapsackInstance":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n_str, cap = lines[0].split()
        rows = [ln.split() for ln in lines[1 : 1 + int(n_str)]]
        return cls(
            np.array([float(r[0]) for r in rows]),
            np.array([float(r[1]) for r in rows]),
            float(cap),
        )


@dataclass(frozen=True)
class MwisInstance:
    weights: np.ndarray
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if not np.all(self.weights > 0):
            raise ValueError("weights must be positive")
        n = len(self.weights)
        seen = set()
        norm = []
        for a, b in self.edges:
            if a == b:
                raise ValueError("self-loops not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("edge endpoint out of range")
            e = (min(a, b), max(a, b))
            if e not in seen:
                seen.add(e)
                norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.weights)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines.append(" ".join(repr(float(w)) for w in self.weights))
        lines += [f"{a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MwisInstance":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n, m = (int(tok) for tok in lines[0].split())
        weights = np.array([float(tok) for tok in lines[1].split()])
        edges = tuple(tuple(int(t) for t in ln.split()) for ln in lines[2 : 2 + m])
        return cls(weights, edges)


@dataclass(frozen=True)
class KMeansInstance:
    points: np.ndarray
    weights: np.ndarray
    k: int
    _dist: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if len(pts) != len(w) or len(pts) < self.k or self.k < 1:
            raise ValueError("need n >= k >= 1 matching points and weights")
        if not np.all(w > 0):
            raise ValueError("weights must be positive")
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=2))
        if np.any(dist[~np.eye(len(pts), dtype=bool)] == 0.0):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "_dist", dist)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def dist(self) -> np.ndarray:
        return self._dist

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += [
            f"{float(p[0])!r} {float(p[1])!r} {float(w)!r}"
            for p, w in zip(self.points, self.weights)
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KMeansInstance":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n, k = (int(tok) for tok in lines[0].split())
        rows = [ln.split() for ln in lines[1 : 1 + n]]
        pts = np.array([[float(r[0]), float(r[1])] for r in rows])
        w = np.array([float(r[2]) for r in rows])
        return cls(pts, w, k)


# ---------------------------------------------------------------------------
# random instance generators (the experiment distributions)


def _positive_uniform(rng: random.Random) -> float:
    while True:
        u = rng.random()
        if u > 0.0:
            return u


def random_knapsack(n: int, rng: random.Random, capacity: float = 1.0) -> KnapsackInstance:
    values = np.array([_positive_uniform(rng) for _ in range(n)])
    sizes = np.array([_positive_uniform(rng) for _ in range(n)])
    return KnapsackInstance(values, sizes, capacity)


def random_mwis(n: int, edge_prob: float, rng: random.Random) -> MwisInstance:
    weights = np.array([_positive_uniform(rng) for _ in range(n)])
    edges = tuple(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    )
    return MwisInstance(weights, edges)


def random_kmeans(n: int, k: int, rng: random.Random) -> KMeansInstance:
    centers = [
        (5.0 * math.cos(2 * math.pi * i / k), 5.0 * math.sin(2 * math.pi * i / k))
        for i in range(k)
    ]
    pts = []
    for i in range(n):
        cx, cy = centers[i % k]
        pts.append((cx + rng.gauss(0, 1), cy + rng.gauss(0, 1)))
    weights = np.array([_positive_uniform(rng) for _ in range(n)])
    return KMeansInstance(np.array(pts), weights, k)


# ---------------------------------------------------------------------------
# greedy heuristics (pointwise simulation)


def knapsack_greedy(inst: KnapsackInstance, rho: float) -> tuple[list[int], float]:
    """Items in non-increasing v/s^rho order, added when they fit."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    scores = np.log(inst.values) - rho * np.log(inst.sizes)
    order = np.argsort(-scores, kind="stable")
    chosen = []
    rem = inst.capacity
    total = 0.0
    for i in order:
        if inst.sizes[i] <= rem:
            rem = rem - inst.sizes[i]
            total = total + inst.values[i]
            chosen.append(int(i))
    return chosen, float(total)


def _mwis_step(inst: MwisInstance, alive: set[int], adj, rho: float) -> tuple[list[int], int | None]:
    """Absorb degree-0 vertices, then report the max-score vertex (or None
    if nothing remains)."""
    zero = sorted(i for i in alive if not (adj[i] & alive))
    for i in zero:
        alive.discard(i)
    if not alive:
        return zero, None
    cand = sorted(alive)
    degs = np.array([float(len(adj[i] & alive)) for i in cand])
    scores = np.log(inst.weights[cand]) - rho * np.log(degs)
    return zero, cand[int(np.argmax(scores))]


def mwis_greedy(inst: MwisInstance, rho: float) -> tuple[list[int], float]:
    if not 0.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [0, 1]")
    adj = inst.adjacency()
    alive = set(range(inst.n))
    chosen: list[int] = []
    while alive:
        zero, pick = _mwis_step(inst, alive, adj, rho)
        chosen += zero
        if pick is None:
            break
        chosen.append(pick)
        for j in adj[pick] & alive:
            alive.discard(j)
        alive.discard(pick)
    return chosen, float(sum(inst.weights[i] for i in chosen))


def _kmeans_first_center(inst: KMeansInstance) -> int:
    # the score is undefined for an empty center set; seed with the
    # max-weight point, which is rho-independent
    return int(np.argmax(inst.weights))


def _kmeans_pick(inst: KMeansInstance, S: list[int], cand: list[int], rho: float) -> int:
    u = 1.0 / rho
    dmin = inst.dist[np.ix_(cand, S)].min(axis=1)
    scores = np.log(inst.weights[cand]) - u * np.log(dmin)
    return cand[int(np.argmax(scores))]


def kmeans_cost(inst: KMeansInstance, S: list[int]) -> float:
    dmin = inst.dist[:, S].min(axis=1)
    return float(np.sum(inst.weights * dmin**2))


def kmeans_greedy(inst: KMeansInstance, rho: float) -> tuple[list[int], float]:
    if not 0.0 < rho <= 1.0:
        raise ValueError("rho must lie in (0, 1]")
    S = [_kmeans_first_center(inst)]
    while len(S) < inst.k:
        cand = [p for p in range(inst.n) if p not in S]
        S.append(_kmeans_pick(inst, S, cand, rho))
    return S, kmeans_cost(inst, S)


# ---------------------------------------------------------------------------
# payoff normalization


def knapsack_payoff(inst: KnapsackInstance, rho: float, normalize: bool = True) -> float:
    _, total = knapsack_greedy(inst, rho)
    return total / float(np.sum(inst.values)) if normalize else total


def mwis_payoff(inst: MwisInstance, rho: float, normalize: bool = True) -> float:
    _, total = mwis_greedy(inst, rho)
    return total / float(np.sum(inst.weights)) if normalize else total


def kmeans_payoff(inst: KMeansInstance, rho: float, normalize: bool = True) -> float:
    _, cost = kmeans_greedy(inst, rho)
    if not normalize:
        return cost
    return 1.0 - cost / _kmeans_cost_ceiling(inst)


def _kmeans_cost_ceiling(inst: KMeansInstance) -> float:
    dmax = float(inst.dist.max())
    return float(np.sum(inst.weights)) * dmax * dmax


# ---------------------------------------------------------------------------
# exact payoff curves


def _dedup(points: list[float], lo: float, hi: float) -> list[float]:
    """Sorted interior split points, merged within CROSSING_TOL of each
    other or of the interval endpoints."""
    out = []
    for p in sorted(points):
        if p <= lo + CROSSING_TOL or p >= hi - CROSSING_TOL:
            continue
        if out and p - out[-1] <= CROSSING_TOL:
            continue
        out.append(p)
    return out


def _pair_crossings(intercepts: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """All pairwise crossing abscissas of the lines b_i + s_i * x."""
    db = intercepts[:, None] - intercepts[None, :]
    ds = slopes[None, :] - slopes[:, None]
    iu = np.triu_indices(len(slopes), k=1)
    db, ds = db[iu], ds[iu]
    ok = ds != 0.0
    return db[ok] / ds[ok]


def knapsack_payoff_curve(inst: KnapsackInstance, normalize: bool = True) -> PiecewiseConstantFn:
    """Exact curve rho -> greedy payoff; the item order is fixed between
    consecutive pairwise score crossings (kappa = 1 per pair)."""
    lnv = np.log(inst.values)
    lns = np.log(inst.sizes)
    splits = _dedup(list(_pair_crossings(lnv, -lns)), 0.0, 1.0)
    bps = np.array([0.0] + splits + [1.0])
    mids = (bps[:-1] + bps[1:]) / 2.0
    # vectorized greedy across all piece midpoints at once
    scores = lnv[:, None] - mids[None, :] * lns[:, None]
    order = np.argsort(-scores, axis=0, kind="stable")
    s_ord = inst.sizes[order]
    v_ord = inst.values[order]
    rem = np.full(len(mids), inst.capacity)
    total = np.zeros(len(mids))
    for r in range(inst.n):
        fit = s_ord[r] <= rem
        rem = np.where(fit, rem - s_ord[r], rem)
        total = np.where(fit, total + v_ord[r], total)
    if normalize:
        total = total / float(np.sum(inst.values))
    return PiecewiseConstantFn(tuple(bps), tuple(float(x) for x in total))


def _merge_equal_picks(subs: list[tuple[float, float, int]]) -> list[tuple[float, float, int]]:
    out = []
    for lo, hi, pick in subs:
        if out and out[-1][2] == pick:
            out[-1] = (out[-1][0], hi, pick)
        else:
            out.append((lo, hi, pick))
    return out


def mwis_payoff_curve(inst: MwisInstance, normalize: bool = True) -> PiecewiseConstantFn:
    """Stage-wise refinement: within an interval where all prior picks are
    fixed, the next pick changes only at score crossings of the surviving
    vertices."""
    adj = inst.adjacency()
    total_w = float(np.sum(inst.weights))
    pieces: list[tuple[float, float, float]] = []

    def rec(lo: float, hi: float, alive: set[int], acc: float):
        alive = set(alive)
        zero = sorted(i for i in alive if not (adj[i] & alive))
        for i in zero:
            alive.discard(i)
            acc += float(inst.weights[i])
        if not alive:
            pieces.append((lo, hi, acc))
            return
        cand = sorted(alive)
        degs = np.array([float(len(adj[i] & alive)) for i in cand])
        intercepts = np.log(inst.weights[cand])
        slopes = -np.log(degs)
        splits = _dedup(list(_pair_crossings(intercepts, slopes)), lo, hi)
        edges = [lo] + splits + [hi]
        subs = []
        for a, b in zip(edges, edges[1:]):
            mid = (a + b) / 2.0
            scores = intercepts + mid * slopes
            subs.append((a, b, cand[int(np.argmax(scores))]))
        for a, b, pick in _merge_equal_picks(subs):
            nxt = alive - adj[pick] - {pick}
            rec(a, b, nxt, acc + float(inst.weights[pick]))

    rec(0.0, 1.0, set(range(inst.n)), 0.0)
    bps = [0.0] + [p[1] for p in pieces]
    vals = [p[2] / total_w if normalize else p[2] for p in pieces]
    return PiecewiseConstantFn(tuple(bps), tuple(vals))


def kmeans_x_to_rho(x: float) -> float:
    """Learner coordinate x in [0,1) -> rho in [KMEANS_RHO_MIN, 1)."""
    return KMEANS_RHO_MIN + x * (1.0 - KMEANS_RHO_MIN)


def kmeans_rho_to_x(rho: float) -> float:
    return (rho - KMEANS_RHO_MIN) / (1.0 - KMEANS_RHO_MIN)


def kmeans_payoff_curve(inst: KMeansInstance, normalize: bool = True) -> PiecewiseConstantFn:
    """Stage-wise refinement over rho in [KMEANS_RHO_MIN, 1), remapped to
    [0,1).  Scores are lines in u = 1/rho, so crossings map to rho = 1/u."""
    rho_lo, rho_hi = KMEANS_RHO_MIN, 1.0
    ceiling = _kmeans_cost_ceiling(inst)
    pieces: list[tuple[float, float, float]] = []

    def rec(lo: float, hi: float, S: list[int]):
        if len(S) == inst.k:
            cost = kmeans_cost(inst, S)
            pieces.append((lo, hi, 1.0 - cost / ceiling if normalize else cost))
            return
        cand = [p for p in range(inst.n) if p not in S]
        dmin = inst.dist[np.ix_(cand, S)].min(axis=1)
        intercepts = np.log(inst.weights[cand])
        slopes = -np.log(dmin)
        crossings_u = _pair_crossings(intercepts, slopes)
        crossings = [1.0 / u for u in crossings_u if u > 0.0]
        splits = _dedup(crossings, lo, hi)
        edges = [lo] + splits + [hi]
        subs = []
        for a, b in zip(edges, edges[1:]):
            mid = (a + b) / 2.0
            scores = intercepts + (1.0 / mid) * slopes
            subs.append((a, b, cand[int(np.argmax(scores))]))
        for a, b, pick in _merge_equal_picks(subs):
            rec(a, b, S + [pick])

    rec(rho_lo, rho_hi, [_kmeans_first_center(inst)])
    bps = [0.0] + [kmeans_rho_to_x(p[1]) for p in pieces[:-1]] + [1.0]
    vals = [p[2] for p in pieces]
    return PiecewiseConstantFn(tuple(bps), tuple(vals))


def payoff_curve(instance, normalize: bool = True) -> PiecewiseConstantFn:
    """Dispatch on instance type."""
    if isinstance(instance, KnapsackInstance):
        return knapsack_payoff_curve(instance, normalize)
    if isinstance(instance, MwisInstance):
        return mwis_payoff_curve(instance, normalize)
    if isinstance(instance, KMeansInstance):
        return kmeans_payoff_curve(instance, normalize)
    raise TypeError(f"unsupported instance type {type(instance)!r}")
