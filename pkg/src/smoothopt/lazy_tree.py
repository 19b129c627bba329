"""Lazy-message interval tree over dynamic breakpoints in [0, 1).

A fresh tree is a single leaf [0,1).  `insert` splits the leaf containing a
point (weights split proportionally to length under the multiplicative law,
duplicated under the additive law), `range_update` composes an update into
every leaf inside an interval in amortized O(log n) touched nodes, and
`draw` samples a point with density proportional to leaf mass.

The effective mass of a node is its stored weight composed with its own and
all ancestors' pending messages; every public operation preserves, at every
internal node, effective mass == sum of the leaf descendants' effective
masses.  `check_mass_invariant` audits exactly that.
"""

from __future__ import annotations

import numpy as np

from . import _treecore as core
from ._treecore import CNT, HIGH, LEFT, LOW, MSG, RIGHT, W

MULTIPLICATIVE = "multiplicative"
ADDITIVE = "additive"


class LazyIntervalTree:
    def __init__(self, law: str = MULTIPLICATIVE):
        if law not in (MULTIPLICATIVE, ADDITIVE):
            raise ValueError(f"unknown composition law {law!r}")
        self.law = law
        self.mult = law == MULTIPLICATIVE
        cap = 1024
        self._F = np.zeros((cap, 4), dtype=np.float64)
        self._I = np.full((cap, 3), -1, dtype=np.int64)
        self._meta = np.ones(1, dtype=np.int64)  # next free node slot
        self._touch = np.zeros(1, dtype=np.int64)
        neutral = 1.0 if self.mult else 0.0
        self._F[0] = (0.0, 1.0, 1.0 if self.mult else 0.0, neutral)
        self._I[0] = (-1, -1, 1)
        self.leaf_count = 1

    # -- plumbing ---------------------------------------------------------

    @property
    def neutral(self) -> float:
        return 1.0 if self.mult else 0.0

    def _grow(self):
        if self._meta[0] + 2 > self._F.shape[0]:
            cap = self._F.shape[0] * 2
            F = np.zeros((cap, 4), dtype=np.float64)
            I = np.full((cap, 3), -1, dtype=np.int64)
            F[: self._F.shape[0]] = self._F
            I[: self._I.shape[0]] = self._I
            self._F, self._I = F, I

    @property
    def node_touches(self) -> int:
        """Instrumented count of nodes touched so far (for complexity tests)."""
        return int(self._touch[0])

    def reset_touches(self):
        self._touch[0] = 0

    # -- operations -------------------------------------------------------

    def insert(self, point: float) -> bool:
        """Make `point` a breakpoint.  No-op if it already is one."""
        if not 0.0 < point < 1.0:
            raise ValueError(f"insert point {point!r} outside (0, 1)")
        self._grow()
        added = core.insert_kernel(
            self._F, self._I, self.mult, self._touch, self._meta, float(point)
        )
        self.leaf_count += added
        return bool(added)

    def range_update(self, interval: tuple[float, float], delta: float):
        """Compose `delta` into every leaf inside [l, h)."""
        l, h = float(interval[0]), float(interval[1])
        if not (0.0 <= l < h <= 1.0):
            raise ValueError(f"bad interval [{l}, {h})")
        if self.mult:
            if not delta > 0.0:
                raise ValueError("multiplicative update must be positive")
        elif not np.isfinite(delta):
            raise ValueError("additive update must be finite")
        if l > 0.0:
            self.insert(l)
        if h < 1.0:
            self.insert(h)
        core.range_kernel(self._F, self._I, self.mult, self._touch, l, h, float(delta))

    def total_mass(self) -> float:
        F, I = self._F, self._I
        if self.mult:
            return float(F[0, W] * F[0, MSG])
        return float(F[0, W] + F[0, MSG] * I[0, CNT])

    def draw(self, rng) -> float:
        """Sample a point with density proportional to leaf mass."""
        if not self.mult:
            raise ValueError("draw requires the multiplicative law")
        if not self.total_mass() > 0.0:
            raise ValueError("cannot draw from zero total mass")
        return float(core.draw_kernel(self._F, self._I, self._touch, rng.random()))

    def leaf_at(self, x: float) -> tuple[tuple[float, float], float]:
        """((low, high), effective mass) of the leaf containing x."""
        if not 0.0 <= x < 1.0:
            raise ValueError(f"x={x!r} outside [0, 1)")
        lo, hi, om = core.leaf_query_kernel(self._F, self._I, self.mult, float(x))
        return (float(lo), float(hi)), float(om)

    def leaves(self, flush: bool = False) -> list[tuple[tuple[float, float], float]]:
        """All leaves left to right with up-to-date effective masses."""
        if flush:
            core.flush_kernel(self._F, self._I, self.mult, self._touch)
        n = self.leaf_count
        lows = np.empty(n)
        highs = np.empty(n)
        oms = np.empty(n)
        core.collect_kernel(self._F, self._I, self.mult, lows, highs, oms)
        return [((float(lows[i]), float(highs[i])), float(oms[i])) for i in range(n)]

    def update_message(self, node: int = 0):
        """Make `node` and its children up-to-date, composing pending
        messages into the grandchildren."""
        core._push(self._F, self._I, self.mult, self._touch, node)
        l = self._I[node, LEFT]
        if l != -1:
            core._push(self._F, self._I, self.mult, self._touch, l)
            core._push(self._F, self._I, self.mult, self._touch, self._I[node, RIGHT])

    # -- diagnostics ------------------------------------------------------

    def height(self) -> int:
        I = self._I
        best = 0
        stack = [(0, 0)]
        while stack:
            i, d = stack.pop()
            if I[i, LEFT] == -1:
                best = max(best, d)
            else:
                stack.append((I[i, LEFT], d + 1))
                stack.append((I[i, RIGHT], d + 1))
        return best

    def check_mass_invariant(self, rel_tol: float = 1e-9):
        """Full flush, then assert every internal node's mass equals the sum
        over its leaf descendants (relative tolerance)."""
        core.flush_kernel(self._F, self._I, self.mult, self._touch)
        F, I = self._F, self._I
        order = []
        stack = [0]
        while stack:
            i = stack.pop()
            if I[i, LEFT] != -1:
                order.append(i)
                stack.append(I[i, LEFT])
                stack.append(I[i, RIGHT])
        sums = {}

        def leafsum(i):
            if I[i, LEFT] == -1:
                return F[i, W]
            return sums[i]

        for i in reversed(order):
            sums[i] = leafsum(I[i, LEFT]) + leafsum(I[i, RIGHT])
        for i in order:
            got, want = F[i, W], sums[i]
            if abs(got - want) > rel_tol * max(abs(want), 1e-12):
                raise AssertionError(
                    f"mass invariant broken at node {i}: {got} vs leaf sum {want}"
                )

    def dump(self) -> str:
        """Indented (interval, w, m) rendering, for golden-file tests."""
        F, I = self._F, self._I
        out = []

        def rec(i, depth):
            out.append(
                "  " * depth
                + f"[{F[i, LOW]:.12g}, {F[i, HIGH]:.12g}) w={F[i, W]:.12g} m={F[i, MSG]:.12g}"
            )
            if I[i, LEFT] != -1:
                rec(I[i, LEFT], depth + 1)
                rec(I[i, RIGHT], depth + 1)

        rec(0, 0)
        return "\n".join(out) + "\n"
