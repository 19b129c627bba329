"""Piecewise constant functions on [0, 1).

Pieces are left-closed right-open: the value on [a_{i-1}, a_i) is values[i-1].
Evaluating at an interior breakpoint returns the value of the piece to its
right. Breakpoints are compared with exact floating-point equality; duplicate
breakpoints arising from `sum` are collapsed, but adjacent pieces with equal
values are intentionally kept separate.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass


@dataclass(frozen=True)
class PiecewiseConstantFn:
    """A function on [0,1) with finitely many constant pieces.

    breakpoints: strictly increasing, starting at exactly 0.0 and ending at
    exactly 1.0.  values: one real per piece, len(values) == len(breakpoints)-1.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if len(bp) < 2:
            raise ValueError("need at least two breakpoints")
        if bp[0] != 0.0 or bp[-1] != 1.0:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(vals) != len(bp) - 1:
            raise ValueError("need exactly one value per piece")

    @classmethod
    def constant(cls, value: float) -> "PiecewiseConstantFn":
        return cls((0.0, 1.0), (value,))

    @property
    def num_pieces(self) -> int:
        return len(self.values)

    def evaluate(self, x: float) -> float:
        """Value at x.  Raises ValueError outside [0, 1)."""
        if not 0.0 <= x < 1.0:
            raise ValueError(f"x={x!r} outside [0, 1)")
        # rightmost breakpoint <= x selects the piece; pieces are [a, b)
        i = bisect_right(self.breakpoints, x) - 1
        return self.values[i]

    def __call__(self, x: float) -> float:
        return self.evaluate(x)

    def pieces(self):
        """Iterate (low, high, value) triples left to right."""
        bp = self.breakpoints
        for i, v in enumerate(self.values):
            yield bp[i], bp[i + 1], v

    def sum(self, other: "PiecewiseConstantFn") -> "PiecewiseConstantFn":
        """Pointwise sum; breakpoints are the merged refinement."""
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        vals = []
        ia = ib = 0
        for lo in merged[:-1]:
            while self.breakpoints[ia + 1] <= lo:
                ia += 1
            while other.breakpoints[ib + 1] <= lo:
                ib += 1
            vals.append(self.values[ia] + other.values[ib])
        return PiecewiseConstantFn(tuple(merged), tuple(vals))

    def __add__(self, other: "PiecewiseConstantFn") -> "PiecewiseConstantFn":
        return self.sum(other)

    def argmax_interval(self) -> tuple[tuple[float, float], float]:
        """Leftmost maximal-value piece as ((low, high), value)."""
        best = max(range(len(self.values)), key=lambda i: (self.values[i], -i))
        return (self.breakpoints[best], self.breakpoints[best + 1]), self.values[best]

    def to_text(self) -> str:
        """Two-line form: breakpoints then values, space separated."""
        bp = " ".join(repr(b) for b in self.breakpoints)
        vals = " ".join(repr(v) for v in self.values)
        return f"{bp}\n{vals}\n"

    @classmethod
    def from_text(cls, text: str) -> "PiecewiseConstantFn":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("expected two non-empty lines")
        bp = tuple(float(tok) for tok in lines[0].split())
        vals = tuple(float(tok) for tok in lines[1].split())
        return cls(bp, vals)
