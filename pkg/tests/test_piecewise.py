import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothopt.piecewise import PiecewiseConstantFn


def make_fn(breaks, values):
    return PiecewiseConstantFn(tuple(breaks), tuple(values))


@st.composite
def piecewise_fns(draw):
    interior = draw(
        st.lists(
            st.floats(min_value=0.001, max_value=0.999, allow_nan=False),
            max_size=6,
            unique=True,
        )
    )
    bps = [0.0] + sorted(interior) + [1.0]
    vals = [
        draw(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
        for _ in range(len(bps) - 1)
    ]
    return make_fn(bps, vals)


class TestConstruction:
    def test_valid(self):
        f = make_fn((0.0, 0.5, 1.0), (1.0, 2.0))
        assert f.num_pieces == 2

    def test_rejects_bad_ends(self):
        with pytest.raises(ValueError):
            make_fn((0.1, 1.0), (1.0,))
        with pytest.raises(ValueError):
            make_fn((0.0, 0.9), (1.0,))

    def test_rejects_nonincreasing(self):
        with pytest.raises(ValueError):
            make_fn((0.0, 0.5, 0.5, 1.0), (1.0, 2.0, 3.0))

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            make_fn((0.0, 1.0), (1.0, 2.0))


class TestEvaluate:
    def test_interior_piece(self):
        f = make_fn((0.0, 0.4, 0.6, 1.0), (0.0, 1.0, 0.0))
        assert f.evaluate(0.5) == 1.0

    def test_constant_zero(self):
        f = PiecewiseConstantFn.constant(0.0)
        for x in (0.0, 0.3, 0.999):
            assert f.evaluate(x) == 0.0

    def test_left_closed_boundary(self):
        f = make_fn((0.0, 0.25, 1.0), (0.3, 0.7))
        assert f.evaluate(0.25) == 0.7

    def test_domain_error(self):
        f = PiecewiseConstantFn.constant(1.0)
        with pytest.raises(ValueError):
            f.evaluate(1.0)
        with pytest.raises(ValueError):
            f.evaluate(-0.1)

    def test_callable(self):
        f = make_fn((0.0, 0.5, 1.0), (2.0, 3.0))
        assert f(0.7) == 3.0


class TestSum:
    def test_zero_plus_zero(self):
        z = PiecewiseConstantFn.constant(0.0)
        s = z.sum(z)
        assert s.values == (0.0,)

    def test_merged_refinement(self):
        f = make_fn((0.0, 0.5, 1.0), (1.0, 0.0))
        g = make_fn((0.0, 0.25, 1.0), (0.0, 1.0))
        s = f.sum(g)
        assert s.breakpoints == (0.0, 0.25, 0.5, 1.0)
        assert s.values == (1.0, 2.0, 1.0)

    def test_additive_identity(self):
        f = make_fn((0.0, 0.3, 0.7, 1.0), (0.1, 0.9, 0.4))
        s = f.sum(PiecewiseConstantFn.constant(0.0))
        assert s.breakpoints == f.breakpoints
        assert s.values == f.values

    def test_operator(self):
        f = make_fn((0.0, 0.5, 1.0), (1.0, 2.0))
        assert (f + f).values == (2.0, 4.0)

    @given(piecewise_fns(), piecewise_fns())
    @settings(max_examples=100, deadline=None)
    def test_pointwise(self, f, g):
        s = f.sum(g)
        rng = random.Random(0)
        for _ in range(50):
            x = rng.random()
            want = f.evaluate(x) + g.evaluate(x)
            got = s.evaluate(x)
            assert got == want or math.isclose(got, want, rel_tol=1e-12)

    @given(piecewise_fns(), piecewise_fns())
    @settings(max_examples=50, deadline=None)
    def test_commutative_breakpoints(self, f, g):
        assert f.sum(g).breakpoints == g.sum(f).breakpoints

    @given(piecewise_fns(), piecewise_fns(), piecewise_fns())
    @settings(max_examples=50, deadline=None)
    def test_associative_breakpoints(self, f, g, h):
        lhs = f.sum(g).sum(h)
        rhs = f.sum(g.sum(h))
        assert lhs.breakpoints == rhs.breakpoints


class TestArgmax:
    def test_middle_piece(self):
        f = make_fn((0.0, 0.4, 0.6, 1.0), (0.0, 1.0, 0.0))
        assert f.argmax_interval() == ((0.4, 0.6), 1.0)

    def test_constant(self):
        f = PiecewiseConstantFn.constant(0.5)
        assert f.argmax_interval() == ((0.0, 1.0), 0.5)

    def test_leftmost_tie_break(self):
        f = make_fn((0.0, 0.3, 0.5, 1.0), (2.0, 2.0, 1.0))
        assert f.argmax_interval() == ((0.0, 0.3), 2.0)

    @given(piecewise_fns())
    @settings(max_examples=50, deadline=None)
    def test_matches_dense_scan(self, f):
        _, v = f.argmax_interval()
        grid_max = max(f.evaluate(i / 10_000) for i in range(10_000))
        assert v == grid_max


class TestSerialization:
    def test_round_trip(self):
        f = make_fn((0.0, 0.1234567890123, 1.0), (0.25, 0.75))
        assert PiecewiseConstantFn.from_text(f.to_text()) == f

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            PiecewiseConstantFn.from_text("just one line\n")
