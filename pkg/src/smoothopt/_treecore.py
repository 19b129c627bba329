"""Array-backed kernels for the lazy interval tree.

Nodes live in two parallel arrays:
  F[i] = (low, high, weight, message)   float64
  I[i] = (left, right, leaf_count)      int64, left == -1 marks a leaf

The tree is leaf-oriented: leaves partition [0,1), every internal node's
interval is the union of its children's. Balance is kept with Adams-style
weight-balanced rotations (delta=3, gamma=2) on subtree leaf counts.

`mult` selects the composition law acting on weights: multiplicative
(neutral 1, used for sampling weights) or additive (neutral 0, used for
exact cumulative sums; a pending additive message contributes once per
leaf, so it scales by the subtree leaf count at internal nodes).

All kernels count the nodes they touch into touch[0]; the counters back
the logarithmic-complexity assertions in the tests.

Set SMOOTHOPT_NO_JIT=1 to run the kernels as plain Python (debugging).
"""

import os

import numpy as np

LOW, HIGH, W, MSG = 0, 1, 2, 3
LEFT, RIGHT, CNT = 0, 1, 2

if os.environ.get("SMOOTHOPT_NO_JIT"):
    def jit(f):
        return f
else:
    from numba import njit

    def jit(f):
        return njit(cache=True)(f)


@jit
def _eff(F, I, mult, i):
    # effective subtree total with the node's own pending message applied
    if mult:
        return F[i, W] * F[i, MSG]
    return F[i, W] + F[i, MSG] * I[i, CNT]


@jit
def _push(F, I, mult, touch, i):
    # absorb m(i) into w(i) and compose it into the children's messages
    touch[0] += 1
    m = F[i, MSG]
    if mult:
        if m != 1.0:
            F[i, W] *= m
            l = I[i, LEFT]
            if l != -1:
                r = I[i, RIGHT]
                F[l, MSG] *= m
                F[r, MSG] *= m
            F[i, MSG] = 1.0
    else:
        if m != 0.0:
            F[i, W] += m * I[i, CNT]
            l = I[i, LEFT]
            if l != -1:
                r = I[i, RIGHT]
                F[l, MSG] += m
                F[r, MSG] += m
            F[i, MSG] = 0.0


@jit
def _pull(F, I, mult, touch, i):
    touch[0] += 1
    l = I[i, LEFT]
    r = I[i, RIGHT]
    F[i, W] = _eff(F, I, mult, l) + _eff(F, I, mult, r)
    I[i, CNT] = I[l, CNT] + I[r, CNT]
    F[i, LOW] = F[l, LOW]
    F[i, HIGH] = F[r, HIGH]


@jit
def _rotate_left(F, I, mult, touch, i):
    # pivot right child up; node index i stays the subtree root, the old
    # right child's index is reused for the new left child
    _push(F, I, mult, touch, i)
    r = I[i, RIGHT]
    _push(F, I, mult, touch, r)
    rl = I[r, LEFT]
    rr = I[r, RIGHT]
    li = I[i, LEFT]
    I[r, LEFT] = li
    I[r, RIGHT] = rl
    _pull(F, I, mult, touch, r)
    I[i, LEFT] = r
    I[i, RIGHT] = rr
    _pull(F, I, mult, touch, i)


@jit
def _rotate_right(F, I, mult, touch, i):
    _push(F, I, mult, touch, i)
    l = I[i, LEFT]
    _push(F, I, mult, touch, l)
    ll = I[l, LEFT]
    lr = I[l, RIGHT]
    ri = I[i, RIGHT]
    I[l, LEFT] = lr
    I[l, RIGHT] = ri
    _pull(F, I, mult, touch, l)
    I[i, LEFT] = ll
    I[i, RIGHT] = l
    _pull(F, I, mult, touch, i)


@jit
def _rebalance(F, I, mult, touch, i):
    a = I[I[i, LEFT], CNT]
    b = I[I[i, RIGHT], CNT]
    if a + b <= 2:
        return
    if b > 3 * a:
        r = I[i, RIGHT]
        if I[I[r, LEFT], CNT] >= 2 * I[I[r, RIGHT], CNT]:
            _rotate_right(F, I, mult, touch, r)
        _rotate_left(F, I, mult, touch, i)
    elif a > 3 * b:
        l = I[i, LEFT]
        if I[I[l, RIGHT], CNT] >= 2 * I[I[l, LEFT], CNT]:
            _rotate_left(F, I, mult, touch, l)
        _rotate_right(F, I, mult, touch, i)


@jit
def insert_kernel(F, I, mult, touch, meta, x):
    """Split the leaf containing x at x.  Returns 1, or 0 if x is already a
    breakpoint.  meta[0] is the next free node slot (advanced by 2)."""
    stack = np.empty(160, np.int64)
    depth = 0
    i = 0
    while I[i, LEFT] != -1:
        _push(F, I, mult, touch, i)
        stack[depth] = i
        depth += 1
        l = I[i, LEFT]
        if x < F[l, HIGH]:
            i = l
        else:
            i = I[i, RIGHT]
    if x == F[i, LOW]:
        return 0
    touch[0] += 1
    # absorb the leaf's pending message before splitting
    if mult:
        F[i, W] *= F[i, MSG]
        F[i, MSG] = 1.0
    else:
        F[i, W] += F[i, MSG]
        F[i, MSG] = 0.0
    lo = F[i, LOW]
    hi = F[i, HIGH]
    w = F[i, W]
    a = meta[0]
    b = a + 1
    meta[0] = a + 2
    if mult:
        wa = w * (x - lo) / (hi - lo)
        wb = w * (hi - x) / (hi - lo)
    else:
        wa = w
        wb = w
    F[a, LOW] = lo
    F[a, HIGH] = x
    F[a, W] = wa
    F[a, MSG] = 1.0 if mult else 0.0
    I[a, LEFT] = -1
    I[a, RIGHT] = -1
    I[a, CNT] = 1
    F[b, LOW] = x
    F[b, HIGH] = hi
    F[b, W] = wb
    F[b, MSG] = 1.0 if mult else 0.0
    I[b, LEFT] = -1
    I[b, RIGHT] = -1
    I[b, CNT] = 1
    I[i, LEFT] = a
    I[i, RIGHT] = b
    _pull(F, I, mult, touch, i)
    for d in range(depth - 1, -1, -1):
        j = stack[d]
        _pull(F, I, mult, touch, j)
        _rebalance(F, I, mult, touch, j)
    return 1


@jit
def range_kernel(F, I, mult, touch, l, h, delta):
    """Compose delta into every leaf inside [l, h).  Both endpoints must
    already be breakpoints (or 0/1)."""
    sn = np.empty(320, np.int64)
    sl = np.empty(320, np.float64)
    sh = np.empty(320, np.float64)
    sph = np.empty(320, np.int64)
    sp = 0
    sn[0] = 0
    sl[0] = l
    sh[0] = h
    sph[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        i = sn[sp]
        if sph[sp] == 1:
            _pull(F, I, mult, touch, i)
            continue
        a = sl[sp]
        b = sh[sp]
        touch[0] += 1
        if a <= F[i, LOW] and F[i, HIGH] <= b:
            if mult:
                F[i, MSG] *= delta
            else:
                F[i, MSG] += delta
            continue
        _push(F, I, mult, touch, i)
        # pull after both children are processed
        sn[sp] = i
        sph[sp] = 1
        sp += 1
        li = I[i, LEFT]
        ri = I[i, RIGHT]
        mid = F[li, HIGH]
        if b > mid:
            sn[sp] = ri
            sl[sp] = a if a > mid else mid
            sh[sp] = b
            sph[sp] = 0
            sp += 1
        if a < mid:
            sn[sp] = li
            sl[sp] = a
            sh[sp] = b if b < mid else mid
            sph[sp] = 0
            sp += 1


@jit
def draw_kernel(F, I, touch, u):
    """Inverse-CDF descent for the multiplicative law; u uniform in [0,1).
    Returns a point in the leaf chosen with probability proportional to its
    mass, uniform within the leaf."""
    x = u * F[0, W] * F[0, MSG]
    i = 0
    while I[i, LEFT] != -1:
        _push(F, I, True, touch, i)
        l = I[i, LEFT]
        wl = F[l, W] * F[l, MSG]
        if x < wl:
            i = l
        else:
            x -= wl
            i = I[i, RIGHT]
    touch[0] += 1
    w = F[i, W] * F[i, MSG]
    lo = F[i, LOW]
    hi = F[i, HIGH]
    if w <= 0.0:
        return lo
    frac = x / w
    if frac < 0.0:
        frac = 0.0
    p = lo + frac * (hi - lo)
    if p >= hi:
        p = np.nextafter(hi, lo)
    return p


@jit
def leaf_query_kernel(F, I, mult, x):
    """(low, high, omega) of the leaf containing x; does not mutate."""
    acc = 1.0 if mult else 0.0
    i = 0
    while I[i, LEFT] != -1:
        if mult:
            acc *= F[i, MSG]
        else:
            acc += F[i, MSG]
        l = I[i, LEFT]
        if x < F[l, HIGH]:
            i = l
        else:
            i = I[i, RIGHT]
    if mult:
        om = F[i, W] * F[i, MSG] * acc
    else:
        om = F[i, W] + F[i, MSG] + acc
    return F[i, LOW], F[i, HIGH], om


@jit
def collect_kernel(F, I, mult, lows, highs, oms):
    """Left-to-right leaf listing without mutation.  Returns leaf count."""
    sn = np.empty(160, np.int64)
    sm = np.empty(160, np.float64)
    sn[0] = 0
    sm[0] = 1.0 if mult else 0.0
    sp = 1
    n = 0
    while sp > 0:
        sp -= 1
        i = sn[sp]
        acc = sm[sp]
        if mult:
            acc = acc * F[i, MSG]
        else:
            acc = acc + F[i, MSG]
        if I[i, LEFT] == -1:
            lows[n] = F[i, LOW]
            highs[n] = F[i, HIGH]
            if mult:
                oms[n] = F[i, W] * acc
            else:
                oms[n] = F[i, W] + acc
            n += 1
            continue
        sn[sp] = I[i, RIGHT]
        sm[sp] = acc
        sp += 1
        sn[sp] = I[i, LEFT]
        sm[sp] = acc
        sp += 1
    return n


@jit
def flush_kernel(F, I, mult, touch):
    """Push every pending message down to the leaves."""
    sn = np.empty(160, np.int64)
    sn[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        i = sn[sp]
        _push(F, I, mult, touch, i)
        if I[i, LEFT] != -1:
            sn[sp] = I[i, RIGHT]
            sp += 1
            sn[sp] = I[i, LEFT]
            sp += 1
