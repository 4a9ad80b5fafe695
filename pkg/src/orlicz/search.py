"""One-dimensional search primitives: golden-section and monotone bisection.

All solvers in this package reduce to searches over a single scalar (a
premium level k, a Lagrange multiplier, a cash shift), so these helpers
are deliberately small and allocation-free.  Golden-section assumes a
unimodal objective on the bracket; bisection assumes monotonicity.  Both
report the best point actually evaluated, never an extrapolation.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Maximize a unimodal f on [lo, hi]; returns (argmax, max) among evaluated points."""
    best_x, best_v = lo, f(lo)
    v_hi = f(hi)
    if v_hi > best_v:
        best_x, best_v = hi, v_hi
    a, b = lo, hi
    h = b - a
    if h <= tol * max(1.0, abs(a), abs(b)):
        return best_x, best_v
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if fc > best_v:
            best_x, best_v = c, fc
        if fd > best_v:
            best_x, best_v = d, fd
        if h <= tol * max(1.0, abs(a), abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = f(d)
    return best_x, best_v


def golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min) among evaluated points."""
    x, v = golden_max(lambda t: -f(t), lo, hi, tol=tol, max_iter=max_iter)
    return x, -v


def bisect_smallest_feasible(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    threshold: float = 1.0,
    rel_tol: float = 1e-10,
    max_iter: int = 400,
) -> tuple[float, float, float, int]:
    """Smallest k with g(k) <= threshold for nonincreasing g.

    Requires g(lo) > threshold >= g(hi) on entry.  Returns
    (value, bracket_lo, bracket_hi, iterations) where value == bracket_hi,
    g(value) <= threshold is guaranteed, and g(bracket_lo) > threshold.
    """
    it = 0
    while (hi - lo) > rel_tol * max(1.0, abs(hi)) and it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # fp exhaustion
            break
        if g(mid) <= threshold:
            hi = mid
        else:
            lo = mid
        it += 1
    return hi, lo, hi, it


def bisect_root_decreasing(
    h: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-14,
    max_iter: int = 400,
) -> float:
    """Root of a continuous nonincreasing h with h(lo) >= 0 >= h(hi)."""
    for _ in range(max_iter):
        if (hi - lo) <= rel_tol * max(1.0, abs(hi), abs(lo)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if h(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def argmax_on_grid(f: Callable[[float], float], xs: Sequence[float]) -> tuple[int, float, float]:
    """Index, point, and value of the maximum of f over xs (first index wins ties)."""
    best_i = 0
    best_x = xs[0]
    best_v = f(xs[0])
    for i in range(1, len(xs)):
        v = f(xs[i])
        if v > best_v:
            best_i, best_x, best_v = i, xs[i], v
    return best_i, best_x, best_v
