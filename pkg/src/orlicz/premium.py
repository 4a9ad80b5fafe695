"""Premium computation: smallest k > 0 with E[Phi(X/k)] <= 1.

The map k -> E[Phi(X/k)] is nonincreasing and right-continuous, so the
premium is found by monotone bracketing plus bisection.  Every built-in
family also has a dedicated solver exploiting its structure (norms,
quantiles, expectile-type root equations); the generic and dedicated
routes agree to solver tolerance and cross-check each other in the tests.

Degenerate rule: when Phi(0) = -inf and X carries mass at zero, the
premium is 0 by definition (each division by smaller k only spreads the
-inf further, and the monotone-limit value is zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .base import DomainError, INF, InvalidPhiError, NEG_INF, check_tol
from .functions import (
    Expectile,
    GeometricExpectile,
    GeometricMean,
    LpQuantile,
    LpqQuantile,
    OrliczFunction,
    PiecewiseLinear,
    Power,
    QuantileStep,
    validate,
)
from .prob import (
    DiscreteDistribution,
    RandomVariable,
    as_random_variable,
    distribution_of,
    quantile,
)
from .search import bisect_root_decreasing, bisect_smallest_feasible

LOWER_FLOOR = 1e-300


def _ensure_admissible(phi: OrliczFunction) -> None:
    """Validate user-defined functions once; built-ins pass analytically."""
    if not isinstance(phi, PiecewiseLinear):
        return
    cached = getattr(phi, "_admissible_checked", None)
    if cached is None:
        report = validate(phi)
        cached = report.ok
        phi._admissible_checked = cached
        if not cached:
            witness = report.violations[0]
            raise InvalidPhiError(
                f"inadmissible function: {witness.condition} fails at x={witness.x!r} "
                f"(value {witness.value!r})"
            )
    elif not cached:
        raise InvalidPhiError("inadmissible function (cached validation failure)")


@dataclass(frozen=True)
class PremiumResult:
    """Premium value with solver diagnostics.

    bracket is (lo, hi) with lo <= value <= hi; for bisection routes
    E[Phi(X/lo)] > 1 and value = hi.  g_at_value is E[Phi(X/value)]
    (None for the definitional zero-premium cases where it is vacuous).
    """

    value: float
    bracket: tuple[float, float]
    iterations: int
    route: str
    g_at_value: Optional[float]


def phi_moment(phi: OrliczFunction, xs: np.ndarray, probs: np.ndarray, k: float) -> float:
    """E[Phi(X/k)] in the extended reals; +inf dominates -inf."""
    vals = phi.eval_array(xs / k)
    if np.isposinf(vals).any():
        return INF
    if np.isneginf(vals).any():
        return NEG_INF
    return float(probs @ vals)


def orlicz_premium(
    phi: OrliczFunction,
    X: RandomVariable,
    tol: float = 1e-10,
    route: str = "auto",
) -> PremiumResult:
    """Compute the premium; route='auto' uses family shortcuts, 'generic' bisects.

    The generic route brackets [ess_sup/u, ess_sup] (with a geometric
    downward expansion when u = inf) and bisects to relative width tol.
    """
    check_tol(tol)
    if route not in ("auto", "generic"):
        raise ValueError(f"route must be 'auto' or 'generic', got {route!r}")
    _ensure_admissible(phi)
    vals = X.values_array()
    probs = X.space.probs_array()
    ess = float(vals.max())
    if ess == 0.0:
        g0 = phi.at_zero
        return PremiumResult(0.0, (0.0, 0.0), 0, "closed_form:degenerate", g0)
    if phi.at_zero == NEG_INF and float(vals.min()) == 0.0:
        return PremiumResult(0.0, (0.0, 0.0), 0, "closed_form:degenerate", None)

    if route == "auto":
        fast = _fast_path(phi, X, vals, probs, tol)
        if fast is not None:
            return fast
    return _generic(phi, vals, probs, ess, tol)


def _generic(
    phi: OrliczFunction, vals: np.ndarray, probs: np.ndarray, ess: float, tol: float
) -> PremiumResult:
    def g(k: float) -> float:
        return phi_moment(phi, vals, probs, k)

    hi = ess  # Phi(x) <= 1 for x <= 1 makes ess_sup always feasible
    if phi.upper < INF:
        lo = ess / phi.upper
        if g(lo) <= 1.0:
            return PremiumResult(lo, (lo, lo), 0, "generic", g(lo))
    else:
        lo = tol * ess
        expansions = 0
        while g(lo) <= 1.0:
            if lo <= LOWER_FLOOR:
                return PremiumResult(lo, (0.0, lo), expansions, "generic", g(lo))
            lo *= 1e-3
            expansions += 1
    value, blo, bhi, iters = bisect_smallest_feasible(g, lo, hi, 1.0, tol)
    return PremiumResult(value, (blo, bhi), iters, "generic", g(value))


def _finish(phi: OrliczFunction, X_vals: np.ndarray, probs: np.ndarray, value: float, route: str) -> PremiumResult:
    """Package a dedicated-route value, nudging up by ulps if fp left g > 1."""
    g = phi_moment(phi, X_vals, probs, value) if value > 0 else None
    if value > 0 and g is not None:
        for _ in range(8):
            if not (g > 1.0) or g == INF:
                break
            value = math.nextafter(value, INF)
            g = phi_moment(phi, X_vals, probs, value)
    return PremiumResult(value, (value, value), 0, route, g)


def _fast_path(
    phi: OrliczFunction,
    X: RandomVariable,
    vals: np.ndarray,
    probs: np.ndarray,
    tol: float,
) -> Optional[PremiumResult]:
    if isinstance(phi, GeometricMean):
        value = float(np.exp(probs @ np.log(vals)))  # zeros already handled
        return _finish(phi, vals, probs, value, "closed_form:gm")
    if isinstance(phi, Power):
        value = float((probs @ vals ** phi.p) ** (1.0 / phi.p))
        return _finish(phi, vals, probs, value, "closed_form:power")
    if isinstance(phi, QuantileStep):
        value = left_quantile_premium(X, phi.alpha)
        return _finish(phi, vals, probs, value, "closed_form:quantile")
    if isinstance(phi, Expectile):
        value = _expectile_signed(list(X.values), list(X.space.probs), phi.alpha)
        return _finish(phi, vals, probs, value, "closed_form:expectile")
    if isinstance(phi, LpQuantile):
        value = lp_quantile(X, phi.alpha, phi.p)
        return _finish(phi, vals, probs, value, "closed_form:lp_quantile")
    if isinstance(phi, LpqQuantile):
        value = lpq_quantile(X, phi.a, phi.b, phi.p, phi.q, tol=min(tol, 1e-12))
        return _finish(phi, vals, probs, value, "closed_form:lpq_quantile")
    if isinstance(phi, GeometricExpectile):
        value = geometric_expectile(X, phi.a, phi.b)
        return _finish(phi, vals, probs, value, "closed_form:geometric_expectile")
    return None


# ---------------------------------------------------------------------------
# dedicated solvers
# ---------------------------------------------------------------------------


def _aggregate(values: Sequence[float], probs: Sequence[float]) -> tuple[list[float], list[float]]:
    acc: dict[float, float] = {}
    for v, p in zip(values, probs):
        acc[v] = acc.get(v, 0.0) + p
    vs = sorted(acc)
    return vs, [acc[v] for v in vs]


def _expectile_signed(values: Sequence[float], probs: Sequence[float], alpha: float) -> float:
    """Exact expectile of a finite (possibly signed) distribution.

    Solves alpha*E[(X-k)_+] = (1-alpha)*E[(k-X)_+]; the left side minus
    the right is piecewise linear and strictly decreasing in k, so the
    root is located segment by segment and solved in closed form.
    """
    vs, ps = _aggregate(values, probs)
    if len(vs) == 1:
        return vs[0]
    above_m = math.fsum(p * v for p, v in zip(ps, vs))
    above_p = 1.0
    below_m = 0.0
    below_p = 0.0
    for j in range(len(vs) - 1):
        below_m += ps[j] * vs[j]
        below_p += ps[j]
        above_m -= ps[j] * vs[j]
        above_p -= ps[j]
        nxt = vs[j + 1]
        h_next = alpha * (above_m - nxt * above_p) - (1.0 - alpha) * (nxt * below_p - below_m)
        if h_next <= 0.0:
            k = (alpha * above_m + (1.0 - alpha) * below_m) / (
                alpha * above_p + (1.0 - alpha) * below_p
            )
            return min(max(k, vs[j]), nxt)
    return vs[-1]


def expectile(X: RandomVariable, alpha: float) -> float:
    """The alpha-expectile of X, 0 < alpha < 1."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"expectile level must be in (0, 1), got {alpha!r}")
    return _expectile_signed(list(X.values), list(X.space.probs), alpha)


def lp_quantile(X: RandomVariable, alpha: float, p: float) -> float:
    """Root of alpha*E[(X-k)_+^p] = (1-alpha)*E[(k-X)_+^p].

    p = 1 is the expectile (exact segment solve); p = 2 solves a quadratic
    per segment; other p bisect the strictly decreasing difference.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"level must be in (0, 1), got {alpha!r}")
    if not (p > 0):
        raise DomainError(f"exponent must be positive, got {p!r}")
    values, probs = list(X.values), list(X.space.probs)
    if p == 1.0:
        return _expectile_signed(values, probs, alpha)
    if p == 2.0:
        return _lp2_exact(values, probs, alpha)
    vs, ps = _aggregate(values, probs)
    if len(vs) == 1:
        return vs[0]
    pa = np.asarray(ps)
    va = np.asarray(vs)

    def h(k: float) -> float:
        gains = np.maximum(va - k, 0.0) ** p
        losses = np.maximum(k - va, 0.0) ** p
        return alpha * float(pa @ gains) - (1.0 - alpha) * float(pa @ losses)

    return bisect_root_decreasing(h, vs[0], vs[-1], rel_tol=1e-14)


def _lp2_exact(values: Sequence[float], probs: Sequence[float], alpha: float) -> float:
    vs, ps = _aggregate(values, probs)
    if len(vs) == 1:
        return vs[0]
    a1 = math.fsum(p * v for p, v in zip(ps, vs))
    a2 = math.fsum(p * v * v for p, v in zip(ps, vs))
    ap = 1.0
    b1 = b2 = bp = 0.0
    beta = 1.0 - alpha
    for j in range(len(vs) - 1):
        b1 += ps[j] * vs[j]
        b2 += ps[j] * vs[j] ** 2
        bp += ps[j]
        a1 -= ps[j] * vs[j]
        a2 -= ps[j] * vs[j] ** 2
        ap -= ps[j]
        nxt = vs[j + 1]
        h_next = alpha * (a2 - 2.0 * nxt * a1 + nxt * nxt * ap) - beta * (
            nxt * nxt * bp - 2.0 * nxt * b1 + b2
        )
        if h_next <= 0.0:
            c2 = alpha * ap - beta * bp
            c1 = -2.0 * alpha * a1 + 2.0 * beta * b1
            c0 = alpha * a2 - beta * b2
            return _quadratic_root_in(c2, c1, c0, vs[j], nxt)
    return vs[-1]


def _quadratic_root_in(c2: float, c1: float, c0: float, lo: float, hi: float) -> float:
    span = max(abs(lo), abs(hi), 1.0)
    if abs(c2) < 1e-14:
        k = -c0 / c1
        return min(max(k, lo), hi)
    disc = c1 * c1 - 4.0 * c2 * c0
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    # numerically stable pair of roots
    q = -0.5 * (c1 + math.copysign(sq, c1))
    roots = []
    if q != 0.0:
        roots.append(c0 / q)
    roots.append(q / c2)
    inside = [r for r in roots if lo - 1e-9 * span <= r <= hi + 1e-9 * span]
    if not inside:  # fall back: nearest root to the segment
        inside = sorted(roots, key=lambda r: max(lo - r, r - hi, 0.0))[:1]
    return min(max(inside[0], lo), hi)


def lpq_quantile(
    X: RandomVariable, a: float, b: float, p: float, q: float, tol: float = 1e-12
) -> float:
    """Premium for Phi(x) = 1 + a(x-1)_+^p - b(x-1)_-^q.

    Smallest k with a*E[((X-k)_+/k)^p] <= b*E[((k-X)_+/k)^q]; the
    difference is strictly decreasing in k and crosses zero on (0, max X].
    """
    if not (a > 0 and b >= 0 and p >= 1 and q >= 1):
        raise DomainError(f"invalid parameters a={a!r} b={b!r} p={p!r} q={q!r}")
    vals = X.values_array()
    probs = X.space.probs_array()
    ess = float(vals.max())
    if ess == 0.0:
        return 0.0

    def hhat(k: float) -> float:
        gains = (np.maximum(vals - k, 0.0) / k) ** p
        losses = (np.maximum(k - vals, 0.0) / k) ** q
        return a * float(probs @ gains) - b * float(probs @ losses)

    lo = ess * 1e-3
    while hhat(lo) <= 0.0 and lo > LOWER_FLOOR:
        lo *= 1e-2
    if hhat(lo) <= 0.0:
        return lo
    value, _, _, _ = bisect_smallest_feasible(hhat, lo, ess, 0.0, rel_tol=tol)
    return value


def left_quantile_premium(X: RandomVariable, alpha: float) -> float:
    """Left alpha-quantile of the law of X (essential sup at alpha = 1)."""
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"level must be in (0, 1], got {alpha!r}")
    return quantile(distribution_of(X), alpha)


def geometric_expectile(X: RandomVariable, a: float, b: float) -> float:
    """exp of the a/(a+b)-expectile of log X; needs X > 0 everywhere.

    b = 0 sends the level to 1 and the value to the essential supremum.
    """
    if not (a > 0 and b >= 0):
        raise DomainError(f"invalid parameters a={a!r} b={b!r}")
    if b == 0.0:
        return max(X.values)  # zero atoms are harmless here: Phi(0) = 1
    if min(X.values) <= 0.0:
        raise DomainError("geometric expectile needs strictly positive outcomes")
    logs = [math.log(v) for v in X.values]
    return math.exp(_expectile_signed(logs, list(X.space.probs), a / (a + b)))


def premium_of_distribution(
    phi: OrliczFunction, dist: DiscreteDistribution, tol: float = 1e-10, route: str = "auto"
) -> PremiumResult:
    """Premium of a distribution via its canonical carrier (law invariance)."""
    return orlicz_premium(phi, as_random_variable(dist), tol=tol, route=route)


# ---------------------------------------------------------------------------
# cash behaviour probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CashAdditivityReport:
    """Observed cash behaviour of the premium under positive shifts.

    deltas[i] = H(X + shifts[i]) - (H(X) + shifts[i]).  classification is
    'additive' / 'subadditive' / 'superadditive' / 'neither' at tolerance
    tol; expected is the theory prediction for the family (None when no
    claim applies) and consistent compares the two.
    """

    classification: str
    shifts: tuple[float, ...]
    deltas: tuple[float, ...]
    base_premium: float
    expected: Optional[str]
    consistent: Optional[bool]


def expected_cash_behavior(phi: OrliczFunction) -> Optional[str]:
    """Theory prediction for how the premium responds to cash shifts.

    Shifted asymmetric power families with equal exponents are additive;
    unequal exponents tilt sub (p > q) or super (p < q).  Norm families
    follow the Minkowski direction of their exponent.  Quantiles are
    additive; the geometric mean is superadditive.
    """
    if isinstance(phi, (Expectile, LpQuantile, QuantileStep)):
        return "additive"
    if isinstance(phi, LpqQuantile):
        if phi.p == phi.q:
            return "additive"
        return "subadditive" if phi.p > phi.q else "superadditive"
    if isinstance(phi, Power):
        if phi.p == 1.0:
            return "additive"
        return "subadditive" if phi.p > 1.0 else "superadditive"
    if isinstance(phi, GeometricMean):
        return "superadditive"
    return None


def cash_additivity_probe(
    phi: OrliczFunction,
    X: RandomVariable,
    shifts: Sequence[float] = (0.25, 0.5, 1.0, 2.0),
    tol: float = 1e-8,
) -> CashAdditivityReport:
    """Measure H(X+m) - (H(X)+m) over the given shifts and classify."""
    check_tol(tol)
    if any(not (m > 0) for m in shifts):
        raise DomainError("shifts must be strictly positive")
    base = orlicz_premium(phi, X).value
    deltas = []
    for m in shifts:
        shifted = RandomVariable(X.space, tuple(v + m for v in X.values))
        deltas.append(orlicz_premium(phi, shifted).value - (base + m))
    if all(abs(d) <= tol for d in deltas):
        cls = "additive"
    elif all(d <= tol for d in deltas):
        cls = "subadditive"
    elif all(d >= -tol for d in deltas):
        cls = "superadditive"
    else:
        cls = "neither"
    exp = expected_cash_behavior(phi)
    return CashAdditivityReport(
        classification=cls,
        shifts=tuple(float(m) for m in shifts),
        deltas=tuple(deltas),
        base_premium=base,
        expected=exp,
        consistent=None if exp is None else (cls == exp),
    )
