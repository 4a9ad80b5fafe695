"""Dual representations of the premium: penalty functions and certificates.

For convex Phi the premium has an arithmetic dual form

    H(X) = sup_Q  beta(Q) * E_Q[X],

and for GA-convex Phi a geometric dual form

    H(X) = sup_Q  alpha(Q) * exp(E_Q[log X]),

both over probability measures Q << P.  The penalties take values in
[0, 1]; 0 encodes an infinitely implausible model.  beta has two
independent computation routes that cross-check each other: a separable
Lagrangian over the primal constraint set {E[Phi(X)] <= 1}, and a 1-D
minimization built on the convex conjugate.  alpha runs the Lagrangian
in log coordinates.  A relative-entropy bridge converts beta values
into alpha values.

Everything here is a certificate engine.  Search is a simplex grid plus
a deterministic local polish; sampled optimization only ever tightens
toward the true optimum from the safe side, so no reported lower bound
can exceed the primal premium beyond fp noise.  Gaps are reported, not
hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .base import (
    DimensionError,
    DomainError,
    INF,
    NEG_INF,
    NotConvexError,
    NotGAConvexError,
    OrliczError,
)
from .functions import (
    Expectile,
    LpQuantile,
    LpqQuantile,
    OrliczFunction,
    Power,
    conjugate,
)
from .prob import MeasureChange, RandomVariable
from .search import golden_max, golden_min

YCAP = 60.0  # log-coordinate box for the geometric Lagrangian
GROWTH_EPS = 1e-9  # cap-growth threshold: larger slope means an unbounded ray


@dataclass(frozen=True)
class DualCertificate:
    """A verified lower bound on the premium from one measure Q.

    lower_bound = penalty * E_Q[X] (arithmetic) or
    penalty * exp(E_Q[log X]) (geometric); weak duality keeps it at or
    below the primal premium.
    """

    measure: MeasureChange
    penalty: float
    lower_bound: float
    kind: str


def _require_convex(phi: OrliczFunction) -> None:
    if phi.convex_flag is not True:
        raise NotConvexError(
            f"needs certified convexity; flag is {phi.convex_flag!r} for {phi!r}"
        )


def _require_ga_convex(phi: OrliczFunction) -> None:
    if phi.ga_convex_flag is not True:
        raise NotGAConvexError(
            f"needs certified GA-convexity; flag is {phi.ga_convex_flag!r} for {phi!r}"
        )


def _kinked_slopes(phi: OrliczFunction) -> Optional[tuple[float, float]]:
    """(upper slope, lower slope) when Phi is linear-kinked at 1, else None."""
    if isinstance(phi, Expectile):
        return phi.alpha, 1.0 - phi.alpha
    if isinstance(phi, LpQuantile) and phi.p == 1.0:
        return phi.alpha, 1.0 - phi.alpha
    if isinstance(phi, LpqQuantile) and phi.p == 1.0 and phi.q == 1.0:
        return phi.a, phi.b
    return None


# ---------------------------------------------------------------------------
# beta: conjugate route
# ---------------------------------------------------------------------------


def beta_conjugate(phi: OrliczFunction, Q: MeasureChange, tol: float = 1e-9) -> float:
    """beta(Q) = (inf over lam > 0 of (1/lam) E[1 + Psi(lam * dQ/dP)])^-1.

    Power uses the dual-norm closed form; kinked-linear families minimize
    exactly over the finite set of slope breakpoints; anything else runs
    golden-section over log lam on the conjugate-based objective, which
    is a perspective of a convex function and hence unimodal.
    """
    _require_convex(phi)
    dens = np.asarray(Q.density, dtype=float)
    probs = Q.space.probs_array()
    if isinstance(phi, Power):
        if phi.p == 1.0:
            denom = float(dens.max())
        else:
            r = phi.p / (phi.p - 1.0)
            denom = float((probs @ dens**r) ** (1.0 / r))
        return min(1.0, 1.0 / denom)
    slopes = _kinked_slopes(phi)
    if slopes is not None:
        return min(1.0, 1.0 / _kinked_dual_min(dens, probs, *slopes))
    return min(1.0, 1.0 / _conjugate_dual_min(phi, dens, probs))


def _kinked_dual_min(dens: np.ndarray, probs: np.ndarray, a_s: float, b_s: float) -> float:
    # objective is piecewise (const + c/lam) between slope breakpoints, so
    # its minimum sits on a breakpoint or on the feasibility edge a_s/max
    dmax = float(dens.max())
    lam_hi = a_s / dmax
    cands = {lam_hi}
    for w in dens:
        if w <= 0.0:
            continue
        for s in (a_s, b_s):
            if s > 0.0:
                lam = s / w
                if lam <= lam_hi * (1.0 + 1e-12):
                    cands.add(min(lam, lam_hi))
    best = INF
    for lam in cands:
        y = lam * dens
        psi = np.where(y >= b_s, y - 1.0, b_s - 1.0)
        f = (1.0 + float(probs @ psi)) / lam
        best = min(best, f)
    return best


def _conjugate_dual_min(
    phi: OrliczFunction, dens: np.ndarray, probs: np.ndarray, x_cap: float = 1e6
) -> float:
    # Phi == 1 on all of [0, 1] makes the premium the essential sup and the
    # objective's infimum exactly 1, approached only as lam -> 0
    if phi.at_zero >= 1.0 - 1e-15:
        return 1.0

    def f(lam: float) -> float:
        total = 1.0
        for p_i, w in zip(probs, dens):
            psi = conjugate(phi, lam * float(w), x_cap)
            if psi == INF:
                return INF
            total += p_i * psi
        return total / lam

    lams = np.geomspace(1e-6, 1e6, 49)
    vals = [f(float(l)) for l in lams]
    finite = [i for i, v in enumerate(vals) if v < INF]
    if not finite:
        return INF
    i = min(finite, key=lambda k: (vals[k], k))
    lo = float(lams[max(i - 1, 0)])
    hi = float(lams[min(i + 1, len(lams) - 1)])
    _, fv = golden_min(lambda t: f(math.exp(t)), math.log(lo), math.log(hi), tol=1e-12)
    return min(vals[i], fv)


# ---------------------------------------------------------------------------
# beta: primal (Lagrangian) route
# ---------------------------------------------------------------------------


def beta_primal(
    phi: OrliczFunction, Q: MeasureChange, tol: float = 1e-9, x_cap: float = 1e6
) -> float:
    """beta(Q) via sup{E_Q[X] : E[Phi(X)] <= 1, X >= 0}, reciprocal taken.

    The constraint is separable, so for a multiplier lam >= 0 the dual is
    D(lam) = lam + sum_i p_i * sup_x (phi_i x - lam Phi(x)), convex in
    lam.  Each inner problem is concave in x (Phi convex) and solved by
    grid plus golden section; unbounded rays are detected from the
    asymptotic slope of Phi.  min_lam D(lam) >= the primal supremum, so
    1/D never overstates beta beyond fp noise.
    """
    _require_convex(phi)
    dens = np.asarray(Q.density, dtype=float)
    probs = Q.space.probs_array()

    top = min(x_cap, phi.upper)
    v_top = phi(top)
    v_half = phi(top * 0.5)
    slope_inf = INF if v_top == INF else (v_top - v_half) / (top * 0.5)

    xs = [0.0] + [float(x) for x in np.geomspace(1e-9, top, 41)]
    pts = getattr(phi, "points", None)
    if pts is not None:
        xs.extend(x for x, _ in pts if 0.0 < x < top)
        xs = sorted(set(xs))
    xs_arr = np.asarray(xs)
    phi_grid = phi.eval_array(xs_arr)

    def inner(lam: float, w: float) -> float:
        if phi.upper == INF and slope_inf < INF and w - lam * slope_inf > 1e-12 * max(1.0, w):
            return INF
        obj = w * xs_arr - lam * phi_grid
        obj = np.where(np.isnan(obj), NEG_INF, obj)
        i = int(np.argmax(obj))
        lo = xs[max(i - 1, 0)]
        hi = xs[min(i + 1, len(xs) - 1)]

        def scalar(x: float) -> float:
            v = phi(x)
            return NEG_INF if v == INF else w * x - lam * v

        if lo > 0.0:
            _, v2 = golden_max(
                lambda t: scalar(math.exp(t)), math.log(lo), math.log(hi), tol=1e-11
            )
        else:
            _, v2 = golden_max(scalar, lo, hi, tol=1e-13)
        return max(float(obj[i]), v2)

    def dual(lam: float) -> float:
        total = lam
        for p_i, w in zip(probs, dens):
            s = inner(lam, float(w))
            if s == INF:
                return INF
            total += p_i * s
        return total

    # the upper reach matters when the dual objective decreases toward a
    # lam -> inf limit, as it does for functions flat at level 1 on [0, 1]
    cands = {1.0} | {float(l) for l in np.geomspace(1e-4, 1e6, 33)}
    if 0.0 < slope_inf < INF:
        lam_min = float(dens.max()) / slope_inf
        cands |= {lam_min, lam_min * (1.0 + 1e-9), lam_min * 1.25, lam_min * 2.0, lam_min * 8.0}
    slopes = _kinked_slopes(phi)
    if slopes is not None:
        a_s, b_s = slopes
        for w in dens:
            if w > 0.0:
                cands.add(float(w) / a_s)
                if b_s > 0.0:
                    cands.add(float(w) / b_s)
    lam_list = sorted(c for c in cands if c > 0.0)
    vals = [dual(l) for l in lam_list]
    finite = [i for i, v in enumerate(vals) if v < INF]
    if not finite:
        return 0.0  # infinitely penalized: constraint never binds the objective
    i = min(finite, key=lambda k: (vals[k], k))
    lo = lam_list[max(i - 1, 0)]
    hi = lam_list[min(i + 1, len(lam_list) - 1)]
    _, dv = golden_min(lambda t: dual(math.exp(t)), math.log(lo), math.log(hi), tol=1e-11)
    dmin = min(vals[i], dv)
    if not (dmin > 0.0) or dmin == INF:
        return 0.0 if dmin == INF else 1.0
    return min(1.0, 1.0 / dmin)


# ---------------------------------------------------------------------------
# alpha: geometric penalty
# ---------------------------------------------------------------------------


def alpha_penalty(phi: OrliczFunction, Q: MeasureChange, tol: float = 1e-9) -> float:
    """alpha(Q) = exp(-sup{E_Q[Y] : E[Phi(e^Y)] <= 1}), 0 when the sup is inf.

    GA-convexity makes y -> Phi(e^y) convex, so the same separable
    Lagrangian applies in log coordinates on the box [-YCAP, YCAP].
    Positive growth at either box edge certifies an unbounded feasible
    ray (the objective is concave), which sends the penalty to exactly 0.
    """
    _require_ga_convex(phi)
    dens = np.asarray(Q.density, dtype=float)
    probs = Q.space.probs_array()

    ys = np.linspace(-YCAP, YCAP, 97)
    with np.errstate(over="ignore"):
        phi_e = phi.eval_array(np.exp(ys))

    def inner(lam: float, w: float) -> float:
        obj = w * ys - lam * phi_e
        obj = np.where(np.isnan(obj), NEG_INF, obj)
        if obj[0] > obj[1] + GROWTH_EPS or obj[-1] > obj[-2] + GROWTH_EPS:
            return INF
        i = int(np.argmax(obj))
        lo = float(ys[max(i - 1, 0)])
        hi = float(ys[min(i + 1, len(ys) - 1)])

        def scalar(y: float) -> float:
            v = phi(math.exp(y))
            return NEG_INF if v == INF else w * y - lam * v

        _, v2 = golden_max(scalar, lo, hi, tol=1e-13)
        return max(float(obj[i]), v2)

    def dual(lam: float) -> float:
        total = lam
        for p_i, w in zip(probs, dens):
            s = inner(lam, float(w))
            if s == INF:
                return INF
            total += p_i * s
        return total

    cands = {1.0} | {float(w) for w in dens if w > 0.0}
    cands |= {float(l) for l in np.geomspace(1e-4, 1e4, 25)}
    lam_list = sorted(cands)
    vals = [dual(l) for l in lam_list]
    finite = [i for i, v in enumerate(vals) if v < INF]
    if not finite:
        return 0.0
    i = min(finite, key=lambda k: (vals[k], k))
    lo = lam_list[max(i - 1, 0)]
    hi = lam_list[min(i + 1, len(lam_list) - 1)]
    _, dv = golden_min(lambda t: dual(math.exp(t)), math.log(lo), math.log(hi), tol=1e-11)
    dmin = min(vals[i], dv)
    if dmin == INF:
        return 0.0
    return min(1.0, math.exp(-dmin))


# ---------------------------------------------------------------------------
# simplex search
# ---------------------------------------------------------------------------


def simplex_grid(n: int, step: float) -> list[tuple[float, ...]]:
    """All probability vectors of length n with coordinates on a step grid."""
    if n < 1:
        raise DimensionError(f"need n >= 1, got {n}")
    M = round(1.0 / step)
    if M < 1 or abs(M * step - 1.0) > 1e-9:
        raise ValueError(f"step {step!r} must evenly divide 1")
    out: list[tuple[float, ...]] = []

    def rec(prefix: tuple[int, ...], left: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (left,))
            return
        for m in range(left + 1):
            rec(prefix + (m,), left - m, slots - 1)

    rec((), M, n)
    return [tuple(m / M for m in comp) for comp in out]


def _as_measure(space, q: Sequence[float], probs: np.ndarray) -> MeasureChange:
    dens = tuple(float(qi) / float(pi) for qi, pi in zip(q, probs))
    return MeasureChange(space, dens)


def dual_search(
    phi: OrliczFunction,
    X: RandomVariable,
    kind: str = "arithmetic",
    grid_step: Optional[float] = None,
    tol: float = 1e-9,
    method: str = "auto",
) -> DualCertificate:
    """Best dual certificate over a simplex grid plus local polish.

    The grid (step grid_step, default 0.01 for n <= 3 and 0.05 for
    n = 4) is exhaustive for n <= 4; larger spaces use 32 seeded
    multi-starts.  Q = P is always a candidate.  After the sweep, a
    deterministic pairwise-transfer polish refines the best point with a
    halving step, which closes the grid-resolution gap without ever
    breaking weak duality.  Ties prefer the lexicographically smallest
    density, independent of evaluation order.
    """
    if kind not in ("arithmetic", "geometric"):
        raise ValueError(f"kind must be 'arithmetic' or 'geometric', got {kind!r}")
    if method not in ("auto", "exhaustive", "multistart"):
        raise ValueError(f"unknown method {method!r}")
    n = X.space.n
    probs = X.space.probs_array()
    vals = X.values_array()
    if kind == "arithmetic":
        _require_convex(phi)
        logs = None
    else:
        _require_ga_convex(phi)
        if float(vals.min()) <= 0.0:
            raise DomainError("geometric certificates need strictly positive outcomes")
        logs = np.log(vals)
    if grid_step is None:
        grid_step = 0.01 if n <= 3 else 0.05
    if method == "exhaustive" and n > 4:
        raise DimensionError(f"exhaustive simplex grid limited to n <= 4, got n = {n}")
    use_grid = method == "exhaustive" or (method == "auto" and n <= 4)

    def evaluate(q: Sequence[float]) -> tuple[float, float, MeasureChange]:
        Q = _as_measure(X.space, q, probs)
        if kind == "arithmetic":
            pen = beta_conjugate(phi, Q, tol)
            val = float(np.dot(q, vals))
        else:
            pen = alpha_penalty(phi, Q, tol)
            val = float(math.exp(np.dot(q, logs))) if pen > 0.0 else 0.0
        return pen * val, pen, Q

    if use_grid:
        candidates: Iterable[Sequence[float]] = simplex_grid(n, grid_step)
    else:
        rng = np.random.default_rng(20210607)
        candidates = [tuple(rng.dirichlet(np.ones(n))) for _ in range(32)]

    best_bound, best_pen, best_Q = evaluate(tuple(float(p) for p in probs))
    best_q = np.asarray(probs, dtype=float).copy()
    for q in candidates:
        b, pen, Q = evaluate(q)
        if b > best_bound or (b == best_bound and Q.density < best_Q.density):
            best_bound, best_pen, best_Q = b, pen, Q
            best_q = np.asarray(q, dtype=float)

    # pairwise-transfer polish with halving step
    q = best_q.copy()
    delta = grid_step / 2.0
    while delta > 1e-9:
        improved = False
        for i in range(n):
            for j in range(n):
                if i == j or q[j] < delta:
                    continue
                cand = q.copy()
                cand[i] += delta
                cand[j] -= delta
                b, pen, Q = evaluate(cand)
                if b > best_bound:
                    best_bound, best_pen, best_Q = b, pen, Q
                    q = cand
                    improved = True
        if not improved:
            delta *= 0.5

    from .premium import orlicz_premium

    primal = orlicz_premium(phi, X, tol=1e-10).value
    if best_bound > primal + 1e-9 * max(1.0, primal):
        raise OrliczError(
            f"weak duality violated: bound {best_bound!r} exceeds primal {primal!r}"
        )
    return DualCertificate(measure=best_Q, penalty=best_pen, lower_bound=best_bound, kind=kind)


# ---------------------------------------------------------------------------
# entropy bridge
# ---------------------------------------------------------------------------


def relative_entropy(R: MeasureChange, Q: MeasureChange) -> float:
    """KL divergence sum p_i r_i log(r_i / q_i); +inf off Q's support."""
    if R.space != Q.space:
        raise DimensionError("measures must share their base space")
    terms = []
    for p, r, qd in zip(R.space.probs, R.density, Q.density):
        if r == 0.0:
            continue
        if qd == 0.0:
            return INF
        terms.append(p * r * math.log(r / qd))
    return float(math.fsum(terms))


BetaGrid = Union[Mapping[MeasureChange, float], Iterable[tuple[MeasureChange, float]]]


def alpha_from_beta(beta_values: BetaGrid, R: MeasureChange) -> float:
    """sup over the grid of beta(Q) * exp(-H(R, Q)); a lower bound on alpha(R)."""
    if isinstance(beta_values, Mapping):
        items: Iterable[tuple[MeasureChange, float]] = beta_values.items()
    else:
        items = beta_values
    best = 0.0
    for Q, b in items:
        if b <= 0.0:
            continue
        h = relative_entropy(R, Q)
        if h == INF:
            continue
        best = max(best, b * math.exp(-h))
    return best


def beta_on_grid(
    phi: OrliczFunction, space, grid_step: float = 0.01, tol: float = 1e-9
) -> list[tuple[MeasureChange, float]]:
    """beta on the simplex grid (plus Q = P), for the entropy bridge."""
    probs = np.asarray(space.probs, dtype=float)
    out = []
    seen = set()
    for q in [tuple(float(p) for p in probs)] + simplex_grid(space.n, grid_step):
        Q = _as_measure(space, q, probs)
        if Q.density in seen:
            continue
        seen.add(Q.density)
        out.append((Q, beta_conjugate(phi, Q, tol)))
    return out


@dataclass(frozen=True)
class AlphaBridgeReport:
    """Grid-based alpha versus the direct computation, with the gap budget.

    bridge_value is a sup over finitely many Q, so it can undershoot the
    direct value by at most the grid resolution; reported_gap is the
    budget 5 * grid_step that the acceptance checks use.
    """

    bridge_value: float
    direct_value: float
    reported_gap: float
    grid_step: float
    within_gap: bool


def alpha_bridge_report(
    phi: OrliczFunction, R: MeasureChange, grid_step: float = 0.01, tol: float = 1e-9
) -> AlphaBridgeReport:
    grid = beta_on_grid(phi, R.space, grid_step, tol)
    bridge = alpha_from_beta(grid, R)
    direct = alpha_penalty(phi, R, tol)
    gap = 5.0 * grid_step
    return AlphaBridgeReport(
        bridge_value=bridge,
        direct_value=direct,
        reported_gap=gap,
        grid_step=grid_step,
        within_gap=abs(direct - bridge) <= gap,
    )


# ---------------------------------------------------------------------------
# HG dual restriction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HGDualReport:
    """Plain-expectation dual of the HG measure over nearly-unit-beta Q."""

    primal: float
    dual_bound: float
    gap: float
    band: float
    admissible_count: int
    total_count: int
    best_density: Optional[tuple[float, ...]]
    agrees: bool


def hg_dual_check(
    phi: OrliczFunction, X: RandomVariable, grid_step: float = 0.01, tol: float = 1e-9
) -> HGDualReport:
    """Maximize E_Q[X] over grid measures with |beta(Q) - 1| <= grid_step.

    The exact dual of the HG measure ranges over {beta(Q) = 1}; on a
    grid that set is thickened to a band of width grid_step, and the
    result is compared to the primal within 2 * grid_step.
    """
    _require_convex(phi)
    n = X.space.n
    if n > 4:
        raise DimensionError(f"grid restriction limited to n <= 4, got n = {n}")
    from .hg import hg_risk_measure

    primal = hg_risk_measure(phi, X, tol=1e-10).value
    probs = X.space.probs_array()
    vals = X.values_array()
    band = grid_step
    best_val = NEG_INF
    best_dens: Optional[tuple[float, ...]] = None
    admissible = 0
    total = 0
    for q in [tuple(float(p) for p in probs)] + simplex_grid(n, grid_step):
        total += 1
        Q = _as_measure(X.space, q, probs)
        b = beta_conjugate(phi, Q, tol)
        if abs(b - 1.0) > band:
            continue
        admissible += 1
        val = float(np.dot(q, vals))
        if val > best_val or (val == best_val and (best_dens is None or Q.density < best_dens)):
            best_val = val
            best_dens = Q.density
    gap = primal - best_val
    agrees = abs(gap) <= 2.0 * grid_step * max(1.0, abs(primal))
    return HGDualReport(
        primal=primal,
        dual_bound=best_val,
        gap=gap,
        band=band,
        admissible_count=admissible,
        total_count=total,
        best_density=best_dens,
        agrees=agrees,
    )
