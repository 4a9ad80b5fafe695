"""Dual engine: penalties, certificates, entropy bridge, HG restriction."""

import math

import numpy as np
import pytest

from orlicz.base import DimensionError, DomainError, NotConvexError, NotGAConvexError
from orlicz.duality import (
    alpha_bridge_report,
    alpha_from_beta,
    alpha_penalty,
    beta_conjugate,
    beta_on_grid,
    beta_primal,
    dual_search,
    hg_dual_check,
    relative_entropy,
    simplex_grid,
)
from orlicz.functions import (
    Expectile,
    GeometricMean,
    LpQuantile,
    LpqQuantile,
    PiecewiseLinear,
    Power,
    QuantileStep,
)
from orlicz.premium import orlicz_premium
from orlicz.prob import FiniteProbabilitySpace, MeasureChange, rv

UNIFORM2 = FiniteProbabilitySpace((0.5, 0.5))
P2 = MeasureChange(UNIFORM2, (1.0, 1.0))

CONVEX_BATTERY = [
    Power(1.0),
    Power(2.0),
    Power(3.0),
    Expectile(0.6),
    Expectile(0.8),
    LpQuantile(0.7, 1.0),
    LpqQuantile(1.5, 0.5, 1.0, 1.0),
    LpqQuantile(2.0, 0.0, 2.0, 1.0),
]


def _random_measure(rng, space):
    probs = space.probs_array()
    q = rng.dirichlet(np.ones(space.n))
    q = q / np.sum(q * 0 + q)  # keep exact float simplex weights
    dens = tuple(float(qi / pi) for qi, pi in zip(q, probs))
    # renormalize the density so the unit-mean check passes exactly enough
    total = float(np.dot(probs, dens))
    dens = tuple(d / total for d in dens)
    return MeasureChange(space, dens)


def test_beta_power_closed_form():
    Q = MeasureChange(UNIFORM2, (0.6, 1.4))
    want = 1.0 / math.sqrt(0.5 * 0.36 + 0.5 * 1.96)
    assert beta_conjugate(Power(2.0), Q) == pytest.approx(want, rel=1e-12)
    assert beta_conjugate(Power(1.0), Q) == pytest.approx(1.0 / 1.4, rel=1e-12)


def test_beta_at_reference_measure_is_one():
    for phi in CONVEX_BATTERY:
        assert beta_conjugate(phi, P2) == pytest.approx(1.0, abs=1e-12)
        assert beta_primal(phi, P2) == pytest.approx(1.0, abs=1e-6)


def test_beta_requires_convexity():
    with pytest.raises(NotConvexError):
        beta_conjugate(QuantileStep(0.3), P2)
    with pytest.raises(NotConvexError):
        beta_primal(GeometricMean(), P2)


def test_expectile_beta_is_one_inside_slope_band():
    # beta(Q) = 1 exactly when max density / min density <= alpha/(1-alpha)
    phi = Expectile(0.8)
    inside = MeasureChange(UNIFORM2, (0.5, 1.5))  # ratio 3 < 4
    boundary = MeasureChange(UNIFORM2, (0.4, 1.6))  # ratio exactly 4
    outside = MeasureChange(UNIFORM2, (0.2, 1.8))  # ratio 9 > 4
    assert beta_conjugate(phi, inside) == pytest.approx(1.0, abs=1e-12)
    assert beta_conjugate(phi, boundary) == pytest.approx(1.0, abs=1e-12)
    assert beta_conjugate(phi, outside) < 1.0 - 1e-6


def test_all_or_nothing_family_has_unit_beta_everywhere():
    # slope 1 above, 0 below: the conjugate objective is identically 1
    phi = LpqQuantile(1.0, 0.0, 1.0, 1.0)
    for dens in [(1.0, 1.0), (0.2, 1.8), (1.99, 0.01)]:
        assert beta_conjugate(phi, MeasureChange(UNIFORM2, dens)) == pytest.approx(1.0, abs=1e-12)


def test_beta_routes_agree_on_random_instances():
    rng = np.random.default_rng(29)
    for i in range(60):
        n = int(rng.integers(2, 5))
        space = FiniteProbabilitySpace(tuple(float(p) for p in rng.dirichlet(np.ones(n))))
        Q = _random_measure(rng, space)
        phi = CONVEX_BATTERY[i % len(CONVEX_BATTERY)]
        b1 = beta_conjugate(phi, Q)
        b2 = beta_primal(phi, Q)
        assert abs(b1 - b2) <= 1e-4, (phi.spec_string(), Q.density, b1, b2)


def test_beta_numeric_fallback_on_convex_pwl():
    # identity-like pwl should behave like Power(1): beta = 1/max density
    phi = PiecewiseLinear([(0.0, 0.0), (1.0, 1.0), (3.0, 3.0)])
    Q = MeasureChange(UNIFORM2, (0.5, 1.5))
    assert beta_conjugate(phi, Q) == pytest.approx(1.0 / 1.5, rel=1e-6)


def test_alpha_gm_is_entropy_indicator():
    assert alpha_penalty(GeometricMean(), P2) == pytest.approx(1.0, abs=1e-12)
    off = MeasureChange(UNIFORM2, (0.6, 1.4))
    assert alpha_penalty(GeometricMean(), off) == 0.0


def test_alpha_power_at_reference():
    assert alpha_penalty(Power(2.0), P2) == pytest.approx(1.0, abs=1e-6)


def test_alpha_requires_ga_convexity():
    with pytest.raises(NotGAConvexError):
        alpha_penalty(QuantileStep(0.3), P2)


def test_relative_entropy_hand_value():
    R = MeasureChange(UNIFORM2, (1.5, 0.5))
    want = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    assert relative_entropy(R, P2) == pytest.approx(want, rel=1e-14)
    assert relative_entropy(P2, R) > 0.0
    # off-support target blows up
    degenerate = MeasureChange(UNIFORM2, (2.0, 0.0))
    assert relative_entropy(R, degenerate) == math.inf
    assert relative_entropy(degenerate, R) < math.inf


def test_relative_entropy_space_mismatch():
    other = MeasureChange(FiniteProbabilitySpace((0.25, 0.75)), (1.0, 1.0))
    with pytest.raises(DimensionError):
        relative_entropy(P2, other)


def test_alpha_from_beta_lower_bounds_alpha():
    phi = Power(2.0)
    grid = beta_on_grid(phi, UNIFORM2, grid_step=0.05)
    bridged = alpha_from_beta(grid, P2)
    direct = alpha_penalty(phi, P2)
    assert bridged <= direct + 1e-9
    assert bridged >= beta_conjugate(phi, P2) - 1e-12  # Q = R term alone


def test_alpha_bridge_report_within_gap():
    report = alpha_bridge_report(Power(2.0), P2, grid_step=0.01)
    assert report.reported_gap == pytest.approx(0.05)
    assert report.within_gap, report


def test_simplex_grid_counts():
    assert len(simplex_grid(2, 0.5)) == 3
    assert len(simplex_grid(3, 0.25)) == 15  # C(6, 2)
    for q in simplex_grid(3, 0.25):
        assert math.fsum(q) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        simplex_grid(2, 0.3)


def test_dual_search_closes_gap_on_power():
    X = rv((1.0, 3.0))
    cert = dual_search(Power(2.0), X, kind="arithmetic")
    primal = orlicz_premium(Power(2.0), X).value
    assert cert.lower_bound == pytest.approx(primal, abs=1e-9)
    assert cert.lower_bound <= primal + 1e-9
    assert cert.kind == "arithmetic"


def test_dual_search_geometric_attains_at_reference():
    X = rv((0.5, 2.0))
    cert = dual_search(GeometricMean(), X, kind="geometric")
    primal = orlicz_premium(GeometricMean(), X).value
    assert cert.lower_bound == pytest.approx(primal, abs=1e-9)
    assert cert.measure.density == (1.0, 1.0)
    assert cert.penalty == pytest.approx(1.0, abs=1e-9)


def test_dual_search_geometric_needs_positive_outcomes():
    with pytest.raises(DomainError):
        dual_search(GeometricMean(), rv((0.0, 2.0)), kind="geometric")


def test_dual_search_exhaustive_dimension_guard():
    X = rv((1.0, 2.0, 3.0, 4.0, 5.0))
    with pytest.raises(DimensionError):
        dual_search(Power(2.0), X, method="exhaustive")
    # auto on n = 5 falls back to seeded multistarts and stays below primal
    cert = dual_search(Power(2.0), X, grid_step=0.05)
    primal = orlicz_premium(Power(2.0), X).value
    assert cert.lower_bound <= primal + 1e-9
    assert cert.lower_bound >= 0.9 * primal  # multistart plus polish gets close


def test_hg_dual_check_mean_premium():
    report = hg_dual_check(Power(1.0), rv((1.0, 3.0)))
    assert report.primal == pytest.approx(2.0, abs=1e-8)
    assert report.dual_bound == pytest.approx(2.0, abs=1e-8)
    assert report.agrees


def test_hg_dual_check_expectile_twopoint():
    report = hg_dual_check(Expectile(0.8), rv((0.0, 1.0)))
    assert report.primal == pytest.approx(0.8, abs=1e-8)
    assert report.dual_bound == pytest.approx(0.8, abs=1e-8)
    assert report.best_density == (0.4, 1.6)
    assert report.agrees


def test_hg_dual_check_dimension_guard():
    with pytest.raises(DimensionError):
        hg_dual_check(Power(2.0), rv((1.0, 2.0, 3.0, 4.0, 5.0)))
