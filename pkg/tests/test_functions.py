"""Function-family behaviour: values, flags, validation, conjugates."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orlicz.base import INF, NEG_INF, DomainError, NotConvexError
from orlicz.functions import (
    Expectile,
    GeometricExpectile,
    GeometricMean,
    LpQuantile,
    LpqQuantile,
    PiecewiseLinear,
    Power,
    QuantileStep,
    conjugate,
    is_convex,
    is_ga_convex,
    piecewise_linear_from_text,
    validate,
)

ALL_FAMILIES = [
    GeometricMean(),
    Power(0.5),
    Power(1.0),
    Power(2.0),
    Power(3.0),
    QuantileStep(0.3),
    Expectile(0.3),
    Expectile(0.8),
    LpQuantile(0.7, 2.0),
    LpqQuantile(1.0, 1.0, 2.0, 1.0),
    GeometricExpectile(2.0, 1.0),
]


def test_geometric_mean_values():
    phi = GeometricMean()
    assert phi(1.0) == 1.0
    assert phi(math.e) == pytest.approx(2.0, rel=1e-15)
    assert phi(0.0) == NEG_INF
    assert phi.at_zero == NEG_INF


def test_power_values():
    phi = Power(2.0)
    assert phi(2.0) == 4.0
    assert phi(0.0) == 0.0
    assert phi(1.0) == 1.0


def test_quantile_step_is_left_continuous_at_one():
    phi = QuantileStep(0.3)
    assert phi(1.0) == 0.3
    assert phi(1.0000001) == 1.3
    xs = phi.eval_array(np.array([0.0, 1.0, 1.5]))
    assert list(xs) == [0.3, 0.3, 1.3]


def test_expectile_kink():
    phi = Expectile(0.8)
    assert phi(1.0) == 1.0
    assert phi(2.0) == pytest.approx(1.8)
    assert phi(0.5) == pytest.approx(1.0 - 0.2 * 0.5)
    assert phi.at_zero == pytest.approx(0.8)


def test_lpq_at_zero_and_domain():
    phi = LpqQuantile(1.0, 0.75, 2.0, 1.0)
    assert phi.at_zero == pytest.approx(0.25)
    with pytest.raises(ValueError):
        LpqQuantile(0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        LpqQuantile(1.0, -0.5, 1.0, 1.0)


def test_geometric_expectile_zero_behaviour():
    assert GeometricExpectile(2.0, 1.0).at_zero == NEG_INF
    assert GeometricExpectile(2.0, 0.0).at_zero == 1.0
    assert GeometricExpectile(2.0, 0.0)(0.5) == 1.0


@pytest.mark.parametrize("phi", ALL_FAMILIES, ids=lambda f: f.spec_string())
def test_negative_input_rejected(phi):
    with pytest.raises(DomainError):
        phi(-0.1)


@pytest.mark.parametrize("phi", ALL_FAMILIES, ids=lambda f: f.spec_string())
def test_builtins_are_admissible(phi):
    report = validate(phi)
    assert report.ok, report.violations


@pytest.mark.parametrize(
    "phi,convex,ga",
    [
        (GeometricMean(), False, True),
        (Power(0.5), False, True),
        (Power(1.0), True, True),
        (Power(3.0), True, True),
        (QuantileStep(0.3), False, False),
        (Expectile(0.3), False, False),
        (Expectile(0.5), True, True),
        (Expectile(0.8), True, True),
        (LpQuantile(0.7, 1.0), True, True),
        (LpQuantile(0.7, 2.0), False, False),
        (LpqQuantile(1.0, 1.0, 1.0, 1.0), True, True),
        (LpqQuantile(0.5, 1.0, 1.0, 1.0), False, False),
        (LpqQuantile(1.0, 1.0, 2.0, 2.0), False, False),
        (LpqQuantile(2.0, 0.0, 2.0, 1.0), True, True),
        (GeometricExpectile(2.0, 1.0), False, True),
        (GeometricExpectile(1.0, 2.0), False, False),
    ],
    ids=lambda v: v.spec_string() if hasattr(v, "spec_string") else str(v),
)
def test_convexity_flags(phi, convex, ga):
    assert phi.convex_flag is convex
    assert phi.ga_convex_flag is ga
    assert is_convex(phi) is convex
    assert is_ga_convex(phi) is ga


@given(st.floats(min_value=1e-6, max_value=50.0), st.floats(min_value=1e-6, max_value=50.0))
@settings(max_examples=200, deadline=None)
def test_families_nondecreasing(x, y):
    lo, hi = sorted((x, y))
    for phi in ALL_FAMILIES:
        assert phi(lo) <= phi(hi) + 1e-12


# --- piecewise linear -------------------------------------------------------


def test_pwl_interpolates_knots():
    phi = PiecewiseLinear([(0.5, 0.25), (1.0, 1.0), (2.0, 3.0)])
    assert phi(0.5) == 0.25
    assert phi(1.0) == 1.0
    assert phi(1.5) == pytest.approx(2.0)
    # extension beyond the last knot keeps the final slope
    assert phi(3.0) == pytest.approx(5.0)


def test_pwl_tri_state_flags():
    convex = PiecewiseLinear([(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)])
    assert convex.convex_flag is True
    concave_kink = PiecewiseLinear([(0.0, 0.0), (1.0, 1.0), (2.0, 1.5), (3.0, 3.5)])
    assert concave_kink.convex_flag is False


def test_pwl_capped_domain():
    phi = PiecewiseLinear([(0.5, 0.2), (1.0, 1.0), (2.0, 4.0)], upper=2.0)
    assert phi.upper == 2.0
    assert phi(2.0) == 4.0
    assert phi(2.0000001) == INF
    assert phi.convex_flag is None  # finite cap blocks the midpoint certificate


def test_pwl_from_text():
    text = """
    # knots
    0, -inf
    0.5, 0.2
    1.0, 1.0
    2.0, 4.0
    3.0, inf
    """
    phi = piecewise_linear_from_text(text)
    assert phi.at_zero == NEG_INF
    assert phi.upper == 3.0
    assert phi(1.0) == 1.0
    assert phi(1.5) == pytest.approx(2.5)


def test_pwl_from_text_rejects_garbage():
    with pytest.raises(ValueError):
        piecewise_linear_from_text("0.5, 0.3, 1.0\n")
    with pytest.raises(ValueError):
        piecewise_linear_from_text("# nothing\n")


def test_validate_flags_inadmissible_pwl():
    # exceeds 1 inside [0, 1]
    bad = PiecewiseLinear([(0.5, 1.5), (1.0, 2.0), (2.0, 3.0)])
    report = validate(bad)
    assert not report.ok
    assert any(v.condition == "below_one_on_unit" for v in report.violations)
    # never exceeds 1 at all
    flat = PiecewiseLinear([(0.0, 0.0), (5.0, 0.5)])
    report = validate(flat)
    assert not report.ok


# --- conjugates -------------------------------------------------------------


def _conjugate_oracle(phi, y, hi=1e4):
    # dense log-grid sup plus the kink at 1; ~1e-6 for bounded conjugates
    xs = np.sort(np.concatenate([[0.0, 1.0, 2.0], np.geomspace(1e-8, hi, 20001)]))
    best = -math.inf
    for x in xs:
        v = phi(float(x))
        if v == INF:
            break
        best = max(best, float(x) * y - v)
    return best


def test_power_conjugate_closed_form():
    phi = Power(2.0)
    assert conjugate(phi, 0.0) == 0.0
    assert conjugate(phi, 2.0) == pytest.approx(1.0, rel=1e-12)
    for y in (0.5, 1.0, 3.0):
        assert conjugate(phi, y) == pytest.approx((y / 2.0) ** 2, rel=1e-12)


def test_power_one_conjugate_is_indicator():
    phi = Power(1.0)
    assert conjugate(phi, 0.5) == 0.0
    assert conjugate(phi, 1.0) == 0.0
    assert conjugate(phi, 1.0000001) == INF


@pytest.mark.parametrize("y", [0.0, 0.1, 0.25, 0.5, 0.79, 0.8])
def test_expectile_conjugate_matches_grid(y):
    phi = Expectile(0.8)
    assert conjugate(phi, y) == pytest.approx(_conjugate_oracle(phi, y), abs=1e-6)


def test_expectile_conjugate_unbounded_beyond_upper_slope():
    assert conjugate(Expectile(0.8), 0.81) == INF


def test_kinked_conjugate_piecewise_values():
    # slopes a=1.5 above 1, b=0.5 below; Psi = b-1 below b, y-1 in [b, a]
    phi = LpqQuantile(1.5, 0.5, 1.0, 1.0)
    assert conjugate(phi, 0.2) == pytest.approx(-0.5)
    assert conjugate(phi, 1.0) == pytest.approx(0.0)
    assert conjugate(phi, 1.4) == pytest.approx(0.4)
    assert conjugate(phi, 1.6) == INF


def test_conjugate_requires_convexity_and_domain():
    with pytest.raises(NotConvexError):
        conjugate(QuantileStep(0.3), 1.0)
    with pytest.raises(DomainError):
        conjugate(Power(2.0), -0.5)


def test_numeric_conjugate_on_convex_pwl():
    phi = PiecewiseLinear([(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)])
    for y in (0.3, 1.0, 2.5):
        assert conjugate(phi, y) == pytest.approx(_conjugate_oracle(phi, y), abs=1e-6)
    # beyond the terminal slope 3 the sup runs away
    assert conjugate(phi, 3.5) == INF
