"""Shared error types and extended-real arithmetic conventions.

Quantities in this package live in the extended reals and are represented
as ordinary floats, with ``math.inf`` / ``-math.inf`` standing in for the
two infinities.  IEEE arithmetic leaves ``-inf + inf`` and ``0 * inf``
undefined (NaN); the helpers here pin down the conventions used
throughout:

* in expectations, a ``+inf`` term dominates any ``-inf`` term;
* in geometric-mean style products, ``0 ** lam * inf ** (1 - lam)`` is
  ``+inf`` for ``lam`` in (0, 1).

Both choices make the monotone limits that motivate them come out right
and are applied consistently by every module.
"""

from __future__ import annotations

import math
from typing import Iterable

INF = math.inf
NEG_INF = -math.inf


class OrliczError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPhiError(OrliczError):
    """A function failed validation against the admissibility conditions."""


class NotConvexError(OrliczError):
    """An operation requiring convexity was applied to a non-convex function."""


class NotGAConvexError(OrliczError):
    """An operation requiring GA-convexity was applied where it fails or is unknown."""


class DomainError(OrliczError):
    """Input values lie outside the domain an operation supports."""


class DimensionError(OrliczError):
    """Mismatched or unsupported dimensions (space size, vector lengths)."""


class ToleranceError(OrliczError):
    """Tolerance is non-positive or below floating-point resolution."""


class UnboundedError(OrliczError):
    """A supremum was detected to be infinite where a finite value is required."""


def ext_weighted_sum(weights: Iterable[float], values: Iterable[float]) -> float:
    """Weighted sum of extended-real values with strictly positive weights.

    A +inf term makes the sum +inf regardless of any -inf terms; -inf
    terms alone give -inf.  Finite sums use math.fsum for reproducibility.
    """
    terms = []
    has_pos = False
    has_neg = False
    for w, v in zip(weights, values):
        if v == INF:
            has_pos = True
        elif v == NEG_INF:
            has_neg = True
        elif v != v:  # NaN: never expected, fail loudly
            raise ValueError("NaN encountered in extended-real sum")
        else:
            terms.append(w * v)
    if has_pos:
        return INF
    if has_neg:
        return NEG_INF
    return math.fsum(terms)


def geo_product(a: float, la: float, b: float) -> float:
    """a**la * b**(1-la) for nonnegative extended reals, 0*inf -> inf."""
    if la == 0.0:
        return b
    if la == 1.0:
        return a
    if (a == 0.0 and b == INF) or (a == INF and b == 0.0):
        return INF
    if a == INF or b == INF:
        return INF
    if a == 0.0 or b == 0.0:
        return 0.0
    return a ** la * b ** (1.0 - la)


def check_tol(tol: float) -> float:
    """Reject tolerances that are non-positive or below fp resolution."""
    if not (tol > 0.0):
        raise ToleranceError(f"tolerance must be positive, got {tol!r}")
    if tol < 1e-15:
        raise ToleranceError(f"tolerance {tol!r} is below float64 resolution")
    return tol
