"""Acceptance functions for generalized Orlicz premia, and their analysis.

An admissible function Phi maps [0, inf) into the extended reals and must
satisfy three conditions:

  (a) Phi(x) > -inf for x > 0, Phi(x) <= 1 for x <= 1, Phi(x) > 1 for x > 1;
  (b) Phi is nondecreasing;
  (c) Phi is left-continuous.

Phi(0) = -inf is allowed, as is Phi(x) = +inf beyond a finite threshold
u = sup{x : Phi(x) < inf}.  Convexity is deliberately NOT required: the
premium functional stays well behaved without it, which is the point of
the generalized family.

Built-in families
-----------------
GeometricMean          1 + log(x); premium is exp(E[log X]).
Power(p)               x**p; premium is the p-norm, p > 0.
QuantileStep(alpha)    alpha on [0,1], 1+alpha above; premium is the left
                       alpha-quantile (alpha = 1 gives the essential sup).
Expectile(alpha)       1 + alpha(x-1)_+ - (1-alpha)(x-1)_-.
LpQuantile(alpha, p)   1 + alpha(x-1)_+**p - (1-alpha)(x-1)_-**p.
LpqQuantile(a,b,p,q)   1 + a(x-1)_+**p - b(x-1)_-**q.
GeometricExpectile(a,b) 1 + a(log x)_+ - b(log x)_-.
PiecewiseLinear        user-supplied knots, left-continuous at jumps.

Two convexity notions matter here.  Plain convexity of Phi makes the
premium convex.  GA-convexity (convexity of x -> Phi(exp(x))) makes the
premium geometrically convex (multiplicatively, between scaled copies).
Both flags are tri-state: True / False / None for "not determined".
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass
from typing import ClassVar, Iterable, Optional, Sequence

import numpy as np

from .base import DomainError, INF, NEG_INF, NotConvexError

MIDPOINT_TOL = 1e-9  # slack for numeric midpoint convexity tests


class OrliczFunction(ABC):
    """Base class for acceptance functions; instances are immutable."""

    name: ClassVar[str] = "orlicz"

    @abstractmethod
    def __call__(self, x: float) -> float:
        """Evaluate Phi at a scalar x >= 0 (may return +-inf)."""

    @abstractmethod
    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on a nonnegative array."""

    @property
    @abstractmethod
    def at_zero(self) -> float:
        """Phi(0)."""

    @property
    def upper(self) -> float:
        """sup{x : Phi(x) < inf}; inf for every built-in family."""
        return INF

    @property
    @abstractmethod
    def convex_flag(self) -> Optional[bool]: ...

    @property
    @abstractmethod
    def ga_convex_flag(self) -> Optional[bool]: ...

    @abstractmethod
    def spec_string(self) -> str:
        """Canonical 'family:params' form (round-trips through the CLI parser)."""

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec_string()}>"


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------


@dataclass(frozen=True, repr=False)
class GeometricMean(OrliczFunction):
    """Phi(x) = 1 + log(x), with Phi(0) = -inf.

    The premium it induces is the geometric mean exp(E[log X]); any mass
    at zero collapses the premium to 0.  Concave, but GA-convex (its
    log-reparametrization is affine).
    """

    name: ClassVar[str] = "gm"

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x == 0.0:
            return NEG_INF
        return 1.0 + math.log(x)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 1.0 + np.log(xs)

    @property
    def at_zero(self) -> float:
        return NEG_INF

    @property
    def convex_flag(self) -> Optional[bool]:
        return False

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return True

    def spec_string(self) -> str:
        return "gm"


@dataclass(frozen=True, repr=False)
class Power(OrliczFunction):
    """Phi(x) = x**p for p > 0; the premium is the p-norm.

    Convex iff p >= 1; GA-convex for every p > 0.
    """

    p: float
    name: ClassVar[str] = "power"

    def __post_init__(self) -> None:
        if not (self.p > 0):
            raise ValueError(f"power exponent must be positive, got {self.p!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        return x ** self.p

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        return xs ** self.p

    @property
    def at_zero(self) -> float:
        return 0.0

    @property
    def convex_flag(self) -> Optional[bool]:
        return self.p >= 1.0

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return True

    def spec_string(self) -> str:
        return f"power:{self.p!r}"


@dataclass(frozen=True, repr=False)
class QuantileStep(OrliczFunction):
    """Phi = alpha on [0, 1] and 1 + alpha on (1, inf), 0 < alpha <= 1.

    Left-continuous at the jump; the premium is the left alpha-quantile.
    Neither convex nor GA-convex.
    """

    alpha: float
    name: ClassVar[str] = "quantile"

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"quantile level must be in (0, 1], got {self.alpha!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        return self.alpha if x <= 1.0 else 1.0 + self.alpha

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        return np.where(xs > 1.0, 1.0 + self.alpha, self.alpha)

    @property
    def at_zero(self) -> float:
        return self.alpha

    @property
    def convex_flag(self) -> Optional[bool]:
        return False

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return False

    def spec_string(self) -> str:
        return f"quantile:{self.alpha!r}"


@dataclass(frozen=True, repr=False)
class Expectile(OrliczFunction):
    """Phi(x) = 1 + alpha(x-1)_+ - (1-alpha)(x-1)_-, 0 < alpha < 1.

    Convex (and GA-convex) iff alpha >= 1/2.
    """

    alpha: float
    name: ClassVar[str] = "expectile"

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"expectile level must be in (0, 1), got {self.alpha!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x >= 1.0:
            return 1.0 + self.alpha * (x - 1.0)
        return 1.0 - (1.0 - self.alpha) * (1.0 - x)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        d = xs - 1.0
        return 1.0 + self.alpha * np.maximum(d, 0.0) - (1.0 - self.alpha) * np.maximum(-d, 0.0)

    @property
    def at_zero(self) -> float:
        return self.alpha

    @property
    def convex_flag(self) -> Optional[bool]:
        return self.alpha >= 0.5

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return self.alpha >= 0.5

    def spec_string(self) -> str:
        return f"expectile:{self.alpha!r}"


@dataclass(frozen=True, repr=False)
class LpQuantile(OrliczFunction):
    """Phi(x) = 1 + alpha(x-1)_+**p - (1-alpha)(x-1)_-**p, p > 0."""

    alpha: float
    p: float
    name: ClassVar[str] = "lp"

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"level must be in (0, 1), got {self.alpha!r}")
        if not (self.p > 0):
            raise ValueError(f"exponent must be positive, got {self.p!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x >= 1.0:
            return 1.0 + self.alpha * (x - 1.0) ** self.p
        return 1.0 - (1.0 - self.alpha) * (1.0 - x) ** self.p

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        d = xs - 1.0
        return (
            1.0
            + self.alpha * np.maximum(d, 0.0) ** self.p
            - (1.0 - self.alpha) * np.maximum(-d, 0.0) ** self.p
        )

    @property
    def at_zero(self) -> float:
        return self.alpha

    @property
    def convex_flag(self) -> Optional[bool]:
        return self.p == 1.0 and self.alpha >= 0.5

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return self.p == 1.0 and self.alpha >= 0.5

    def spec_string(self) -> str:
        return f"lp:{self.alpha!r},{self.p!r}"


@dataclass(frozen=True, repr=False)
class LpqQuantile(OrliczFunction):
    """Phi(x) = 1 + a(x-1)_+**p - b(x-1)_-**q with a > 0, b >= 0, p, q >= 1.

    a = 0 would leave Phi == 1 beyond x = 1 and break admissibility, so it
    is rejected up front.  Cash behaviour of the induced premium is
    governed by p vs q: additive for p = q, subadditive for p > q,
    superadditive for p < q.
    """

    a: float
    b: float
    p: float
    q: float
    name: ClassVar[str] = "lpq"

    def __post_init__(self) -> None:
        if not (self.a > 0):
            raise ValueError(f"gain weight a must be positive, got {self.a!r}")
        if not (self.b >= 0):
            raise ValueError(f"loss weight b must be nonnegative, got {self.b!r}")
        if not (self.p >= 1 and self.q >= 1):
            raise ValueError(f"exponents must be >= 1, got p={self.p!r}, q={self.q!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x >= 1.0:
            return 1.0 + self.a * (x - 1.0) ** self.p
        return 1.0 - self.b * (1.0 - x) ** self.q

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        d = xs - 1.0
        return (
            1.0
            + self.a * np.maximum(d, 0.0) ** self.p
            - self.b * np.maximum(-d, 0.0) ** self.q
        )

    @property
    def at_zero(self) -> float:
        return 1.0 - self.b

    @property
    def convex_flag(self) -> Optional[bool]:
        if self.b == 0.0:
            return True
        return self.p == 1.0 and self.q == 1.0 and self.a >= self.b

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return self.convex_flag

    def spec_string(self) -> str:
        return f"lpq:{self.a!r},{self.b!r},{self.p!r},{self.q!r}"


@dataclass(frozen=True, repr=False)
class GeometricExpectile(OrliczFunction):
    """Phi(x) = 1 + a(log x)_+ - b(log x)_- with a > 0, b >= 0.

    The premium is exp of the a/(a+b)-expectile of log X (essential sup
    when b = 0).  GA-convex iff a >= b; never convex in the plain sense
    since the upper branch grows logarithmically.
    """

    a: float
    b: float
    name: ClassVar[str] = "gexpectile"

    def __post_init__(self) -> None:
        if not (self.a > 0):
            raise ValueError(f"gain weight a must be positive, got {self.a!r}")
        if not (self.b >= 0):
            raise ValueError(f"loss weight b must be nonnegative, got {self.b!r}")

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x >= 1.0:
            return 1.0 + self.a * math.log(x)
        if x == 0.0:
            return NEG_INF if self.b > 0 else 1.0
        return 1.0 - self.b * (-math.log(x)) if self.b > 0 else 1.0

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            lx = np.log(xs)
        out = 1.0 + self.a * np.maximum(lx, 0.0)
        if self.b > 0:
            out = out - self.b * np.maximum(-lx, 0.0)
        return out

    @property
    def at_zero(self) -> float:
        return NEG_INF if self.b > 0 else 1.0

    @property
    def convex_flag(self) -> Optional[bool]:
        return False

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        return self.a >= self.b

    def spec_string(self) -> str:
        return f"gexpectile:{self.a!r},{self.b!r}"


class PiecewiseLinear(OrliczFunction):
    """User-defined piecewise-linear function from ascending knots.

    points: sequence of (x, y) with x >= 0 ascending.  A repeated x value
    encodes a jump: the first y is the left limit (the function value, by
    left-continuity), the second the restart level just above x.  Beyond
    the last knot the final segment's slope is extended (flat after a
    terminal jump).  Below the first knot the function is constant.

    value_at_zero overrides Phi(0); it may be -inf.  upper caps the
    effective domain: Phi(x) = +inf for x > upper.

    No admissibility checking happens here; run validate() for that.
    Convexity flags come from a sampled midpoint test and may be None.
    """

    name: ClassVar[str] = "pwl"

    def __init__(
        self,
        points: Iterable[tuple[float, float]],
        value_at_zero: Optional[float] = None,
        upper: float = INF,
    ) -> None:
        pts = [(float(x), float(y)) for x, y in points]
        if not pts:
            raise ValueError("need at least one knot")
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        if any(x < 0 for x in xs):
            raise ValueError("knot locations must be nonnegative")
        if any(xs[i] > xs[i + 1] for i in range(len(xs) - 1)):
            raise ValueError("knot locations must be ascending")
        for x in set(xs):
            if xs.count(x) > 2:
                raise ValueError(f"more than one jump encoded at x={x!r}")
        if any(not math.isfinite(y) for y in ys):
            raise ValueError("knot values must be finite; use value_at_zero/upper for infinities")
        if not (upper >= xs[-1]):
            raise ValueError("upper must be at least the last knot location")
        self._kx = tuple(xs)
        self._ky = tuple(ys)
        self._upper = float(upper)
        if value_at_zero is None:
            self._at_zero = ys[0]
        else:
            if value_at_zero == INF:
                raise ValueError("Phi(0) may not be +inf")
            self._at_zero = float(value_at_zero)
        if len(xs) >= 2 and xs[-1] > xs[-2]:
            self._end_slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        else:
            self._end_slope = 0.0
        self._convex: Optional[bool] = None
        self._ga_convex: Optional[bool] = None
        self._flags_done = False

    @property
    def points(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self._kx, self._ky))

    def __call__(self, x: float) -> float:
        if x < 0:
            raise DomainError(f"negative input {x!r}")
        if x == 0.0:
            return self._at_zero
        if x > self._upper:
            return INF
        kx, ky = self._kx, self._ky
        i = bisect_left(kx, x)
        if i == len(kx):
            return ky[-1] + self._end_slope * (x - kx[-1])
        if kx[i] == x:
            return ky[i]  # first duplicate: the left limit
        if i == 0:
            return ky[0]
        x0, y0 = kx[i - 1], ky[i - 1]
        x1, y1 = kx[i], ky[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        flat = np.asarray(xs, dtype=float)
        out = np.fromiter((self(v) for v in flat.ravel()), dtype=float, count=flat.size)
        return out.reshape(flat.shape)

    @property
    def at_zero(self) -> float:
        return self._at_zero

    @property
    def upper(self) -> float:
        return self._upper

    def _sample_xs(self) -> list[float]:
        hi = min(self._upper, max(4.0, 2.0 * self._kx[-1] if self._kx[-1] > 0 else 4.0))
        lo = min(1e-3, *(x / 2.0 for x in self._kx if x > 0)) if any(
            x > 0 for x in self._kx
        ) else 1e-3
        grid = list(np.geomspace(lo, hi, 33))
        pts = sorted(set(grid) | {x for x in self._kx if 0 < x <= hi} | {1.0, hi})
        return pts

    def _run_midpoint_tests(self) -> None:
        """Sampled midpoint convexity tests; sets tri-state flags.

        A discovered violation is a certificate of failure.  A clean pass
        is reported as True only when the function is finite everywhere
        it was probed; with a finite upper cap the sweep cannot separate
        'convex' from 'jumps to +inf mid-chord', so the flag stays None.
        """
        xs = self._sample_xs()
        arith_pts = [0.0] + xs
        convex: Optional[bool] = True
        for i in range(len(arith_pts)):
            if convex is False:
                break
            for j in range(i + 1, len(arith_pts)):
                x1, x2 = arith_pts[i], arith_pts[j]
                v1 = self(x1)
                v2 = self(x2)
                if v1 == INF or v2 == INF:
                    continue  # chord ends at +inf: no constraint
                mid = self(0.5 * (x1 + x2))
                if mid == INF:
                    convex = False
                    break
                rhs = NEG_INF if (v1 == NEG_INF or v2 == NEG_INF) else 0.5 * (v1 + v2)
                if mid > rhs + MIDPOINT_TOL:
                    convex = False
                    break
        if convex and self._upper < INF:
            convex = None
        ga: Optional[bool] = True
        for i in range(len(xs)):
            if ga is False:
                break
            for j in range(i + 1, len(xs)):
                x1, x2 = xs[i], xs[j]
                v1, v2 = self(x1), self(x2)
                if v1 == INF or v2 == INF:
                    continue
                mid = self(math.sqrt(x1 * x2))
                if mid == INF:
                    ga = False
                    break
                if mid > 0.5 * (v1 + v2) + MIDPOINT_TOL:
                    ga = False
                    break
        if ga and self._upper < INF:
            ga = None
        self._convex = convex
        self._ga_convex = ga
        self._flags_done = True

    @property
    def convex_flag(self) -> Optional[bool]:
        if not self._flags_done:
            self._run_midpoint_tests()
        return self._convex

    @property
    def ga_convex_flag(self) -> Optional[bool]:
        if not self._flags_done:
            self._run_midpoint_tests()
        return self._ga_convex

    def spec_string(self) -> str:
        body = ";".join(f"{x!r},{y!r}" for x, y in zip(self._kx, self._ky))
        extra = ""
        if self._at_zero != self._ky[0]:
            extra += f";zero={self._at_zero!r}"
        if self._upper < INF:
            extra += f";upper={self._upper!r}"
        return f"pwl[{body}{extra}]"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One admissibility failure: which condition, where, what value."""

    condition: str
    x: float
    value: float


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]
    method: str


def validate(phi: OrliczFunction, grid_size: int = 64) -> ValidationReport:
    """Check the three admissibility conditions.

    Built-in families are admissible by construction (their parameter
    ranges enforce it) and short-circuit to a pass.  PiecewiseLinear is
    checked on a log-spaced grid plus every knot; left-continuity holds
    structurally for its representation.  Violations carry a witness x.
    """
    if grid_size < 16:
        raise ValueError(f"grid_size must be >= 16, got {grid_size}")
    if not isinstance(phi, PiecewiseLinear):
        return ValidationReport(ok=True, violations=(), method="analytic")

    bad: list[Violation] = []
    xs = _validation_grid(phi, grid_size)
    vals = [phi(x) for x in xs]

    if phi.at_zero == INF:
        bad.append(Violation("below_one_on_unit", 0.0, INF))
    elif phi.at_zero > 1.0 + 1e-12:
        bad.append(Violation("below_one_on_unit", 0.0, phi.at_zero))
    for x, v in zip(xs, vals):
        if v == NEG_INF and x > 0:
            bad.append(Violation("finite_on_positive", x, v))
        if x <= 1.0 and v > 1.0 + 1e-12:
            bad.append(Violation("below_one_on_unit", x, v))
        if x > 1.0 and v <= 1.0:
            bad.append(Violation("above_one_beyond_unit", x, v))

    prev_v = phi.at_zero
    for x, v in zip(xs, vals):
        if v < prev_v - 1e-12:
            bad.append(Violation("nondecreasing", x, v))
        prev_v = v

    return ValidationReport(ok=not bad, violations=tuple(bad), method="grid")


def _validation_grid(phi: PiecewiseLinear, grid_size: int) -> list[float]:
    kx = [x for x in phi._kx if x > 0]
    top = max(4.0, 2.0 * max(kx) if kx else 4.0)
    if phi.upper < INF:
        top = max(top, 2.0 * phi.upper)
    lo = min([1e-6] + [x / 2.0 for x in kx])
    grid = set(float(g) for g in np.geomspace(lo, top, grid_size))
    grid |= set(kx) | {1.0, top}
    # make sure the region just above 1 is probed
    grid |= {1.0 + d for d in (1e-6, 0.01, 0.1, 0.5)}
    return sorted(grid)


def is_convex(phi: OrliczFunction) -> Optional[bool]:
    """Tri-state convexity of Phi on [0, inf): True / False / None."""
    return phi.convex_flag


def is_ga_convex(phi: OrliczFunction) -> Optional[bool]:
    """Tri-state convexity of x -> Phi(exp(x)): True / False / None."""
    return phi.ga_convex_flag


# ---------------------------------------------------------------------------
# convex conjugate
# ---------------------------------------------------------------------------


def conjugate(phi: OrliczFunction, y: float, x_cap: float = 1e6) -> float:
    """Psi(y) = sup_{x >= 0} (x*y - Phi(x)) for convex phi and y >= 0.

    Closed forms cover Power(p >= 1), convex Expectile / LpQuantile, and
    LpqQuantile with p = q = 1; everything else runs a golden-section
    search over log x on (0, x_cap], plus the endpoint x = 0.  The
    supremum is reported as +inf when the objective at x_cap still
    exceeds the best interior value by more than 1 (linear growth).
    """
    if y < 0:
        raise DomainError(f"conjugate argument must be nonnegative, got {y!r}")
    if phi.convex_flag is not True:
        raise NotConvexError(
            f"conjugate needs certified convexity; flag is {phi.convex_flag!r} for {phi!r}"
        )
    if isinstance(phi, Power):
        if phi.p == 1.0:
            return 0.0 if y <= 1.0 else INF
        r = phi.p / (phi.p - 1.0)
        return (phi.p - 1.0) * (y / phi.p) ** r
    if isinstance(phi, Expectile):
        return _kinked_linear_conjugate(phi.alpha, 1.0 - phi.alpha, y)
    if isinstance(phi, LpQuantile) and phi.p == 1.0:
        return _kinked_linear_conjugate(phi.alpha, 1.0 - phi.alpha, y)
    if isinstance(phi, LpqQuantile) and phi.p == 1.0 and phi.q == 1.0:
        return _kinked_linear_conjugate(phi.a, phi.b, y)
    return _conjugate_numeric(phi, y, x_cap)


def _kinked_linear_conjugate(a: float, b: float, y: float) -> float:
    # Phi has slope b on [0,1] and a on [1,inf) with Phi(1) = 1, Phi(0) = 1-b
    if y > a:
        return INF
    if y >= b:
        return y - 1.0
    return b - 1.0


def _conjugate_numeric(phi: OrliczFunction, y: float, x_cap: float) -> float:
    from .search import golden_max

    def obj(x: float) -> float:
        v = phi(x)
        if v == INF:
            return NEG_INF
        return x * y - v

    xs = [0.0] + list(np.geomspace(1e-9, x_cap, 257))
    if isinstance(phi, PiecewiseLinear):
        xs.extend(x for x in phi._kx if 0 < x < x_cap)
        xs.sort()
    vals = [obj(x) for x in xs]
    best_inner = max(vals[:-1])
    if vals[-1] > best_inner + 1.0:
        return INF
    i = max(range(len(xs)), key=lambda k: (vals[k], -k))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, len(xs) - 1)]
    if lo > 0:
        _, v = golden_max(lambda t: obj(math.exp(t)), math.log(lo), math.log(hi), tol=1e-13)
    else:
        _, v = golden_max(obj, lo, hi, tol=1e-13)
    return max(v, vals[i])


def piecewise_linear_from_text(text: str) -> PiecewiseLinear:
    """Parse a piecewise-linear function from 'x,y' lines with ascending x.

    Blank lines and lines starting with '#' are skipped.  A row with
    x = 0 sets the value at zero (y may be -inf).  A final row whose y is
    inf caps the domain at its x (the function is +inf beyond).  A
    repeated x encodes a jump, exactly as in the constructor.
    """
    points: list[tuple[float, float]] = []
    value_at_zero: Optional[float] = None
    upper = INF
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'x,y' per line, got {raw!r}")
        try:
            x = float(parts[0])
            y = float(parts[1])
        except ValueError as exc:
            raise ValueError(f"non-numeric entry in line {raw!r}") from exc
        if x == 0.0:
            value_at_zero = y
        elif y == INF:
            upper = x
        else:
            points.append((x, y))
    if not points:
        raise ValueError("no finite breakpoints found")
    return PiecewiseLinear(points, value_at_zero=value_at_zero, upper=upper)


BUILTIN_FAMILIES = (
    GeometricMean,
    Power,
    QuantileStep,
    Expectile,
    LpQuantile,
    LpqQuantile,
    GeometricExpectile,
    PiecewiseLinear,
)
