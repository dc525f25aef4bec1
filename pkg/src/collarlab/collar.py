"""Closed-form hyperbolic collar geometry.

The model collar around a closed geodesic of length ``ell`` is the cylinder
(-X, X) x S^1 carrying the metric rho(s)^2 (ds^2 + dtheta^2) with

    X(ell) = (2*pi/ell) * (pi/2 - arctan(sinh(ell/2)))
    rho(s) = ell / (2*pi*cos(ell*s/(2*pi)))

This module holds the exact formulas: half-widths, the conformal factor,
thin-part thresholds X_delta, and the closed-form norms of the constant
differential dz^2.  No discretization happens here; everything is a scalar
(or vectorized-over-s) special-function evaluation.

Angle products such as ell*s/(2*pi) are evaluated with a compensated
double-double product so composed identities like rho(X_delta) survive to
~1e-13 relative even at ell = 1e-3, where cos() sits very close to zero.
"""

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
PI_SQ = math.pi * math.pi

#: Injectivity-radius cap of the collar description, arsinh(1).
DELTA_MAX = math.asinh(1.0)

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitter


def _two_prod(a, b):
    """Exact product a*b = p + err (Dekker/Veltkamp, no FMA required)."""
    p = a * b
    c = _SPLIT * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLIT * b
    bhi = c - (c - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _angle(ell, s):
    """ell*s/(2*pi) as a head/tail pair, accurate to ~1 ulp of the head."""
    hi, lo = _two_prod(ell, s)
    q = hi / TWO_PI
    mh, ml = _two_prod(q, TWO_PI)
    e = (((hi - mh) - ml) + lo) / TWO_PI
    return q, e


def _cos_angle(ell, s):
    """cos(ell*s/(2*pi)) with the compensated angle."""
    q, e = _angle(ell, s)
    return np.cos(q) - e * np.sin(q)


def _div_dd(num_hi, num_lo, den):
    """Correctly-rounded-ish (num_hi + num_lo)/den."""
    q = num_hi / den
    mh, ml = _two_prod(q, den)
    r = (((num_hi - mh) - ml) + num_lo) / den
    return q + r


def half_width(ell: float) -> float:
    """Half-width X(ell) of the collar around a geodesic of length ell.

    Uses the subtraction-free form (2*pi/ell)*arctan(1/sinh(ell/2)).
    """
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    c = math.atan(1.0 / math.sinh(0.5 * ell))
    hi, lo = _two_prod(TWO_PI, c)
    return _div_dd(hi, lo, ell)


def conformal_factor(ell: float, s):
    """Conformal factor rho(s) = ell/(2*pi*cos(ell*s/(2*pi))).

    Vectorized over s.  Requires |s| < pi^2/ell so the cosine argument stays
    inside (-pi/2, pi/2); rho is even in s and increases with |s|.
    """
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    s_arr = np.asarray(s, dtype=float)
    if np.any(np.abs(s_arr) >= PI_SQ / ell):
        raise ValueError(f"collar coordinate out of range: need |s| < pi^2/ell = {PI_SQ / ell}")
    rho = ell / (TWO_PI * _cos_angle(ell, s_arr))
    return float(rho) if np.isscalar(s) or np.ndim(s) == 0 else rho


def rho_prime(ell: float, s):
    """d(rho)/ds = (ell/2pi)^2 sec(u) tan(u), u = ell*s/(2pi).  Vectorized over s."""
    s_arr = np.asarray(s, dtype=float)
    u = ell * s_arr / TWO_PI
    k = ell / TWO_PI
    val = k * k * np.tan(u) / np.cos(u)
    return float(val) if np.ndim(s) == 0 else val


@dataclass(frozen=True)
class ThinPart:
    """Threshold of the delta-thin subcylinder |s| < x_delta.

    ``empty`` marks delta <= ell/2 (no thin part); ``outside_regime`` marks
    delta >= arsinh(1), where x_delta is clamped to the full half-width and
    the collar description no longer certifies the value.
    """

    delta: float
    x_delta: float
    empty: bool = False
    outside_regime: bool = False


def thin_threshold(ell: float, delta: float) -> ThinPart:
    """Thin-part threshold X_delta(ell).

    For delta in (ell/2, arsinh(1)) this is
    (2*pi/ell) * arccos(sinh(ell/2)/sinh(delta)); the arccos form avoids the
    cancellation in pi/2 - arcsin near the boundary delta -> ell/2.
    """
    if ell <= 0.0:
        raise ValueError(f"geodesic length must be positive, got {ell}")
    if delta <= 0.0:
        raise ValueError(f"injectivity-radius bound must be positive, got {delta}")
    if delta <= 0.5 * ell:
        return ThinPart(delta=delta, x_delta=0.0, empty=True)
    if delta >= DELTA_MAX:
        return ThinPart(delta=delta, x_delta=half_width(ell), outside_regime=True)
    q = math.sinh(0.5 * ell) / math.sinh(delta)
    c = math.acos(q)
    hi, lo = _two_prod(TWO_PI, c)
    return ThinPart(delta=delta, x_delta=_div_dd(hi, lo, ell))


def rho_at_thin_edge(ell: float, delta: float) -> float:
    """Closed form rho(X_delta) = ell*sinh(delta)/(2*pi*sinh(ell/2))."""
    return ell * math.sinh(delta) / (TWO_PI * math.sinh(0.5 * ell))


def rho_inv_integral(ell: float, a: float, b: float) -> float:
    """Closed form of the antiderivative: int_a^b rho(s)^-1 ds."""
    k = TWO_PI / ell
    return k * k * (math.sin(b / k) - math.sin(a / k))


def rho_inv_sq_integral(ell: float, a: float, b: float) -> float:
    """Closed form of int_a^b rho(s)^-2 ds."""
    k = TWO_PI / ell

    def anti(s):
        u = s / k
        return 0.5 * (u + math.sin(u) * math.cos(u))

    return k ** 3 * (anti(b) - anti(a))


@dataclass(frozen=True)
class Dz2Norms:
    """Pointwise and integral sizes of the constant differential dz^2."""

    l1: float
    l2: float
    l2_squared: float

    def pointwise(self, ell: float, s):
        rho = conformal_factor(ell, s)
        return 2.0 / rho ** 2 if np.ndim(s) == 0 else 2.0 / np.asarray(rho) ** 2


def dz2_norms(ell: float) -> Dz2Norms:
    """Metric norms of dz^2 on the full collar.

    Pointwise |dz^2| = 2*rho^-2, L1 norm 8*pi*X(ell), and squared L2 norm
    8*pi*(2*pi/ell)^3*(U + sin U cos U) with U = ell*X/(2*pi); the latter
    grows like ell^-3 as the geodesic shrinks.
    """
    X = half_width(ell)
    l1 = 8.0 * math.pi * X
    l2sq = 8.0 * math.pi * rho_inv_sq_integral(ell, -X, X)
    return Dz2Norms(l1=l1, l2=math.sqrt(l2sq), l2_squared=l2sq)


@dataclass(frozen=True)
class CollarParams:
    """The model collar: geodesic length, half-width, and regime cap."""

    ell: float
    X: float
    delta_max: float = field(default=DELTA_MAX)

    def __post_init__(self):
        if self.ell <= 0.0:
            raise ValueError(f"geodesic length must be positive, got {self.ell}")
        expected = half_width(self.ell)
        if not math.isclose(self.X, expected, rel_tol=1e-12):
            raise ValueError(f"inconsistent half-width: got {self.X}, formula gives {expected}")
        if not self.X < PI_SQ / self.ell:
            raise ValueError("half-width must stay below pi^2/ell")

    @classmethod
    def from_length(cls, ell: float) -> "CollarParams":
        return cls(ell=float(ell), X=half_width(ell))

    @property
    def in_estimate_regime(self) -> bool:
        """Whether ell <= 2*arsinh(1), the range the collar sweeps assume."""
        return self.ell <= 2.0 * DELTA_MAX

    def rho(self, s):
        return conformal_factor(self.ell, s)

    def thin(self, delta: float) -> ThinPart:
        return thin_threshold(self.ell, delta)
