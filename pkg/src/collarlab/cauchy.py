"""Rectangle-averaged Cauchy reconstruction on the collar cylinder.

For a point z0 = (s0, theta0) the rectangle family is

    Omega_b(z0) = z0 + [-r, r] x [-(r + b), r + b],   r = rho(s0)^(-1/2)

and the inhomogeneous Cauchy formula splits 2*pi*i*psi(z0) into the area
integral I_Omega of dbar(psi)/(z - z0) plus four boundary line integrals
I_V^+-, I_H^+- taken counterclockwise.  The field is evaluated through its
2*pi-periodic extension in theta, so rectangles taller than one period wrap
around the cylinder.

The singular factor 1/(z - z0) is handled by subtract-and-correct: on the
grid cell centered at z0 the integrand is replaced by
(F(z) - F(z0))/(z - z0), whose correction term integrates to zero exactly by
the symmetry of the cell.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .collar import CollarParams, conformal_factor, rho_prime, thin_threshold
from .fields import QDOnCollar, dbar

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=8)
def _gauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _composite(a: float, b: float, max_len: float, p: int):
    """Composite Gauss points/weights on [a, b] with panels <= max_len."""
    n = max(1, int(math.ceil((b - a) / max_len)))
    edges = np.linspace(a, b, n + 1)
    x, w = _gauss(p)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts


@dataclass(frozen=True)
class RectangleSpec:
    """One member of the rectangle family around z0 = (s0, theta0)."""

    s0: float
    theta0: float
    b: float
    rho0: float      # rho(s0)
    half_s: float    # r = rho(s0)^(-1/2), horizontal half-side
    v_half: float    # r + b, vertical half-side
    h_minus: float   # s0 - r
    h_plus: float    # s0 + r

    @property
    def n_wraps(self) -> int:
        """Number of 2*pi periods the theta-extent covers."""
        return int(math.ceil(self.v_half / math.pi))

    @property
    def image_count(self) -> int:
        """N(s0) = floor(r / 2*pi), the periodic-image count per half side."""
        return int(self.half_s / TWO_PI)


def rectangle_at(collar: CollarParams, z0: tuple[float, float], b: float) -> RectangleSpec:
    """Rectangle geometry at z0; no thin-part requirement."""
    if not 0.0 <= b <= TWO_PI:
        raise ValueError(f"vertical padding must lie in [0, 2*pi], got {b}")
    s0, theta0 = float(z0[0]), float(z0[1])
    rho0 = conformal_factor(collar.ell, s0)
    r = rho0 ** -0.5
    return RectangleSpec(s0=s0, theta0=theta0, b=b, rho0=rho0, half_s=r,
                         v_half=r + b, h_minus=s0 - r, h_plus=s0 + r)


def make_rectangle(collar: CollarParams, z0: tuple[float, float], b: float,
                   delta0: float = 0.1) -> RectangleSpec:
    """Validated rectangle: z0 must lie in the delta0-thin part of the collar."""
    tp = thin_threshold(collar.ell, delta0)
    if tp.empty or abs(z0[0]) > tp.x_delta:
        raise ValueError(
            f"z0 with s = {z0[0]} is not in the {delta0}-thin part "
            f"(threshold {tp.x_delta if not tp.empty else 0.0})"
        )
    return rectangle_at(collar, z0, b)


@dataclass(frozen=True)
class CauchyBreakdown:
    """The five integrals of one rectangle; their sum is 2*pi*i*psi(z0)."""

    i_omega: complex
    i_v_plus: complex
    i_v_minus: complex
    i_h_plus: complex
    i_h_minus: complex

    @property
    def total(self) -> complex:
        return self.i_omega + self.i_v_plus + self.i_v_minus + self.i_h_plus + self.i_h_minus

    @property
    def reconstructed(self) -> complex:
        return self.total / (2j * math.pi)


def _check_support(psi: QDOnCollar, rect: RectangleSpec):
    lo, hi = psi.support
    if rect.h_minus < lo or rect.h_plus > hi:
        raise ValueError(
            f"rectangle s-range ({rect.h_minus:.4g}, {rect.h_plus:.4g}) exceeds "
            f"grid support ({lo:.4g}, {hi:.4g})"
        )


def _graded_breaks(eta: float, half: float, h: float) -> list[float]:
    """Panel edges from eta out to half, doubling in size up to h."""
    edges = [eta]
    w = 2.0 * eta
    while edges[-1] + 1.5 * w < half:
        edges.append(edges[-1] + w)
        w = min(2.0 * w, h)
    edges.append(half)
    return edges


def _graded_axis(c: float, half: float, h: float, eta: float, p: int):
    """Quadrature points/weights on [c-half, c+half] graded toward the core cell.

    Returns (points, weights, core_mask); the core cell [c-eta, c+eta] is a
    single symmetric panel so the odd kernel integrates to zero over it.
    """
    x, w = _gauss(p)
    pts, wts, core = [], [], []
    left = [c - e for e in reversed(_graded_breaks(eta, half, h))]
    right = [c + e for e in _graded_breaks(eta, half, h)]
    for edges in (left, right):
        for a, b_ in zip(edges[:-1], edges[1:]):
            mid, hw = 0.5 * (a + b_), 0.5 * (b_ - a)
            pts.append(mid + hw * x)
            wts.append(hw * w)
            core.append(np.zeros(p, dtype=bool))
    pts.append(c + eta * x)
    wts.append(eta * w)
    core.append(np.ones(p, dtype=bool))
    return np.concatenate(pts), np.concatenate(wts), np.concatenate(core)


def _area_integral(dpsi: QDOnCollar, rect: RectangleSpec, h_s: float, h_t: float, p: int) -> complex:
    """I_Omega = int_Omega dbar(psi)/(z - z0) dz ^ dzbar, singular cell subtracted.

    Around the center cell the panels are geometrically graded so the 1/(z-z0)
    kernel stays well resolved panel by panel; the field itself is evaluated
    on the tensor grid in one pass.
    """
    s0, t0 = rect.s0, rect.theta0
    r, v = rect.half_s, rect.v_half
    eta = min(0.125 * h_s, 0.125 * h_t, 0.5 * r, 0.5 * v)
    s_pts, s_wts, s_core = _graded_axis(s0, r, h_s, eta, p)
    t_pts, t_wts, t_core = _graded_axis(t0, v, h_t, eta, p)
    F = dpsi.field.values(s=s_pts, thetas=t_pts)  # (ns, nt)
    f0 = dpsi.field.evaluate(s0, t0)
    Z = (s_pts[:, None] - s0) + 1j * (t_pts[None, :] - t0)
    W = np.outer(s_wts, t_wts)
    core = np.outer(s_core, t_core)
    return -2j * np.sum(W * np.where(core, F - f0, F) / Z)


def _vertical_integral(psi: QDOnCollar, rect: RectangleSpec, sign: int,
                       h_line: float, p: int) -> complex:
    """I_V^sign = sign*i * int psi(h^sign(s0), theta)/(sign*r + i(theta - theta0))."""
    s_edge = rect.h_plus if sign > 0 else rect.h_minus
    t0, v = rect.theta0, rect.v_half
    # split at period seams theta0 + 2*pi*k, then cap the panel length
    seams = [t0 - v]
    k0 = math.ceil((-v) / TWO_PI)
    while k0 * TWO_PI < v:
        if -v < k0 * TWO_PI:
            seams.append(t0 + k0 * TWO_PI)
        k0 += 1
    seams.append(t0 + v)
    total = 0.0 + 0.0j
    for a, b_ in zip(seams[:-1], seams[1:]):
        pts, wts = _composite(a, b_, h_line, p)
        vals = psi.field.evaluate(np.full_like(pts, s_edge), pts)
        total += np.sum(wts * vals / (sign * rect.half_s + 1j * (pts - t0)))
    return sign * 1j * total


def _horizontal_integral(psi: QDOnCollar, rect: RectangleSpec, sign: int,
                         h_line: float, p: int) -> complex:
    """I_H^sign = -sign * int psi(s, theta0 + sign*v)/((s - s0) + sign*i*v) ds."""
    t_edge = rect.theta0 + sign * rect.v_half
    pts, wts = _composite(rect.h_minus, rect.h_plus, h_line, p)
    vals = psi.field.evaluate(pts, np.full_like(pts, t_edge))
    total = np.sum(wts * vals / ((pts - rect.s0) + sign * 1j * rect.v_half))
    return -sign * total


def _step_sizes(psi: QDOnCollar, resolution: float):
    n = max(psi.field.max_mode, 1)
    h_s = 0.75 / resolution
    h_t = min(0.75, 6.0 / n) / resolution
    h_line = min(0.6, 8.0 / n) / resolution
    return h_s, h_t, h_line


def cauchy_reconstruct(psi: QDOnCollar, z0: tuple[float, float], b: float,
                       resolution: float = 1.0, p: int = 8, p_line: int = 12,
                       dpsi: QDOnCollar | None = None) -> CauchyBreakdown:
    """All five integrals of the rectangle at (z0, b).

    ``resolution`` scales panel counts in every direction; pass a precomputed
    ``dpsi = dbar(psi)`` when reconstructing the same field at many points.
    """
    rect = rectangle_at(psi.collar, z0, b)
    _check_support(psi, rect)
    if dpsi is None:
        dpsi = dbar(psi)
    h_s, h_t, h_line = _step_sizes(psi, resolution)
    return CauchyBreakdown(
        i_omega=_area_integral(dpsi, rect, h_s, h_t, p),
        i_v_plus=_vertical_integral(psi, rect, +1, h_line, p_line),
        i_v_minus=_vertical_integral(psi, rect, -1, h_line, p_line),
        i_h_plus=_horizontal_integral(psi, rect, +1, h_line, p_line),
        i_h_minus=_horizontal_integral(psi, rect, -1, h_line, p_line),
    )


def averaged_breakdown(psi: QDOnCollar, z0: tuple[float, float], n_b: int = 16,
                       resolution: float = 1.0) -> CauchyBreakdown:
    """Component-wise mean over b in [0, 2*pi] (midpoint rule, n_b nodes)."""
    dpsi = dbar(psi)
    parts = np.zeros(5, dtype=complex)
    for i in range(n_b):
        b = (i + 0.5) * TWO_PI / n_b
        br = cauchy_reconstruct(psi, z0, b, resolution=resolution, dpsi=dpsi)
        parts += np.array([br.i_omega, br.i_v_plus, br.i_v_minus, br.i_h_plus, br.i_h_minus])
    parts /= n_b
    return CauchyBreakdown(*parts)


def averaged_reconstruct(psi: QDOnCollar, z0: tuple[float, float], n_b: int = 16,
                         resolution: float = 1.0) -> complex:
    """Mean over b of the five-term sum; equals 2*pi*i*psi(z0) up to quadrature."""
    return averaged_breakdown(psi, z0, n_b=n_b, resolution=resolution).total


def mean_value_kernel_gap(rect: RectangleSpec, k: int, n: int = 512) -> float:
    """sup over the k-th period segment of |1/(z - z0) - 1/(r + 2*pi*i*k)|.

    The segment is the vertical edge piece theta - theta0 in [2*pi*k, 2*pi*(k+1)];
    the gap is bounded by 2*pi*rho(s0).
    """
    t = np.linspace(TWO_PI * k, TWO_PI * (k + 1), n)
    z = rect.half_s + 1j * t
    ref = rect.half_s + TWO_PI * 1j * k
    return float(np.max(np.abs(1.0 / z - 1.0 / ref)))


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_constant: float
    worst_point: dict
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "max_constant": self.max_constant,
                "worst_point": self.worst_point, "pass": self.passed}


@dataclass(frozen=True)
class RemarkReport:
    """Geometric sanity report for the rectangle family on one collar."""

    ell: float
    delta0: float
    empty: bool
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"ell": self.ell, "delta0": self.delta0, "empty": self.empty,
                "pass": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _h_plus(collar, s):
    return s + conformal_factor(collar.ell, s) ** -0.5


def _h_minus(collar, s):
    return s - conformal_factor(collar.ell, s) ** -0.5


def remark_checks(collar: CollarParams, delta0: float = 0.1, n_delta: int = 8,
                  n_sample: int = 96, comparability_bound: float = 2.0,
                  inverse_gap_bound: float = 3.0) -> RemarkReport:
    """Containment, rho-comparability, and h^± invertibility over the thin part.

    Always returns a report; an empty delta0-thin part yields empty=True with
    no checks (vacuously passing).
    """
    tp0 = thin_threshold(collar.ell, delta0)
    if tp0.empty or tp0.x_delta == 0.0:
        return RemarkReport(ell=collar.ell, delta0=delta0, empty=True, checks=())
    checks = []

    # (i) containment: rectangles at z0 in the delta-thin part stay in the 2*delta-thin part
    worst = (0.0, None)
    deltas = np.linspace(0.5 * collar.ell * 1.02, delta0, n_delta + 1)[1:]
    for d in deltas:
        tp = thin_threshold(collar.ell, d)
        if tp.empty or tp.x_delta == 0.0:
            continue
        x2 = thin_threshold(collar.ell, 2 * d).x_delta
        s0 = np.linspace(0.0, tp.x_delta, n_sample)
        reach = np.max(s0 + conformal_factor(collar.ell, s0) ** -0.5)
        ratio = reach / x2
        if ratio > worst[0]:
            worst = (ratio, {"delta": float(d), "s0": float(s0[np.argmax(
                s0 + conformal_factor(collar.ell, s0) ** -0.5)])})
    checks.append(CheckResult("containment", worst[0], worst[1] or {}, worst[0] <= 1.0))

    # (ii) rho-comparability over the rectangle
    s0 = np.linspace(-tp0.x_delta, tp0.x_delta, 2 * n_sample)
    r = conformal_factor(collar.ell, s0) ** -0.5
    c_max, c_arg = 0.0, {}
    for si, ri in zip(s0, r):
        span = np.array([si - ri, si, si + ri])
        if si - ri < 0.0 < si + ri:
            span = np.append(span, 0.0)
        rho_span = conformal_factor(collar.ell, span)
        rho_c = conformal_factor(collar.ell, si)
        c_here = max(np.max(rho_span) / rho_c, rho_c / np.min(rho_span))
        if c_here > c_max:
            c_max, c_arg = c_here, {"s0": float(si)}
    checks.append(CheckResult("rho_comparability", c_max, c_arg, c_max <= comparability_bound))

    # (iii) h^± slopes near one ...
    dr = rho_prime(collar.ell, s0)
    rho_s = conformal_factor(collar.ell, s0)
    d_half = -0.5 * rho_s ** -1.5 * dr  # (rho^(-1/2))'
    dev = np.max(np.maximum(np.abs(d_half), np.abs(-d_half)))
    i_worst = int(np.argmax(np.abs(d_half)))
    checks.append(CheckResult("h_derivative_deviation", float(dev),
                              {"s0": float(s0[i_worst])}, dev <= 0.5))

    # ... and the inverse gap (h^-)^(-1) - (h^+)^(-1) <= bound * rho^(-1/2)
    lo_dom = -0.999 * collar.X
    hi_dom = 0.999 * collar.X
    gap_max, gap_arg = 0.0, {}
    for si in np.linspace(-tp0.x_delta, tp0.x_delta, n_sample):
        y = brentq(lambda t: _h_minus(collar, t) - si, si, hi_dom)
        wv = brentq(lambda t: _h_plus(collar, t) - si, lo_dom, si)
        ratio = (y - wv) / conformal_factor(collar.ell, si) ** -0.5
        if ratio > gap_max:
            gap_max, gap_arg = ratio, {"s": float(si)}
    checks.append(CheckResult("inverse_gap", gap_max, gap_arg, gap_max <= inverse_gap_bound))

    # harmonic-sum comparison against log(1/rho) over rectangle s-ranges
    h_max, h_arg = 0.0, {}
    for si, ri in zip(s0, r):
        n_img = int(ri / TWO_PI)
        hsum = 1.0 + np.sum(1.0 / np.arange(1, n_img + 2))
        span = np.array([si - ri, si, si + ri])
        ratio = hsum / np.min(np.log(1.0 / conformal_factor(collar.ell, span)))
        if ratio > h_max:
            h_max, h_arg = ratio, {"s0": float(si)}
    checks.append(CheckResult("harmonic_log_bound", h_max, h_arg, h_max <= 2.0))

    return RemarkReport(ell=collar.ell, delta0=delta0, empty=False, checks=tuple(checks))
