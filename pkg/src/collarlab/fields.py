"""Spectral quadratic differentials on a collar.

A field psi(s, theta) = sum_n c_n(s) e^{i n theta} is stored as one complex
coefficient row per Fourier mode, sampled on a Gauss-Legendre grid in s.
Operations provided here are the calculus used everywhere else: the
antiholomorphic derivative, metric L1/L2 norms, circle means alpha(s), the
projection that removes the dz^2 component, and the principal/collar-decay
split of holomorphic fields.

Row n may carry a linear exponential gauge g_n: the represented coefficient
is coeffs[n](s) * exp(g_n * s).  Holomorphic rows b_n e^{n s} become exact
constants in gauge g_n = n, which keeps long-collar extensions both
representable (e^{n X} overflows doubles once n*X > ~709) and exactly
annihilated by the derivative.  Pointwise evaluation rescales by the largest
exponent per node, so anything whose true value fits in a double is computed
without intermediate overflow.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .collar import CollarParams, conformal_factor, thin_threshold

#: abs(n)*S beyond which holomorphic rows switch to the gauged representation.
LOG_DOMAIN_THRESHOLD = 300.0


@lru_cache(maxsize=16)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """Barycentric weights via log-magnitude products (overflow-safe)."""
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    logw = -np.sum(np.log(np.abs(diff)), axis=1)
    sign = np.where(np.sum(diff < 0, axis=1) % 2 == 0, 1.0, -1.0)
    logw -= logw.max()
    return sign * np.exp(logw)


@lru_cache(maxsize=16)
def _reference_diff_matrix(n: int) -> np.ndarray:
    """First-derivative collocation matrix on the n-point Gauss grid of [-1, 1]."""
    x, _ = _gauss_legendre(n)
    w = _barycentric_weights(x)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    D = (w[None, :] / w[:, None]) / dx
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))  # rows kill constants exactly
    D.setflags(write=False)
    return D


def interpolation_matrix(nodes: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Barycentric interpolation matrix from grid nodes to arbitrary targets."""
    w = _barycentric_weights(nodes)
    d = targets[:, None] - nodes[None, :]
    exact = np.isclose(d, 0.0, atol=0.0)
    d = np.where(exact, 1.0, d)
    M = w[None, :] / d
    M /= M.sum(axis=1)[:, None]
    hit_rows = exact.any(axis=1)
    if np.any(hit_rows):
        M[hit_rows] = 0.0
        M[np.where(exact)] = 1.0
    return M


@dataclass(frozen=True)
class SpectralField:
    """Fourier-in-theta field with coefficient rows on a Gauss s-grid."""

    s_nodes: np.ndarray   # (J,) strictly increasing
    s_weights: np.ndarray  # (J,) positive quadrature weights
    modes: np.ndarray      # (M,) integers, typically -N..N
    coeffs: np.ndarray     # complex (M, J)
    gauges: np.ndarray     # (M,) real; row n represents coeffs[n]*exp(gauges[n]*s)

    def __post_init__(self):
        object.__setattr__(self, "s_nodes", np.asarray(self.s_nodes, dtype=float))
        object.__setattr__(self, "s_weights", np.asarray(self.s_weights, dtype=float))
        object.__setattr__(self, "modes", np.asarray(self.modes, dtype=int))
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex))
        g = np.zeros(len(self.modes)) if self.gauges is None else np.asarray(self.gauges, dtype=float)
        object.__setattr__(self, "gauges", g)
        if np.any(np.diff(self.s_nodes) <= 0):
            raise ValueError("s grid must be strictly increasing")
        if np.any(self.s_weights <= 0):
            raise ValueError("quadrature weights must be positive")
        if self.coeffs.shape != (len(self.modes), len(self.s_nodes)):
            raise ValueError(
                f"coefficient matrix shape {self.coeffs.shape} does not match "
                f"{len(self.modes)} modes x {len(self.s_nodes)} nodes"
            )
        if self.gauges.shape != (len(self.modes),):
            raise ValueError("one gauge entry per mode required")

    @property
    def n_nodes(self) -> int:
        return len(self.s_nodes)

    @property
    def max_mode(self) -> int:
        return int(np.max(np.abs(self.modes))) if len(self.modes) else 0

    @property
    def is_gauged(self) -> bool:
        return bool(np.any(self.gauges != 0.0))

    def theta_collocation(self, k: int | None = None) -> np.ndarray:
        k = k if k is not None else 4 * self.max_mode + 4
        return np.arange(k) * (2 * math.pi / k)

    def coeff_rows(self, s: np.ndarray | None = None) -> np.ndarray:
        """Materialized coefficients c_n(s) including the gauge factor.

        Raises on exponent overflow; gauged rows with n*s beyond double range
        have no plain materialization.
        """
        if s is None:
            s = self.s_nodes
            rows = self.coeffs
        else:
            s = np.asarray(s, dtype=float)
            rows = self.coeffs @ interpolation_matrix(self.s_nodes, s).T
        if not self.is_gauged:
            return rows
        expo = self.gauges[:, None] * s[None, :]
        if np.max(expo) > 700.0:
            raise OverflowError(
                "gauged coefficients exceed double range; use the scaled evaluators"
            )
        return rows * np.exp(expo)

    def values(self, s: np.ndarray | None = None, thetas: np.ndarray | None = None) -> np.ndarray:
        """psi sampled on the tensor grid s x thetas, shape (len(s), len(thetas))."""
        thetas = self.theta_collocation() if thetas is None else np.asarray(thetas, dtype=float)
        rows = self.coeff_rows(s)
        phases = np.exp(1j * np.outer(self.modes, thetas))  # (M, K)
        return rows.T @ phases

    def scaled_values(self, s: np.ndarray | None = None, thetas: np.ndarray | None = None):
        """(values, log_scale): psi = values * exp(log_scale[:, None]).

        Per-node rescaling by the largest gauge exponent, so gauged fields are
        evaluated without intermediate overflow.
        """
        if s is None:
            s = self.s_nodes
            rows = self.coeffs
        else:
            s = np.asarray(s, dtype=float)
            rows = self.coeffs @ interpolation_matrix(self.s_nodes, s).T
        thetas = self.theta_collocation() if thetas is None else np.asarray(thetas, dtype=float)
        if not self.is_gauged:
            phases = np.exp(1j * np.outer(self.modes, thetas))
            return rows.T @ phases, np.zeros(len(s))
        expo = self.gauges[:, None] * s[None, :]  # (M, J)
        log_scale = expo.max(axis=0)
        scaled_rows = rows * np.exp(expo - log_scale[None, :])
        phases = np.exp(1j * np.outer(self.modes, thetas))
        return scaled_rows.T @ phases, log_scale

    def evaluate(self, s, theta):
        """Pointwise psi(s, theta) for broadcastable coordinate arrays."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        t_arr = np.atleast_1d(np.asarray(theta, dtype=float))
        s_flat, t_flat = np.broadcast_arrays(s_arr, t_arr)
        shape = s_flat.shape
        rows = self.coeffs @ interpolation_matrix(self.s_nodes, s_flat.ravel()).T  # (M, P)
        if self.is_gauged:
            expo = self.gauges[:, None] * s_flat.ravel()[None, :]
            if np.max(expo) > 700.0:
                raise OverflowError("field value exceeds double range")
            rows = rows * np.exp(expo)
        vals = np.sum(rows * np.exp(1j * np.outer(self.modes, t_flat.ravel())), axis=0)
        if np.ndim(s) == 0 and np.ndim(theta) == 0:
            return complex(vals[0])
        return vals.reshape(shape)

    @classmethod
    def from_samples(cls, s_nodes, s_weights, samples: np.ndarray, n_modes: int) -> "SpectralField":
        """Build from point samples psi(s_j, theta_k) on equispaced theta (DFT in theta)."""
        samples = np.asarray(samples, dtype=complex)
        k = samples.shape[1]
        if k < 2 * n_modes + 1:
            raise ValueError(f"{k} collocation angles cannot resolve modes up to {n_modes}")
        spec = np.fft.fft(samples, axis=1) / k  # (J, K), mode q at index q mod K
        modes = np.arange(-n_modes, n_modes + 1)
        coeffs = spec[:, modes % k].T
        return cls(s_nodes=s_nodes, s_weights=s_weights, modes=modes, coeffs=coeffs, gauges=None)


@dataclass(frozen=True)
class QDOnCollar:
    """A spectral field bound to its model collar."""

    field: SpectralField
    collar: CollarParams

    def __post_init__(self):
        X = self.collar.X
        nodes = self.field.s_nodes
        if nodes[0] <= -X or nodes[-1] >= X:
            raise ValueError("field grid must lie strictly inside (-X, X)")

    @property
    def support(self) -> tuple[float, float]:
        return float(self.field.s_nodes[0]), float(self.field.s_nodes[-1])


def collar_gauss_grid(collar: CollarParams, n_nodes: int, edge_delta: float | None = None):
    """Gauss-Legendre nodes/weights on [-S, S].

    S is the full half-width by default (Gauss nodes are interior, so the
    open-cylinder domain is respected); pass edge_delta to stop the grid at
    the delta-thin threshold instead.
    """
    if edge_delta is None:
        S = collar.X
    else:
        tp = thin_threshold(collar.ell, edge_delta)
        if tp.empty:
            raise ValueError(f"edge margin delta={edge_delta} gives an empty grid")
        S = tp.x_delta
    x, w = _gauss_legendre(n_nodes)
    return S * x, S * w, S


def make_field(collar: CollarParams, coeff_fns: dict[int, callable], n_modes: int | None = None,
               n_nodes: int = 512, edge_delta: float | None = None) -> QDOnCollar:
    """Field from per-mode coefficient functions c_n(s) (vectorized callables)."""
    s, w, _ = collar_gauss_grid(collar, n_nodes, edge_delta)
    if n_modes is None:
        n_modes = max(abs(n) for n in coeff_fns) if coeff_fns else 0
    modes = np.arange(-n_modes, n_modes + 1)
    coeffs = np.zeros((len(modes), n_nodes), dtype=complex)
    for n, fn in coeff_fns.items():
        if abs(n) > n_modes:
            raise ValueError(f"mode {n} outside the requested range +-{n_modes}")
        coeffs[n + n_modes] = fn(s)
    field = SpectralField(s_nodes=s, s_weights=w, modes=modes, coeffs=coeffs, gauges=None)
    return QDOnCollar(field=field, collar=collar)


def dz2_field(collar: CollarParams, n_nodes: int = 512, n_modes: int = 0,
              edge_delta: float | None = None) -> QDOnCollar:
    """The constant differential dz^2 itself (c_0 = 1)."""
    return make_field(collar, {0: lambda s: np.ones_like(s)}, n_modes=n_modes,
                      n_nodes=n_nodes, edge_delta=edge_delta)


def holomorphic_extend(b: dict[int, complex], collar: CollarParams, n_nodes: int = 512,
                       edge_delta: float | None = None, n_modes: int | None = None,
                       log_threshold: float = LOG_DOMAIN_THRESHOLD) -> QDOnCollar:
    """Holomorphic field sum_n b_n e^{n s} e^{i n theta} dz^2.

    Rows with |n|*S <= log_threshold are stored plainly, which requires
    enough nodes to resolve the boundary layer of e^{n s} (roughly one node
    per unit of |n|*S); beyond the threshold the row is stored as the
    constant b_n in gauge g = n, which is exact at any resolution.
    """
    s, w, S = collar_gauss_grid(collar, n_nodes, edge_delta)
    if n_modes is None:
        n_modes = max((abs(n) for n in b), default=0)
    modes = np.arange(-n_modes, n_modes + 1)
    coeffs = np.zeros((len(modes), n_nodes), dtype=complex)
    gauges = np.zeros(len(modes))
    for n, bn in b.items():
        if abs(n) > n_modes:
            raise ValueError(f"mode {n} outside the requested range +-{n_modes}")
        scale = abs(n) * S
        if scale <= log_threshold:
            if n_nodes < 1.15 * scale + 16:
                raise ValueError(
                    f"{n_nodes} nodes cannot resolve e^{{{n}s}} on |s| <= {S:.3g}; "
                    f"need ~{int(1.15 * scale + 16)} or the log-domain path"
                )
            coeffs[n + n_modes] = bn * np.exp(n * s)
        else:
            coeffs[n + n_modes] = bn
            gauges[n + n_modes] = float(n)
    field = SpectralField(s_nodes=s, s_weights=w, modes=modes, coeffs=coeffs, gauges=gauges)
    return QDOnCollar(field=field, collar=collar)


def dbar(psi: QDOnCollar) -> QDOnCollar:
    """Antiholomorphic derivative: mode n becomes (c_n' - n c_n)/2.

    The output is again a mode/coefficient field (the d-zbar x dz^2 tensor
    weight is applied by the norm routines, not here).  Rows keep their
    gauge: in gauge g the stored update is (c' + (g - n) c)/2, so gauged
    holomorphic rows are annihilated exactly.
    """
    f = psi.field
    if 2 * f.max_mode + 1 > f.n_nodes:
        raise ValueError(
            f"grid too coarse: {f.n_nodes} nodes cannot support modes up to {f.max_mode}"
        )
    S = _grid_halfspan(f)
    D = _reference_diff_matrix(f.n_nodes) / S
    deriv = f.coeffs @ D.T
    out = 0.5 * (deriv + (f.gauges - f.modes)[:, None] * f.coeffs)
    field = SpectralField(s_nodes=f.s_nodes, s_weights=f.s_weights, modes=f.modes,
                          coeffs=out, gauges=f.gauges.copy())
    return QDOnCollar(field=field, collar=psi.collar)


def _grid_halfspan(field: SpectralField) -> float:
    x, _ = _gauss_legendre(field.n_nodes)
    return float(field.s_nodes[-1] / x[-1])


def _region_rows(psi: QDOnCollar, region: tuple[float, float] | None):
    """(s, weights, field-at-s) for integration over the region (native grid if None)."""
    f = psi.field
    if region is None:
        return f.s_nodes, f.s_weights, f
    a, b = region
    if a >= b:
        raise ValueError(f"empty region ({a}, {b})")
    lo, hi = psi.support
    if a < lo - 1e-12 * max(1.0, abs(lo)) or b > hi + 1e-12 * max(1.0, abs(hi)):
        raise ValueError(f"region ({a}, {b}) outside grid support ({lo}, {hi})")
    x, w = _gauss_legendre(f.n_nodes)
    s_sub = 0.5 * (a + b) + 0.5 * (b - a) * x
    w_sub = 0.5 * (b - a) * w
    rows = f.coeffs @ interpolation_matrix(f.s_nodes, s_sub).T
    sub = SpectralField(s_nodes=s_sub, s_weights=w_sub, modes=f.modes, coeffs=rows,
                        gauges=f.gauges.copy())
    return s_sub, w_sub, sub


def _log_accumulate(weights: np.ndarray, log_scale: np.ndarray, values: np.ndarray) -> float:
    """log(sum_j weights_j * exp(log_scale_j) * values_j) for nonnegative values."""
    t = weights * values
    mask = t > 0.0
    if not np.any(mask):
        return -math.inf
    logt = np.log(t[mask]) + log_scale[mask]
    m = float(np.max(logt))
    return m + math.log(float(np.sum(np.exp(logt - m))))


def l1_norm_log(psi: QDOnCollar, region: tuple[float, float] | None = None) -> float:
    """log of the L1 norm; finite answer even when the norm overflows doubles."""
    _, w, f = _region_rows(psi, region)
    vals, log_scale = f.scaled_values()
    k = vals.shape[1]
    theta_mean = np.abs(vals).sum(axis=1) * (2 * math.pi / k)
    return math.log(2.0) + _log_accumulate(w, log_scale, theta_mean)


def l1_norm(psi: QDOnCollar, region: tuple[float, float] | None = None) -> float:
    """L1 norm of psi dz^2 on the (sub)cylinder: 2 * iint |psi| dtheta ds."""
    logval = l1_norm_log(psi, region)
    return 0.0 if logval == -math.inf else float(np.exp(logval))


def dbar_l1_norm_log(psi: QDOnCollar, region: tuple[float, float] | None = None) -> float:
    """log of the L1 norm of the antiholomorphic derivative tensor."""
    d = dbar(psi)
    s, w, f = _region_rows(d, region)
    vals, log_scale = f.scaled_values()
    k = vals.shape[1]
    theta_mean = np.abs(vals).sum(axis=1) * (2 * math.pi / k)
    rho_inv = 1.0 / conformal_factor(psi.collar.ell, s)
    return math.log(2.0 * math.sqrt(2.0)) + _log_accumulate(w * rho_inv, log_scale, theta_mean)


def dbar_l1_norm(psi: QDOnCollar, region: tuple[float, float] | None = None) -> float:
    """L1 norm of the antiholomorphic derivative tensor.

    Equals 2*sqrt(2) * iint rho^-1 |dbar psi| dtheta ds over the region.
    """
    logval = dbar_l1_norm_log(psi, region)
    return 0.0 if logval == -math.inf else float(np.exp(logval))


def l2_inner(phi: QDOnCollar, psi: QDOnCollar) -> complex:
    """Metric L2 pairing <phi dz^2, psi dz^2> = 8*pi*sum_n int c_n^phi conj(c_n^psi) rho^-2."""
    if phi.collar != psi.collar:
        raise ValueError("fields live on different collars")
    fa, fb = phi.field, psi.field
    if fa.n_nodes != fb.n_nodes or not np.allclose(fa.s_nodes, fb.s_nodes):
        raise ValueError("fields use different grids")
    rho_inv2 = conformal_factor(phi.collar.ell, fa.s_nodes) ** -2.0
    total = 0.0 + 0.0j
    modes_b = {int(n): i for i, n in enumerate(fb.modes)}
    for i, n in enumerate(fa.modes):
        j = modes_b.get(int(n))
        if j is None:
            continue
        g = fa.gauges[i] + fb.gauges[j]
        factor = np.exp(g * fa.s_nodes) if g != 0.0 else 1.0
        total += np.sum(fa.s_weights * rho_inv2 * factor * fa.coeffs[i] * np.conj(fb.coeffs[j]))
    return complex(8.0 * math.pi * total)


def l2_norm(psi: QDOnCollar) -> float:
    return math.sqrt(max(l2_inner(psi, psi).real, 0.0))


def alpha_values(psi: QDOnCollar, s: np.ndarray | None = None) -> np.ndarray:
    """Circle means alpha(s) = (1/2pi) int psi dtheta = c_0(s), at s (grid default)."""
    f = psi.field
    idx = np.nonzero(f.modes == 0)[0]
    if len(idx) == 0:
        return np.zeros(f.n_nodes if s is None else len(np.atleast_1d(s)), dtype=complex)
    i = int(idx[0])
    row = f.coeffs[i]
    if s is not None:
        row = interpolation_matrix(f.s_nodes, np.atleast_1d(np.asarray(s, dtype=float))) @ row
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    else:
        s_arr = f.s_nodes
    if f.gauges[i] != 0.0:
        row = row * np.exp(f.gauges[i] * s_arr)
    return row


def alpha(psi: QDOnCollar):
    """The mean-value function s -> alpha(s), as a vectorized callable."""

    def fn(s):
        vals = alpha_values(psi, np.atleast_1d(np.asarray(s, dtype=float)))
        return complex(vals[0]) if np.ndim(s) == 0 else vals

    return fn


def alpha_l1(psi: QDOnCollar, region: tuple[float, float] | None = None) -> float:
    """int |alpha(s)| ds over the region (full grid if None)."""
    s, w, f = _region_rows(psi, region)
    a = alpha_values(QDOnCollar(field=f, collar=psi.collar))
    return float(np.sum(w * np.abs(a)))


def project_out_dz2(psi: QDOnCollar) -> QDOnCollar:
    """Remove the dz^2 component in the collar L2 pairing.

    Only the zero mode changes; the output pairs to zero with dz^2 on the
    same quadrature grid to machine precision.
    """
    f = psi.field
    idx = np.nonzero(f.modes == 0)[0]
    if len(idx) == 0:
        return psi
    i = int(idx[0])
    rho_inv2 = conformal_factor(psi.collar.ell, f.s_nodes) ** -2.0
    row = f.coeffs[i]
    if f.gauges[i] != 0.0:
        row = row * np.exp(f.gauges[i] * f.s_nodes)
    lam = np.sum(f.s_weights * rho_inv2 * row) / np.sum(f.s_weights * rho_inv2)
    coeffs = f.coeffs.copy()
    gauges = f.gauges.copy()
    coeffs[i] = row - lam
    gauges[i] = 0.0
    field = SpectralField(s_nodes=f.s_nodes, s_weights=f.s_weights, modes=f.modes,
                          coeffs=coeffs, gauges=gauges)
    return QDOnCollar(field=field, collar=psi.collar)


@dataclass(frozen=True)
class HoloSplit:
    """Principal coefficient b0 and the mode-zero-free collar-decay remainder."""

    b0: complex
    decay: QDOnCollar


def holo_split(phi: QDOnCollar, tol: float = 1e-8) -> HoloSplit:
    """Split a holomorphic field into b0*dz^2 plus the decaying modes.

    The two parts are orthogonal in the collar L2 pairing (theta modes are).
    Raises if the zero mode is not constant in s, i.e. the input was not
    holomorphic to begin with.
    """
    f = phi.field
    idx = np.nonzero(f.modes == 0)[0]
    if len(idx) == 0:
        return HoloSplit(b0=0.0 + 0.0j, decay=phi)
    i = int(idx[0])
    row = f.coeffs[i]
    if f.gauges[i] != 0.0:
        row = row * np.exp(f.gauges[i] * f.s_nodes)
    scale = _field_scale(f)
    mean = np.sum(f.s_weights * row) / np.sum(f.s_weights)
    if np.max(np.abs(row - mean)) > tol * max(scale, 1e-300):
        raise ValueError("not holomorphic: zero mode varies along the collar")
    rho_inv2 = conformal_factor(phi.collar.ell, f.s_nodes) ** -2.0
    b0 = complex(np.sum(f.s_weights * rho_inv2 * row) / np.sum(f.s_weights * rho_inv2))
    coeffs = f.coeffs.copy()
    gauges = f.gauges.copy()
    coeffs[i] = 0.0
    gauges[i] = 0.0
    decay_field = SpectralField(s_nodes=f.s_nodes, s_weights=f.s_weights, modes=f.modes,
                                coeffs=coeffs, gauges=gauges)
    return HoloSplit(b0=b0, decay=QDOnCollar(field=decay_field, collar=phi.collar))


def _field_scale(f: SpectralField) -> float:
    """Rough magnitude of the field at the grid nodes (gauge-aware, finite)."""
    if not f.is_gauged:
        return float(np.max(np.abs(f.coeffs))) if f.coeffs.size else 0.0
    expo = np.minimum(f.gauges[:, None] * f.s_nodes[None, :], 700.0)
    return float(np.max(np.abs(f.coeffs) * np.exp(expo)))


def sup_tensor_norm(psi: QDOnCollar, region: tuple[float, float] | None = None,
                    n_s: int = 600) -> float:
    """sup over the region of |psi dz^2| = 2 |psi| rho^-2, via dense sampling."""
    lo, hi = psi.support if region is None else region
    slo, shi = psi.support
    if lo < slo - 1e-12 * max(1.0, abs(slo)) or hi > shi + 1e-12 * max(1.0, abs(shi)):
        raise ValueError(f"region ({lo}, {hi}) outside grid support ({slo}, {shi})")
    s = np.linspace(lo, hi, n_s)
    vals, log_scale = psi.field.scaled_values(s=s)
    mod = np.abs(vals).max(axis=1)
    rho = conformal_factor(psi.collar.ell, s)
    return float(np.max(2.0 * mod * np.exp(log_scale) / rho**2))


def field_to_dict(psi: QDOnCollar) -> dict:
    """JSON-ready description {ell, modes, s_nodes, s_weights, coeffs_re/_im, log_domain_flags}."""
    f = psi.field
    return {
        "ell": psi.collar.ell,
        "modes": [int(n) for n in f.modes],
        "s_nodes": f.s_nodes.tolist(),
        "s_weights": f.s_weights.tolist(),
        "coeffs_re": f.coeffs.real.tolist(),
        "coeffs_im": f.coeffs.imag.tolist(),
        "log_domain_flags": f.gauges.tolist(),
    }


def field_from_dict(data: dict) -> QDOnCollar:
    collar = CollarParams.from_length(float(data["ell"]))
    field = SpectralField(
        s_nodes=np.asarray(data["s_nodes"], dtype=float),
        s_weights=np.asarray(data["s_weights"], dtype=float),
        modes=np.asarray(data["modes"], dtype=int),
        coeffs=np.asarray(data["coeffs_re"], dtype=float) + 1j * np.asarray(data["coeffs_im"], dtype=float),
        gauges=np.asarray(data["log_domain_flags"], dtype=float),
    )
    return QDOnCollar(field=field, collar=collar)
