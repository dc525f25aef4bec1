"""Empirical constants: collar-decay rate fits, ratio sweeps, maximization.

Three families of experiments:

* decay_fit pins the exponential rate of the collar-decay part: for
  zero-mean holomorphic fields the thin-part sup norm obeys
  sup * delta^2 / ||Phi||_L1 ~ exp(-pi/delta), so the fitted slope of
  log r against 1/delta should sit near -pi.

* the ratio sweeps draw seeded random band-limited fields, remove their
  dz^2 component, and track the worst observed constants of the mean-value
  bound (int |alpha| vs dbar + ell * L1) and of the thin-part mass bound
  (L1 on the thin part vs dbar + sqrt(delta) * L1).  The evidence sought is
  the absence of a blow-up trend as the collar degenerates.

* maximize_ratio searches for adversarial witnesses by projected gradient
  ascent on a Huber-smoothed objective, always reporting the exact
  (unsmoothed) ratio of the final field, which is a certified lower bound
  on the truncated-space optimum.  A quadratic surrogate via a dense
  generalized eigenproblem provides a deterministic cross-check.

Every report records the modelling assumption that orthogonality to
holomorphic differentials is represented on the standalone collar by
orthogonality to the constant differential dz^2.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .collar import CollarParams, conformal_factor, thin_threshold
from .fields import (
    QDOnCollar,
    SpectralField,
    _gauss_legendre,
    _reference_diff_matrix,
    alpha_l1,
    collar_gauss_grid,
    dbar_l1_norm,
    holomorphic_extend,
    interpolation_matrix,
    l1_norm,
    l1_norm_log,
    project_out_dz2,
)
from .reporting import config_hash

ORTHOGONALITY_NOTE = (
    "orthogonality model: fields are made L2-orthogonal to the constant "
    "differential dz^2 on the standalone collar before ratios are computed"
)


# ---------------------------------------------------------------------------
# random band-limited fields, reproducible across discretizations
# ---------------------------------------------------------------------------

def draw_field_spec(rng: np.random.Generator, n_modes: int, cheb_degree: int) -> np.ndarray:
    """Complex Gaussian coefficient tensor (mode, chebyshev degree).

    Variance damping 4^-|n| in the mode index and 2^-k in the polynomial
    degree keeps draws smooth and fully resolved at modest grids.
    """
    modes = np.arange(-n_modes, n_modes + 1)
    a = rng.standard_normal((len(modes), cheb_degree + 1)) \
        + 1j * rng.standard_normal((len(modes), cheb_degree + 1))
    a *= (4.0 ** -np.abs(modes))[:, None]
    a *= (2.0 ** -np.arange(cheb_degree + 1))[None, :]
    return a


def instantiate_spec(spec: np.ndarray, collar: CollarParams, n_nodes: int) -> QDOnCollar:
    """Realize a coefficient tensor on an n_nodes grid (any resolution)."""
    n_modes = (spec.shape[0] - 1) // 2
    s, w, span = collar_gauss_grid(collar, n_nodes)
    basis = np.polynomial.chebyshev.chebvander(s / span, spec.shape[1] - 1)
    fld = SpectralField(s_nodes=s, s_weights=w, modes=np.arange(-n_modes, n_modes + 1),
                        coeffs=spec @ basis.T, gauges=None)
    return QDOnCollar(field=fld, collar=collar)


# ---------------------------------------------------------------------------
# collar decay rate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayFitResult:
    ell: float
    modes: tuple[int, ...]
    slope: float
    intercept: float
    points: tuple[dict, ...]   # delta, x_delta, log_r
    dropped: tuple[float, ...]  # deltas with an empty thin part

    def to_dict(self) -> dict:
        return {"ell": self.ell, "modes": list(self.modes), "slope": self.slope,
                "intercept": self.intercept, "points": list(self.points),
                "dropped": list(self.dropped)}


def _sup_tensor_norm_log(psi: QDOnCollar, region, n_s: int = 800) -> float:
    lo, hi = region
    s = np.linspace(lo, hi, n_s)
    vals, log_scale = psi.field.scaled_values(s=s)
    mod = np.abs(vals).max(axis=1)
    rho = conformal_factor(psi.collar.ell, s)
    with np.errstate(divide="ignore"):
        logs = np.log(2.0 * mod / rho**2) + log_scale
    return float(np.max(logs))


def decay_fit(ell: float, delta_grid, mode_set, amplitudes: dict[int, complex] | None = None,
              n_nodes: int = 512, n_sup: int = 800) -> DecayFitResult:
    """Fit log(sup * delta^2 / L1) against 1/delta for a zero-mean holomorphic field.

    Deltas whose thin part is empty are dropped and reported; the fit needs
    at least two surviving grid points.  All magnitudes are handled in log
    form, so long collars and higher modes do not overflow.
    """
    mode_set = tuple(int(n) for n in mode_set)
    if not mode_set:
        raise ValueError("mode set must be nonempty")
    if 0 in mode_set:
        raise ValueError("mode 0 has no collar decay; exclude it from the fit")
    collar = CollarParams.from_length(ell)
    b = {n: (amplitudes or {}).get(n, 1.0) for n in mode_set}
    # gauged rows keep thin-part sups exact: a plain row spanning e^{n X}
    # down to e^{-n X} would drown the subcylinder values in roundoff
    phi = holomorphic_extend(b, collar, n_nodes=n_nodes, log_threshold=0.0)
    log_l1 = l1_norm_log(phi)
    points, dropped = [], []
    for d in np.asarray(delta_grid, dtype=float):
        tp = thin_threshold(ell, d)
        if tp.empty or tp.x_delta <= 0.0:
            dropped.append(float(d))
            continue
        log_sup = _sup_tensor_norm_log(phi, (-tp.x_delta, tp.x_delta), n_s=n_sup)
        log_r = log_sup + 2.0 * math.log(d) - log_l1
        points.append({"delta": float(d), "x_delta": tp.x_delta, "log_r": log_r})
    if len(points) < 2:
        raise ValueError(f"only {len(points)} usable deltas; cannot fit a rate")
    x = np.array([1.0 / p["delta"] for p in points])
    y = np.array([p["log_r"] for p in points])
    slope, intercept = np.polyfit(x, y, 1)
    return DecayFitResult(ell=ell, modes=mode_set, slope=float(slope),
                          intercept=float(intercept), points=tuple(points),
                          dropped=tuple(dropped))


# ---------------------------------------------------------------------------
# seeded ratio sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepReport:
    objective: str
    grid: dict
    rows: tuple[dict, ...]
    max_constant: float
    argmax: dict
    fit: dict
    rng_seed: int
    config: dict
    config_hash: str
    assumptions: tuple[str, ...] = field(default=(ORTHOGONALITY_NOTE,))

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "grid": self.grid,
            "rows": list(self.rows),
            "max_constant": self.max_constant,
            "argmax": self.argmax,
            "fit": self.fit,
            "rng_seed": self.rng_seed,
            "config": self.config,
            "config_hash": self.config_hash,
            "assumptions": list(self.assumptions),
        }


def _loglog_slope(xs, ys) -> float | None:
    """Fitted slope of log(y) against log(x); None when underdetermined."""
    if len(set(xs)) < 2 or np.any(np.asarray(ys) <= 0):
        return None
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def _draw_projected(rng, collar, n_modes, cheb_degree, n_nodes, max_redraws=8):
    """Draw, realize, and project a random field; redraw on degenerate norms."""
    for _ in range(max_redraws):
        spec = draw_field_spec(rng, n_modes, cheb_degree)
        psi = project_out_dz2(instantiate_spec(spec, collar, n_nodes))
        l1 = l1_norm(psi)
        dl1 = dbar_l1_norm(psi)
        if l1 > 1e-14 and dl1 + l1 > 1e-14:
            return psi, l1, dl1
    raise RuntimeError("repeated degenerate draws; check the field distribution")


def _run_trials(fn, trials: int, threads: int) -> list:
    """Evaluate fn(t) for t in range(trials); order-stable under threading."""
    if threads <= 1:
        return [fn(t) for t in range(trials)]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def alpha_constant_sweep(ell_grid, trials: int, rng_seed: int, n_modes: int = 8,
                         cheb_degree: int = 6, n_nodes: int = 96,
                         threads: int = 1) -> SweepReport:
    """Worst observed constant of the mean-value bound, per collar length.

    For each draw the observed quantity is
    R = int |alpha| / (||dbar Psi||_L1 + ell * ||Psi||_L1); the report fits
    the log-log trend of the per-ell maxima (a slope near or above zero
    means no degeneration blow-up).
    """
    ell_grid = [float(v) for v in ell_grid]
    cfg = {"objective": "alpha", "ell_grid": ell_grid, "trials": trials,
           "n_modes": n_modes, "cheb_degree": cheb_degree, "n_nodes": n_nodes,
           "seed": rng_seed}
    rows = []
    max_per_ell = []
    for i, ell in enumerate(ell_grid):
        collar = CollarParams.from_length(ell)

        def one_trial(t, _ell=ell, _i=i):
            rng = np.random.default_rng((rng_seed, _i, t))
            psi, l1, dl1 = _draw_projected(rng, collar, n_modes, cheb_degree, n_nodes)
            return alpha_l1(psi) / (dl1 + _ell * l1)

        values = _run_trials(one_trial, trials, threads)
        best_trial = int(np.argmax(values))
        best = values[best_trial]
        rows.append({"ell": ell, "max_constant": best, "argmax_trial": best_trial})
        max_per_ell.append(best)
    slope = _loglog_slope(ell_grid, max_per_ell)
    i_best = int(np.argmax(max_per_ell))
    return SweepReport(
        objective="alpha", grid={"ell": ell_grid}, rows=tuple(rows),
        max_constant=float(max_per_ell[i_best]),
        argmax={"ell": ell_grid[i_best], "trial": rows[i_best]["argmax_trial"]},
        fit={"loglog_slope": slope}, rng_seed=rng_seed, config=cfg,
        config_hash=config_hash(cfg),
    )


def thin_mass_sweep(ell_grid, delta_grid, trials: int, rng_seed: int, n_modes: int = 8,
                    cheb_degree: int = 6, n_nodes: int = 96,
                    threads: int = 1) -> SweepReport:
    """Worst observed constant of the thin-part mass bound.

    R = ||Psi||_L1(delta-thin) / (||dbar Psi||_L1 + sqrt(delta) * ||Psi||_L1)
    for dz^2-orthogonal draws; (ell, delta) pairs with an empty thin part
    are recorded as dropped.
    """
    ell_grid = [float(v) for v in ell_grid]
    delta_grid = [float(v) for v in delta_grid]
    cfg = {"objective": "thin_mass", "ell_grid": ell_grid, "delta_grid": delta_grid,
           "trials": trials, "n_modes": n_modes, "cheb_degree": cheb_degree,
           "n_nodes": n_nodes, "seed": rng_seed}
    rows = []
    max_per_ell = []
    argmax = {}
    global_best = -math.inf
    for i, ell in enumerate(ell_grid):
        collar = CollarParams.from_length(ell)
        deltas = [(d, thin_threshold(ell, d)) for d in delta_grid]
        live = [(d, tp) for d, tp in deltas if not tp.empty and tp.x_delta > 0.0]

        def one_trial(t, _ell=ell, _i=i):
            rng = np.random.default_rng((rng_seed, _i, t))
            psi, l1, dl1 = _draw_projected(rng, collar, n_modes, cheb_degree, n_nodes)
            out = {}
            for d, tp in live:
                num = l1_norm(psi, region=(-tp.x_delta, tp.x_delta))
                out[d] = num / (dl1 + math.sqrt(d) * l1)
            return out

        best_ell = -math.inf
        for t, per_delta in enumerate(_run_trials(one_trial, trials, threads)):
            for d, r in per_delta.items():
                if r > best_ell:
                    best_ell = r
                if r > global_best:
                    global_best = r
                    argmax = {"ell": ell, "delta": d, "trial": t}
        dropped = [d for d, tp in deltas if tp.empty or tp.x_delta <= 0.0]
        rows.append({"ell": ell, "max_constant": best_ell,
                     "dropped_deltas": dropped})
        max_per_ell.append(best_ell)
    slope = _loglog_slope(ell_grid, max_per_ell)
    return SweepReport(
        objective="thin_mass", grid={"ell": ell_grid, "delta": delta_grid},
        rows=tuple(rows), max_constant=float(global_best), argmax=argmax,
        fit={"loglog_slope": slope}, rng_seed=rng_seed, config=cfg,
        config_hash=config_hash(cfg),
    )


# ---------------------------------------------------------------------------
# adversarial maximization of the exact ratios
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaximizeConfig:
    n_modes: int = 6
    n_nodes: int = 64
    cheb_degree: int = 6
    max_iters: int = 20000
    restarts: int = 3
    step0: float = 0.5
    eps_rel: float = 2e-3
    tol: float = 1e-9
    patience: int = 150
    seed: int = 0
    delta: float | None = None  # thin_mass only
    theta_samples: int | None = None


@dataclass(frozen=True)
class MaximizeResult:
    objective: str
    ell: float
    value: float           # exact unsmoothed ratio of the witness
    smoothed_value: float
    witness: QDOnCollar
    converged: bool
    iters: int
    restarts: int

    def to_dict(self) -> dict:
        return {"objective": self.objective, "ell": self.ell, "value": self.value,
                "smoothed_value": self.smoothed_value, "converged": self.converged,
                "iters": self.iters, "restarts": self.restarts}


class _Workspace:
    """Shared matrices for the smoothed objectives and their gradients."""

    def __init__(self, objective: str, collar: CollarParams, cfg: MaximizeConfig):
        if objective not in ("alpha", "thin_mass"):
            raise ValueError(f"unknown objective {objective!r}")
        if objective == "thin_mass" and cfg.delta is None:
            raise ValueError("thin_mass objective needs a delta in the config")
        self.objective = objective
        self.collar = collar
        self.cfg = cfg
        s, w, span = collar_gauss_grid(collar, cfg.n_nodes)
        self.s, self.w, self.span = s, w, span
        self.modes = np.arange(-cfg.n_modes, cfg.n_modes + 1)
        k = cfg.theta_samples or (4 * cfg.n_modes + 4)
        self.thetas = np.arange(k) * (2 * math.pi / k)
        self.P = np.exp(1j * np.outer(self.modes, self.thetas))   # (M, K)
        self.dtheta = 2 * math.pi / k
        self.D = _reference_diff_matrix(cfg.n_nodes) / span
        self.rho = conformal_factor(collar.ell, s)
        self.rho_inv2 = self.rho ** -2.0
        self.i0 = cfg.n_modes  # row index of mode 0
        if objective == "thin_mass":
            tp = thin_threshold(collar.ell, cfg.delta)
            if tp.empty or tp.x_delta <= 0.0:
                raise ValueError(f"thin part is empty for ell={collar.ell}, delta={cfg.delta}")
            x_gl, w_gl = _gauss_legendre(cfg.n_nodes)
            self.s_sub = tp.x_delta * x_gl
            self.w_sub = tp.x_delta * w_gl
            self.R = interpolation_matrix(s, self.s_sub)  # (Jsub, J)

    # -- building blocks ----------------------------------------------------

    def _l1_value(self, C) -> float:
        """Exact (unsmoothed) full-cylinder L1 mass."""
        V = C.T @ self.P
        return 2.0 * float(np.sum(self.w[:, None] * np.abs(V)) * self.dtheta)

    def _l1_terms(self, C, eps):
        """(value, gradient) of the smoothed full-cylinder L1 mass."""
        V = C.T @ self.P  # (J, K)
        A = np.sqrt(V.real**2 + V.imag**2 + eps * eps)
        val = 2.0 * float(np.sum(self.w[:, None] * (A - eps)) * self.dtheta)
        G1 = (2.0 * self.dtheta) * self.w[:, None] * V / A
        grad = np.conj(self.P) @ G1.T  # (M, J)
        return val, grad

    def _l1_sub_terms(self, C, eps):
        """Smoothed L1 mass on the thin subcylinder (thin_mass numerator)."""
        Cs = C @ self.R.T  # (M, Jsub)
        V = Cs.T @ self.P
        A = np.sqrt(V.real**2 + V.imag**2 + eps * eps)
        val = 2.0 * float(np.sum(self.w_sub[:, None] * (A - eps)) * self.dtheta)
        G1 = (2.0 * self.dtheta) * self.w_sub[:, None] * V / A
        grad_sub = np.conj(self.P) @ G1.T       # (M, Jsub)
        return val, grad_sub @ self.R           # back to (M, J)

    def _dbar_terms(self, C, eps):
        """Smoothed L1 norm of the derivative tensor."""
        Dm = 0.5 * (C @ self.D.T - self.modes[:, None] * C)  # (M, J)
        V = Dm.T @ self.P
        A = np.sqrt(V.real**2 + V.imag**2 + eps * eps)
        wr = self.w / self.rho
        c = 2.0 * math.sqrt(2.0)
        val = c * float(np.sum(wr[:, None] * (A - eps)) * self.dtheta)
        G2 = (c * self.dtheta) * wr[:, None] * V / A
        H = np.conj(self.P) @ G2.T                            # (M, J)
        grad = 0.5 * (H @ self.D - self.modes[:, None] * H)
        return val, grad

    def _alpha_terms(self, C, eps):
        row = C[self.i0]
        A = np.sqrt(row.real**2 + row.imag**2 + eps * eps)
        val = float(np.sum(self.w * (A - eps)))
        grad = np.zeros_like(C)
        grad[self.i0] = self.w * row / A
        return val, grad

    # -- the smoothed ratio -------------------------------------------------

    def value_and_grad(self, C, eps):
        ell = self.collar.ell
        if self.objective == "alpha":
            num, gnum = self._alpha_terms(C, eps)
            l1, gl1 = self._l1_terms(C, eps)
            db, gdb = self._dbar_terms(C, eps)
            den = db + ell * l1
            gden = gdb + ell * gl1
        else:
            num, gnum = self._l1_sub_terms(C, eps)
            l1, gl1 = self._l1_terms(C, eps)
            db, gdb = self._dbar_terms(C, eps)
            den = db + math.sqrt(self.cfg.delta) * l1
            gden = gdb + math.sqrt(self.cfg.delta) * gl1
        val = num / den
        grad = (gnum * den - num * gden) / (den * den)
        return val, grad

    # -- constraint handling --------------------------------------------------

    def project(self, C):
        out = C.copy()
        row = out[self.i0]
        lam = np.sum(self.w * self.rho_inv2 * row) / np.sum(self.w * self.rho_inv2)
        out[self.i0] = row - lam
        return out

    def normalize(self, C):
        val = self._l1_value(C)
        if val <= 0.0:
            raise ZeroDivisionError("zero field cannot be normalized")
        return C / val

    def to_field(self, C) -> QDOnCollar:
        fld = SpectralField(s_nodes=self.s, s_weights=self.w, modes=self.modes,
                            coeffs=C, gauges=None)
        return QDOnCollar(field=fld, collar=self.collar)

    def exact_ratio(self, C) -> float:
        psi = self.to_field(C)
        l1 = l1_norm(psi)
        dl1 = dbar_l1_norm(psi)
        ell = self.collar.ell
        if self.objective == "alpha":
            return alpha_l1(psi) / (dl1 + ell * l1)
        tp = thin_threshold(ell, self.cfg.delta)
        num = l1_norm(psi, region=(-tp.x_delta, tp.x_delta))
        return num / (dl1 + math.sqrt(self.cfg.delta) * l1)


def maximize_ratio(objective: str, ell: float, config: MaximizeConfig | None = None) -> MaximizeResult:
    """Projected heavy-ball ascent on the smoothed ratio, best of several starts.

    Start 0 is the deterministic quadratic-surrogate witness; the remaining
    starts are random draws.  Each iterate is re-orthogonalized against dz^2
    and renormalized to unit L1 mass.  The returned value is the exact ratio
    of the final witness, a certified lower bound for the optimum over the
    truncated field space; ``converged`` is False when the iteration budget
    ran out while the objective was still improving.
    """
    cfg = config or MaximizeConfig()
    collar = CollarParams.from_length(ell)
    ws = _Workspace(objective, collar, cfg)
    basis = np.polynomial.chebyshev.chebvander(ws.s / ws.span, cfg.cheb_degree)
    best = None
    for restart in range(cfg.restarts):
        if restart == 0:
            _, wit = rayleigh_surrogate(objective, ell, n_modes=cfg.n_modes,
                                        n_nodes=cfg.n_nodes, delta=cfg.delta)
            C = wit.field.coeffs.astype(complex)
        else:
            rng = np.random.default_rng((cfg.seed, restart))
            C = draw_field_spec(rng, cfg.n_modes, cfg.cheb_degree) @ basis.T
        C = ws.normalize(ws.project(C))
        eps = cfg.eps_rel * float(np.mean(np.abs(C.T @ ws.P)))
        val, grad = ws.value_and_grad(C, eps)
        step = cfg.step0 * max(np.max(np.abs(C)), 1e-30) / max(np.max(np.abs(grad)), 1e-30)
        momentum = np.zeros_like(C)
        stall, it = 0, 0
        converged = False
        for it in range(1, cfg.max_iters + 1):
            momentum = 0.9 * momentum + grad
            accepted = False
            rel_gain = 0.0
            for _ in range(25):
                cand = ws.normalize(ws.project(C + step * momentum))
                cval, cgrad = ws.value_and_grad(cand, eps)
                if cval > val:
                    rel_gain = (cval - val) / max(abs(val), 1e-300)
                    C, val, grad = cand, cval, cgrad
                    step *= 1.2
                    accepted = True
                    break
                step *= 0.5
                momentum = grad.copy()
            if not accepted or rel_gain < cfg.tol:
                stall += 1
                if stall >= cfg.patience:
                    converged = True
                    break
            else:
                stall = 0
        exact = ws.exact_ratio(C)
        cand_res = MaximizeResult(objective=objective, ell=ell, value=float(exact),
                                  smoothed_value=float(val), witness=ws.to_field(C),
                                  converged=converged, iters=it, restarts=cfg.restarts)
        if best is None or cand_res.value > best.value:
            best = cand_res
    return best


# ---------------------------------------------------------------------------
# quadratic surrogate via a generalized eigenproblem
# ---------------------------------------------------------------------------

def rayleigh_surrogate(objective: str, ell: float, n_modes: int = 6, n_nodes: int = 48,
                       delta: float | None = None) -> tuple[float, QDOnCollar]:
    """Deterministic quadratic analogue of the ratio maximization.

    Maximizes a weighted-L2 quotient whose densities are the squares of the
    L1 integrands, over the dz^2-orthogonal truncated space.  The quotient is
    block-diagonal in the Fourier modes, so each mode yields one dense
    generalized eigenproblem.  Returns (sqrt(lambda_max), witness field).
    """
    if objective not in ("alpha", "thin_mass"):
        raise ValueError(f"unknown objective {objective!r}")
    if objective == "thin_mass" and delta is None:
        raise ValueError("thin_mass surrogate needs delta")
    collar = CollarParams.from_length(ell)
    s, w, span = collar_gauss_grid(collar, n_nodes)
    D = _reference_diff_matrix(n_nodes) / span
    rho = conformal_factor(ell, s)
    modes = np.arange(-n_modes, n_modes + 1)
    two_pi = 2 * math.pi

    if objective == "thin_mass":
        tp = thin_threshold(ell, delta)
        if tp.empty or tp.x_delta <= 0.0:
            raise ValueError(f"thin part is empty for ell={ell}, delta={delta}")
        x_gl, w_gl = _gauss_legendre(n_nodes)
        R = interpolation_matrix(s, tp.x_delta * x_gl)
        A_sub = R.T @ np.diag(4.0 * two_pi * tp.x_delta * w_gl) @ R
        mix = delta
    else:
        mix = ell * ell

    # constraint: mode-0 coefficients orthogonal to the dz^2 pairing vector
    u = w * rho ** -2.0
    u = u / np.linalg.norm(u)
    Q = scipy.linalg.null_space(u[None, :])  # (J, J-1)

    best_val, best_mode, best_vec = -math.inf, None, None
    for n in modes:
        L = 0.5 * (D - n * np.eye(n_nodes))
        B = L.T @ np.diag(two_pi * 8.0 * w / rho**2) @ L + mix * np.diag(two_pi * 4.0 * w)
        if objective == "alpha":
            if n != 0:
                continue  # numerator lives on mode 0 only
            A = np.diag(w)
        else:
            A = A_sub
        if n == 0:
            A_r = Q.T @ A @ Q
            B_r = Q.T @ B @ Q
        else:
            A_r, B_r = A, B
        vals, vecs = scipy.linalg.eigh(A_r, B_r)
        if vals[-1] > best_val:
            best_val = float(vals[-1])
            best_mode = int(n)
            v = vecs[:, -1]
            best_vec = Q @ v if n == 0 else v

    coeffs = np.zeros((len(modes), n_nodes), dtype=complex)
    coeffs[best_mode + n_modes] = best_vec
    fld = SpectralField(s_nodes=s, s_weights=w, modes=modes, coeffs=coeffs, gauges=None)
    return math.sqrt(max(best_val, 0.0)), QDOnCollar(field=fld, collar=collar)
