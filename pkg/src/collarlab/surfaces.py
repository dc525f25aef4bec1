"""Flat tori and the round sphere: projections and L1 ratio witnesses.

A unit-area flat torus is C modulo the lattice spanned by b and a + i/b.
Holomorphic differentials there are constants, so the orthogonal projection
of phi dz^2 is just the area mean of phi, and the quantity of interest is

    ratio = ||phi - mean||_L1 * |dz^2|  /  ||dbar(phi dz^2)||_L1
          = 2 * int |phi - mean|  /  (2*sqrt(2) * int |d_zbar phi|)

whose growth along the family a = 0, b -> infinity (witnessed by the single
shear mode sin(2*pi*x/b), ratio = b/(sqrt(2)*pi)) shows no torus-uniform
constant exists.  On the sphere the holomorphic space is trivial and the
plane-chart ratio ||Psi|| / ||dbar Psi|| in the round metric is bounded.
"""

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FlatTorus:
    """Unit-area torus C / (Z*b + Z*(a + i/b)) with shear a and aspect b > 0."""

    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError(f"aspect parameter must be positive, got {self.b}")

    @property
    def generators(self) -> tuple[complex, complex]:
        return complex(self.b, 0.0), complex(self.a, 1.0 / self.b)

    @property
    def area(self) -> float:
        w1, w2 = self.generators
        return abs(w1.real * w2.imag - w1.imag * w2.real)

    def mesh(self, m: int):
        """Lattice-adapted fundamental-domain mesh: z = u*w1 + v*w2, u,v in [0,1)."""
        u = np.arange(m) / m
        w1, w2 = self.generators
        U, V = np.meshgrid(u, u, indexing="ij")
        return U * w1 + V * w2


@dataclass(frozen=True)
class TorusField:
    """Grid samples of a lattice-periodic function on the fundamental domain.

    dbar_samples, when given, overrides the spectral derivative; use it for
    chart-level experiments with functions that are periodic only up to a
    shift of the fundamental domain (every integral here is shift-invariant).
    """

    torus: FlatTorus
    values: np.ndarray  # complex (M, M), index [u, v]
    dbar_samples: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if self.values.ndim != 2 or self.values.shape[0] != self.values.shape[1]:
            raise ValueError("expected a square sample grid")
        if self.dbar_samples is not None:
            d = np.asarray(self.dbar_samples, dtype=complex)
            if d.shape != self.values.shape:
                raise ValueError("derivative samples must match the value grid")
            object.__setattr__(self, "dbar_samples", d)

    @classmethod
    def from_function(cls, torus: FlatTorus, fn, m: int = 256, dbar_fn=None,
                      check_periodicity: bool = True) -> "TorusField":
        z = torus.mesh(m)
        vals = np.asarray(fn(z), dtype=complex)
        if check_periodicity and dbar_fn is None:
            w1, w2 = torus.generators
            probe = z[:: max(m // 8, 1), :: max(m // 8, 1)]
            scale = max(float(np.max(np.abs(vals))), 1e-30)
            for w in (w1, w2):
                mismatch = np.max(np.abs(np.asarray(fn(probe + w)) - np.asarray(fn(probe))))
                if mismatch > 1e-10 * scale:
                    raise ValueError(f"function is not lattice-periodic (seam mismatch {mismatch:.3e})")
        dvals = None if dbar_fn is None else np.asarray(dbar_fn(z), dtype=complex)
        return cls(torus=torus, values=vals, dbar_samples=dvals)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    def dbar_values(self) -> np.ndarray:
        """d_zbar phi on the mesh, by spectral differentiation in lattice coordinates.

        With z = u*w1 + v*w2, w1 = b, w2 = a + i/b:
        d/dx = (1/b) d/du and d/dy = -a d/du + b d/dv, so
        d_zbar = ((1/b - i*a) d/du + i*b d/dv) / 2.
        """
        if self.dbar_samples is not None:
            return self.dbar_samples
        a, b = self.torus.a, self.torus.b
        spec = np.fft.fft2(self.values)
        m = self.m
        freq = np.fft.fftfreq(m, d=1.0 / m)  # signed integer mode numbers
        ju = freq[:, None]
        kv = freq[None, :]
        factor = 0.5 * (TWO_PI * 1j) * ((1.0 / b - 1j * a) * ju + 1j * b * kv)
        return np.fft.ifft2(spec * factor)


def torus_project(field: TorusField) -> complex:
    """L2 projection of phi dz^2 onto the (constant) holomorphic differentials."""
    return complex(np.mean(field.values))


def torus_l1_parts(field: TorusField) -> tuple[float, float]:
    """(residual L1 mass, derivative L1 mass) in the flat tensor norms."""
    mean = torus_project(field)
    l1_residual = 2.0 * float(np.mean(np.abs(field.values - mean)))
    dbar_l1 = 2.0 * math.sqrt(2.0) * float(np.mean(np.abs(field.dbar_values())))
    return l1_residual, dbar_l1


def torus_ratio(field: TorusField) -> float:
    """||Psi - P(Psi)||_L1 / ||dbar Psi||_L1 on the unit-area torus."""
    l1_residual, dbar_l1 = torus_l1_parts(field)
    scale = max(float(np.max(np.abs(field.values))), 1e-300)
    if dbar_l1 <= 1e-13 * scale:
        raise ZeroDivisionError(
            "field is holomorphic (constant): the derivative norm vanishes, "
            "so the ratio is undefined"
        )
    return l1_residual / dbar_l1


def shear_mode(torus: FlatTorus, harmonics: int = 1):
    """The function sin(2*pi*harmonics*x/b), periodic for every shear a."""
    k = TWO_PI * harmonics / torus.b
    return lambda z: np.sin(k * np.real(z))


def torus_ratio_exact(b: float) -> float:
    """Closed-form ratio b/(sqrt(2)*pi) of the single shear mode."""
    return b / (math.sqrt(2.0) * math.pi)


def _default_dbar(psi, h: float = 1e-5):
    """Fourth-order central-difference d_zbar for a callable on C."""

    def d(z):
        zx = (-psi(z + 2 * h) + 8 * psi(z + h) - 8 * psi(z - h) + psi(z - 2 * h)) / (12 * h)
        zy = (-psi(z + 2j * h) + 8 * psi(z + 1j * h) - 8 * psi(z - 1j * h) + psi(z - 2j * h)) / (12 * h)
        return 0.5 * (zx + 1j * zy)

    return d


def sphere_ratio(psi, dbar_psi=None, n_u: int = 512, n_theta: int = 64,
                 u_max: float = math.pi - 0.02, check_tail: bool = True) -> float:
    """||Psi||_L1 / ||dbar Psi||_L1 on the round sphere, in the plane chart.

    psi must decay like o(|z|^-2) so both norms are finite (smoothness at the
    far pole is the caller's responsibility).  The radial integral uses the
    substitution r = tan(u/2), u in (0, u_max], which absorbs the conformal
    weights of the round metric rho = 2/(1 + |z|^2):

        ||Psi||_L1   = 2 * iint |psi| dx dy
        ||dbar Psi|| = sqrt(2) * iint (1 + |z|^2) |d_zbar psi| dx dy
    """
    if dbar_psi is None:
        dbar_psi = _default_dbar(psi)
    u_nodes, u_w = np.polynomial.legendre.leggauss(n_u)
    u = 0.5 * u_max * (u_nodes + 1.0)
    w = 0.5 * u_max * u_w
    r = np.tan(0.5 * u)
    jac = r * 0.5 * (1.0 + r * r)  # r dr = r * sec^2(u/2)/2 du
    thetas = np.arange(n_theta) * TWO_PI / n_theta
    z = r[:, None] * np.exp(1j * thetas)[None, :]
    absval = np.abs(np.asarray(psi(z)))
    absder = np.abs(np.asarray(dbar_psi(z)))
    dtheta = TWO_PI / n_theta
    ring_num = (w * jac) * absval.sum(axis=1) * dtheta
    ring_den = (w * jac) * ((1.0 + r * r)[:, None] * absder).sum(axis=1) * dtheta
    num = 2.0 * float(ring_num.sum())
    den = math.sqrt(2.0) * float(ring_den.sum())
    if check_tail:
        tail = slice(int(0.9 * n_u), None)
        if ring_num[tail].sum() > 0.05 * max(ring_num.sum(), 1e-300):
            raise ValueError(
                "field mass does not decay at the truncation radius; "
                "input may not be integrable on the sphere"
            )
    if den <= 1e-13 * max(num, 1e-300):
        raise ZeroDivisionError(
            "derivative norm vanishes: nonzero holomorphic fields are not "
            "integrable on the sphere chart"
        )
    return num / den
