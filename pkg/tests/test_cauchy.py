"""Rectangle family geometry and Cauchy reconstruction checks."""

import math

import numpy as np
import pytest

from collarlab.collar import CollarParams, conformal_factor, thin_threshold
from collarlab.cauchy import (
    averaged_breakdown,
    averaged_reconstruct,
    cauchy_reconstruct,
    make_rectangle,
    mean_value_kernel_gap,
    rectangle_at,
    remark_checks,
)
from collarlab.fields import (
    QDOnCollar,
    SpectralField,
    collar_gauss_grid,
    dz2_field,
    holomorphic_extend,
    make_field,
)

TWO_PI = 2.0 * math.pi


def trig_poly_field(collar, seed, n_modes=5, n_nodes=96, deg=4):
    rng = np.random.default_rng(seed)
    s, w, span = collar_gauss_grid(collar, n_nodes)
    modes = np.arange(-n_modes, n_modes + 1)
    basis = np.polynomial.chebyshev.chebvander(s / span, deg)
    a = rng.standard_normal((len(modes), deg + 1)) + 1j * rng.standard_normal((len(modes), deg + 1))
    a *= 4.0 ** (-np.abs(modes))[:, None] * 2.0 ** (-np.arange(deg + 1))[None, :]
    field = SpectralField(s, w, modes, a @ basis.T, None)
    return QDOnCollar(field=field, collar=collar)


class TestRectangleSpec:
    def test_zero_padding_gives_square(self):
        collar = CollarParams.from_length(0.1)
        rect = rectangle_at(collar, (2.0, 0.3), b=0.0)
        r = conformal_factor(0.1, 2.0) ** -0.5
        assert rect.half_s == pytest.approx(r)
        assert rect.v_half == pytest.approx(r)
        assert rect.h_plus - rect.h_minus == pytest.approx(2 * r)

    def test_centered(self):
        collar = CollarParams.from_length(0.1)
        rect = rectangle_at(collar, (-3.0, 1.0), b=1.5)
        assert 0.5 * (rect.h_minus + rect.h_plus) == pytest.approx(-3.0)

    def test_padding_range(self):
        collar = CollarParams.from_length(0.1)
        with pytest.raises(ValueError):
            rectangle_at(collar, (0.0, 0.0), b=-0.1)
        with pytest.raises(ValueError):
            rectangle_at(collar, (0.0, 0.0), b=7.0)

    def test_thin_part_validation(self):
        collar = CollarParams.from_length(0.1)
        x = thin_threshold(0.1, 0.1).x_delta
        make_rectangle(collar, (0.9 * x, 0.0), b=1.0, delta0=0.1)  # inside: fine
        with pytest.raises(ValueError):
            make_rectangle(collar, (1.1 * x, 0.0), b=1.0, delta0=0.1)

    def test_thin_part_validation_empty(self):
        collar = CollarParams.from_length(0.3)  # 0.1-thin part is empty
        with pytest.raises(ValueError):
            make_rectangle(collar, (0.0, 0.0), b=1.0, delta0=0.1)

    def test_wrap_count_bound(self):
        collar = CollarParams.from_length(0.05)
        for s0 in (0.0, 50.0, 120.0):
            for b in (0.0, 3.0, TWO_PI):
                rect = rectangle_at(collar, (s0, 0.0), b=b)
                assert rect.n_wraps <= 2 * (rect.image_count + 2)

    def test_kernel_gap_bound(self):
        # |1/(z - z0) - 1/(r + 2*pi*i*k)| <= 2*pi*rho(s0) on every period segment
        collar = CollarParams.from_length(0.05)
        for s0 in (0.0, 80.0, 150.0):
            rect = rectangle_at(collar, (s0, 0.0), b=1.0)
            for k in range(-rect.image_count, rect.image_count + 1):
                assert mean_value_kernel_gap(rect, k) <= TWO_PI * rect.rho0 * (1 + 1e-12)


class TestReconstruction:
    def test_constant_field(self):
        collar = CollarParams.from_length(0.3)
        one = dz2_field(collar, n_nodes=64)
        for z0, b in [((0.0, 0.0), 0.0), ((2.0, 1.0), 1.7), ((-5.0, 4.0), TWO_PI)]:
            br = cauchy_reconstruct(one, z0, b)
            assert br.reconstructed == pytest.approx(1.0, abs=1e-10)

    def test_holomorphic_omega_vanishes(self):
        collar = CollarParams.from_length(1.0)
        phi = holomorphic_extend({0: 1.0, 1: 0.2, -1: 0.1j}, collar, n_nodes=128)
        z0 = (1.0, 0.7)
        br = cauchy_reconstruct(phi, z0, b=0.5)
        truth = phi.field.evaluate(*z0)
        boundary = br.i_v_plus + br.i_v_minus + br.i_h_plus + br.i_h_minus
        assert abs(br.i_omega) < 1e-8
        assert boundary / (2j * math.pi) == pytest.approx(truth, abs=1e-6)

    def test_random_fields_pointwise(self):
        collar = CollarParams.from_length(0.3)
        rng = np.random.default_rng(7)
        for seed in range(3):
            psi = trig_poly_field(collar, seed=seed)
            sup = np.max(np.abs(psi.field.values()))
            for _ in range(3):
                s0 = rng.uniform(-6.0, 6.0)
                t0 = rng.uniform(0.0, TWO_PI)
                b = rng.uniform(0.0, TWO_PI)
                br = cauchy_reconstruct(psi, (s0, t0), b)
                truth = psi.field.evaluate(s0, t0)
                assert abs(br.reconstructed - truth) < 1e-4 * sup

    def test_mid_collar_point_without_thin_part(self):
        # reconstruction works at s0 = 0 even when the 0.1-thin part is empty
        collar = CollarParams.from_length(0.3)
        psi = trig_poly_field(collar, seed=11)
        br = cauchy_reconstruct(psi, (0.0, 1.0), b=2.0)
        assert abs(br.reconstructed - psi.field.evaluate(0.0, 1.0)) < 1e-5

    def test_b_stability(self):
        collar = CollarParams.from_length(0.3)
        psi = trig_poly_field(collar, seed=3)
        totals = [cauchy_reconstruct(psi, (1.0, 0.5), b).total for b in (0.0, 1.0, 3.5, 6.0)]
        spread = max(abs(t - totals[0]) for t in totals)
        assert spread < 1e-8 * max(abs(totals[0]), 1.0)

    def test_refinement_order(self):
        collar = CollarParams.from_length(0.3)
        psi = trig_poly_field(collar, seed=9)
        truth = psi.field.evaluate(2.0, 1.3)
        e1 = abs(cauchy_reconstruct(psi, (2.0, 1.3), 1.0).reconstructed - truth)
        e2 = abs(cauchy_reconstruct(psi, (2.0, 1.3), 1.0, resolution=2.0).reconstructed - truth)
        assert e2 < e1 / 4.0

    def test_support_violation_raises(self):
        collar = CollarParams.from_length(0.3)
        psi = trig_poly_field(collar, seed=1)
        edge = psi.support[1]
        with pytest.raises(ValueError, match="support"):
            cauchy_reconstruct(psi, (edge - 1.0, 0.0), b=0.0)


class TestAveraged:
    def test_identity_preserved(self):
        collar = CollarParams.from_length(0.3)
        psi = trig_poly_field(collar, seed=5)
        z0 = (1.5, 2.0)
        avg = averaged_reconstruct(psi, z0, n_b=4)
        assert avg / (2j * math.pi) == pytest.approx(psi.field.evaluate(*z0), abs=1e-5)

    def test_constant_and_holomorphic(self):
        collar = CollarParams.from_length(1.0)
        one = dz2_field(collar, n_nodes=64)
        assert averaged_reconstruct(one, (0.5, 0.2), n_b=4) / (2j * math.pi) == pytest.approx(1.0, abs=1e-9)
        phi = holomorphic_extend({0: 0.5, 1: 0.1}, collar, n_nodes=96)
        got = averaged_reconstruct(phi, (1.0, 0.0), n_b=4) / (2j * math.pi)
        assert got == pytest.approx(phi.field.evaluate(1.0, 0.0), abs=1e-6)

    def test_horizontal_mean_scales_like_sqrt_rho(self):
        # zero-mean field: averaged I_H^+ is O(rho^(1/2)(s0)) at the L1 scale
        ell = 0.1
        collar = CollarParams.from_length(ell)
        psi = make_field(collar, {1: lambda s: np.ones_like(s, dtype=complex)}, n_nodes=96)
        for s0 in (0.0, 20.0, 40.0):
            br = averaged_breakdown(psi, (s0, 0.7), n_b=8)
            rho0 = conformal_factor(ell, s0)
            assert abs(br.i_h_plus) <= 5.0 * rho0 ** 0.5
            assert abs(br.i_h_minus) <= 5.0 * rho0 ** 0.5


class TestRemarkChecks:
    @pytest.mark.parametrize("ell", [0.05, 0.1, 0.19])
    def test_constants_in_range(self, ell):
        rep = remark_checks(CollarParams.from_length(ell), delta0=0.1)
        assert not rep.empty
        by_name = {c.name: c for c in rep.checks}
        assert by_name["containment"].max_constant <= 1.0
        assert by_name["rho_comparability"].max_constant <= 2.0
        assert by_name["h_derivative_deviation"].max_constant <= 0.1  # slopes in [0.9, 1.1]
        assert by_name["inverse_gap"].max_constant <= 3.0
        assert by_name["harmonic_log_bound"].max_constant <= 2.0
        assert rep.passed

    def test_h_derivative_oracle(self):
        # numeric differentiation of h^± against the closed-form deviation bound
        ell, delta0 = 0.05, 0.1
        collar = CollarParams.from_length(ell)
        x = thin_threshold(ell, delta0).x_delta
        s = np.linspace(-x, x, 301)
        h = 1e-5

        def hp(t):
            return t + conformal_factor(ell, t) ** -0.5

        deriv = (hp(s + h) - hp(s - h)) / (2 * h)
        assert np.all(deriv > 0.9) and np.all(deriv < 1.1)

    def test_empty_report_near_regime_boundary(self):
        rep = remark_checks(CollarParams.from_length(1.7), delta0=0.1)
        assert rep.empty and rep.passed and rep.checks == ()

    def test_comparability_improves_with_small_delta0(self):
        collar = CollarParams.from_length(0.02)
        consts = []
        for d0 in (0.1, 0.05, 0.02):
            rep = remark_checks(collar, delta0=d0)
            consts.append({c.name: c.max_constant for c in rep.checks}["rho_comparability"])
        assert consts[0] > consts[1] > consts[2]
        assert consts[-1] < 1.1

    def test_report_serializes(self):
        rep = remark_checks(CollarParams.from_length(0.1), delta0=0.1)
        d = rep.to_dict()
        assert d["pass"] and len(d["checks"]) == 5
        for c in d["checks"]:
            assert set(c) == {"name", "max_constant", "worst_point", "pass"}
