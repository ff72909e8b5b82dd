import math
from dataclasses import replace

import numpy as np
import pytest

from alleewaves.errors import AlleeWavesError, PoleError
from alleewaves.exact import eval_phi, eval_uv, make_spec, phi_derivatives
from alleewaves.model import CaseKind
from alleewaves.verify import (check_G_ode, derivative_crosscheck,
                               discriminant_diagnostic, estimate_period,
                               ode_residual, pde_residual)

SQRT2 = math.sqrt(2.0)


def fig1_spec():
    return make_spec("A", 1.2, 0.2, 5.9, 3.0, "upper", 20.0, 10.0)


def fig2_spec():
    return make_spec("A", 3.0, 5.0, 12.2, 2.0, "upper", 20.0, -10.0)


def extinction_spec():
    return make_spec("B", SQRT2, 1.0, 2.03, 3.0, "upper", 1.0, 0.0)


class TestOdeResidual:
    def test_figure1_exactness(self):
        rep = ode_residual(fig1_spec(), -5.0, 5.0, 2001)
        assert rep.worst < 1e-8

    def test_extinction_near_machine_zero(self):
        # lam rounds so u is ~1e-16 rather than exactly 0; the linear terms
        # keep the residual at that scale
        rep = ode_residual(extinction_spec(), -5.0, 5.0, 501)
        assert rep.worst < 1e-13

    def test_detects_wrong_wave_speed(self):
        spec = fig1_spec()
        bad = replace(spec, coeffs=replace(spec.coeffs, c=spec.coeffs.c + 0.1))
        assert ode_residual(bad, -5.0, 5.0, 2001).worst > 1e-2

    def test_pole_samples_excluded(self):
        rep = ode_residual(fig1_spec(), -5.0, 5.0, 2001)
        assert rep.n_excluded > 0
        assert rep.exclusion_radius == pytest.approx(max(10 * 10 / 2000, 1e-3))

    def test_interval_inside_pole_zone(self):
        spec = fig1_spec()
        pole = -0.47608516238456572
        with pytest.raises(AlleeWavesError):
            ode_residual(spec, pole - 1e-4, pole + 1e-4, 16)

    def test_reports_reproducible(self):
        a = ode_residual(fig1_spec(), -5.0, 5.0, 1001)
        b = ode_residual(fig1_spec(), -5.0, 5.0, 1001)
        assert a == b

    def test_small_sample_count_rejected(self):
        with pytest.raises(ValueError):
            ode_residual(fig1_spec(), -5.0, 5.0, 8)


class TestPdeResidual:
    def test_figure1_truncation_level(self):
        rep = pde_residual(fig1_spec(), (1.0, 5.0), (0.0, 0.2), 401, 101)
        assert rep.worst < 1e-5

    def test_fourth_order_refinement(self):
        coarse = pde_residual(fig1_spec(), (1.0, 5.0), (0.0, 0.2), 401, 101)
        fine = pde_residual(fig1_spec(), (1.0, 5.0), (0.0, 0.2), 801, 201)
        for c, f in zip(coarse.max_abs, fine.max_abs):
            assert 12.0 <= c / f <= 20.0

    def test_extinction_near_machine_zero(self):
        rep = pde_residual(extinction_spec(), (-3.0, 3.0), (0.0, 1.0), 64, 64)
        assert rep.worst < 1e-28

    def test_detects_wrong_beta(self):
        spec = fig1_spec()
        bad = replace(spec, coeffs=replace(spec.coeffs,
                                           beta_model=spec.coeffs.beta_model + 1.0))
        assert pde_residual(bad, (1.0, 5.0), (0.0, 0.2), 101, 33).worst > 1e-1

    def test_pole_in_window_rejected(self):
        with pytest.raises(PoleError):
            pde_residual(fig1_spec(), (-2.0, 2.0), (0.0, 0.2), 64, 33)

    def test_minimum_resolution(self):
        with pytest.raises(ValueError):
            pde_residual(fig1_spec(), (1.0, 5.0), (0.0, 0.2), 4, 33)


class TestCheckGOde:
    def test_hyperbolic_reference(self):
        rep = check_G_ode(CaseKind.HYPERBOLIC, -2.47487, 0.2, 20.0, 10.0,
                          np.linspace(-10, 10, 1001))
        assert rep.max_abs[0] < 1e-12

    def test_degenerate_pure_exponential(self):
        rep = check_G_ode(CaseKind.DEGENERATE, 2.0, 1.0, 1.0, 0.0,
                          np.linspace(-5, 5, 201))
        assert rep.max_abs[0] < 1e-15

    def test_trigonometric(self):
        rep = check_G_ode(CaseKind.TRIGONOMETRIC, 0.0, 1.0, 1.0, 1.0,
                          np.linspace(-10, 10, 501))
        assert rep.max_abs[0] < 1e-13


class TestDerivativeCrosscheck:
    def test_phi_figure1(self):
        spec = fig1_spec()
        co = spec.coeffs

        def fn(xi):
            return eval_phi(spec.case, co.lam, co.mu, 20.0, 10.0, xi)

        def dfn(xi):
            return phi_derivatives(spec.case, co.lam, co.mu, 20.0, 10.0, xi)[1]

        dev = derivative_crosscheck(fn, dfn, np.linspace(1, 5, 200), 1e-3)
        assert dev < 1e-9

    def test_constant_phi_exact(self):
        spec = extinction_spec()
        co = spec.coeffs

        def fn(xi):
            return eval_phi(spec.case, co.lam, co.mu, 1.0, 0.0, xi)

        def dfn(xi):
            return phi_derivatives(spec.case, co.lam, co.mu, 1.0, 0.0, xi)[1]

        assert derivative_crosscheck(fn, dfn, np.linspace(-5, 5, 100), 1e-3) < 1e-12

    def test_u_figure2_one_period(self):
        spec = fig2_spec()

        def fn(xi):
            # u as a function of xi (t=0 makes x = xi)
            return eval_uv(spec, xi, 0.0)[0]

        def dfn(xi):
            co = spec.coeffs
            return co.alpha1 * phi_derivatives(spec.case, co.lam, co.mu,
                                               20.0, -10.0, xi)[1]

        # poles sit near xi = 2.507 + n*T; stay well inside one clear stretch
        grid = np.linspace(-4.4, 2.3, 300)
        assert derivative_crosscheck(fn, dfn, grid, 1e-3) < 1e-8

    def test_bad_h(self):
        with pytest.raises(ValueError):
            derivative_crosscheck(lambda x: x, lambda x: np.ones_like(x),
                                  np.linspace(0, 1, 10), 0.0)


class TestDiscriminantDiagnostic:
    def test_prose_forms_disagree(self):
        d = discriminant_diagnostic(5.9, 0.2)
        # lam^2-4mu is positive for this selection; the two prose rewrites
        # disagree with it and with each other
        assert d["lambda_sq_minus_4mu"] > 0
        assert d["lambda_sq_minus_4mu"] != pytest.approx(
            d["k_over_2_minus_2beta"], rel=1e-3)
        assert d["k_over_2_minus_2beta"] != pytest.approx(
            d["k_sq_over_2_minus_2beta"], rel=1e-3)


class TestEstimatePeriod:
    def test_pure_cosine(self):
        x = np.linspace(0, 30, 6000)
        assert estimate_period(np.cos(2.1 * x), x[1] - x[0]) == pytest.approx(
            2 * math.pi / 2.1, abs=5e-3)

    def test_tan_with_poles_as_nan(self):
        x = np.linspace(0, 40, 8000)
        vals = np.tan(x)
        vals[np.abs(np.cos(x)) < 1e-3] = np.nan
        assert estimate_period(vals, x[1] - x[0]) == pytest.approx(math.pi,
                                                                  abs=5e-3)

    def test_aperiodic_rejected(self):
        with pytest.raises(ValueError):
            estimate_period(np.linspace(0, 1, 200) ** 2, 0.01)
