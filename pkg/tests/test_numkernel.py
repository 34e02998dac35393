"""Special-function kernel tests.

Expected values follow independent routes: brute-force integrals via
scipy.integrate.quad, scipy.special as a reference library implementation,
and the reflection/phase identities evaluated both ways.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import gamma as scipy_gamma
from scipy.special import k0 as scipy_k0

from unruhcoh import (
    AccuracyError,
    DomainError,
    EULER_GAMMA,
    bessel_k_imag_order,
    bessel_k_small_x,
    complex_log_gamma,
    gamma_abs_imag,
    gamma_phase,
)


def test_euler_gamma_matches_quoted_value():
    assert abs(EULER_GAMMA - 0.5772) < 5e-5


class TestComplexLogGamma:
    def test_identity_points(self):
        assert abs(complex_log_gamma(1.0)) < 1e-14
        assert abs(complex_log_gamma(5.0) - math.log(24.0)) < 1e-13

    def test_modulus_on_imaginary_axis_vs_brute_force(self):
        # Independent oracle: Gamma(i) = (1/i) int_0^inf t^i e^-t dt (one
        # integration by parts makes the integral absolutely convergent).
        re = quad(lambda t: math.cos(math.log(t)) * math.exp(-t), 0, 60, limit=400)[0]
        im = quad(lambda t: math.sin(math.log(t)) * math.exp(-t), 0, 60, limit=400)[0]
        gamma_i = complex(re, im) / 1j
        assert abs(gamma_i) ** 2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-9)
        mine = cmath.exp(complex_log_gamma(1j))
        assert mine == pytest.approx(gamma_i, rel=1e-9)
        # the quoted 4-digit value
        assert abs(mine) ** 2 == pytest.approx(0.27203, abs=5e-6)

    def test_recurrence_on_grid(self):
        # exp(log Gamma(z+1)) = z exp(log Gamma(z)) on 100 points, |z| in [0.1, 20]
        rng = np.random.default_rng(7)
        count = 0
        while count < 100:
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if not 0.1 <= abs(z) <= 20.0:
                continue
            if abs(z.imag) < 0.05 and z.real < 0.6:  # keep away from the poles
                continue
            count += 1
            lhs = cmath.exp(complex_log_gamma(z + 1))
            rhs = z * cmath.exp(complex_log_gamma(z))
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)

    def test_against_reference_library(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            z = complex(rng.uniform(-15, 15), rng.uniform(-15, 15))
            if not 0.1 <= abs(z) <= 20.0 or (abs(z.imag) < 0.05 and z.real < 0.6):
                continue
            mine = cmath.exp(complex_log_gamma(z))
            ref = complex(scipy_gamma(z))
            assert abs(mine - ref) <= 1e-12 * abs(ref)

    @pytest.mark.parametrize("z", [0.0, -1.0, -5.0])
    def test_poles_raise(self, z):
        with pytest.raises(DomainError):
            complex_log_gamma(z)


class TestGammaAbsImag:
    @pytest.mark.parametrize("nu", [0.1, 0.5, 1.0, 2.0, 5.0])
    def test_reflection_identity(self, nu):
        val = gamma_abs_imag(nu) ** 2 * nu * math.sinh(math.pi * nu)
        assert val == pytest.approx(math.pi, rel=1e-12)

    def test_decay_at_large_order(self):
        assert gamma_abs_imag(50.0) <= 1e-30

    def test_zero_raises(self):
        with pytest.raises(DomainError):
            gamma_abs_imag(0.0)


class TestGammaPhase:
    def test_small_nu_expansion(self):
        # pi/2 + nu (ln r + gamma) to O(nu^3), checked directly against the
        # log-Gamma kernel at nu = 1e-4, r = 0.5.
        nu, r = 1e-4, 0.5
        exact = gamma_phase(nu, r)
        approx = math.pi / 2 + nu * (math.log(r) + EULER_GAMMA)
        assert abs(exact - approx) < 1e-11

    @given(st.floats(min_value=0.01, max_value=10.0))
    @settings(max_examples=50)
    def test_odd_in_nu(self, nu):
        assert gamma_phase(-nu, 1.0) == pytest.approx(-gamma_phase(nu, 1.0), abs=1e-12)

    def test_range(self):
        for nu in (0.3, 2.0, 7.0):
            for r in (1e-3, 0.7, 42.0):
                phi = gamma_phase(nu, r)
                assert -math.pi < phi <= math.pi

    def test_continuous_in_r(self):
        # no 2 pi branch jumps across six decades of r at fixed nu
        nu = 0.1
        rs = np.logspace(-3, 3, 4001)
        phis = np.array([gamma_phase(nu, r) for r in rs])
        assert np.max(np.abs(np.diff(phis))) < 0.01

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            gamma_phase(0.0, 1.0)
        with pytest.raises(DomainError):
            gamma_phase(1.0, 0.0)
        with pytest.raises(DomainError):
            gamma_phase(1.0, -2.0)


class TestBesselKImagOrder:
    def test_k0_reference(self):
        assert bessel_k_imag_order(0.0, 1.0) == pytest.approx(
            float(scipy_k0(1.0)), rel=1e-12)

    def test_even_in_nu(self):
        assert bessel_k_imag_order(1.0, 0.5) == bessel_k_imag_order(-1.0, 0.5)

    def test_result_is_real_float(self):
        val = bessel_k_imag_order(0.7, 0.3)
        assert isinstance(val, float)

    @pytest.mark.parametrize("nu,x,tol", [(1.0, 0.01, 1e-3), (0.5, 1e-4, 1e-4)])
    def test_matches_small_x_form(self, nu, x, tol):
        assert bessel_k_imag_order(nu, x) == pytest.approx(
            bessel_k_small_x(nu, x), rel=tol)

    def test_error_ratio_halves_below_threshold(self):
        # asymptotic error is O(x^2): halving x should at least halve it
        nu = 0.5
        x = 1e-2 * max(1.0, nu)
        err = [abs(bessel_k_imag_order(nu, xx) - bessel_k_small_x(nu, xx))
               / abs(bessel_k_imag_order(nu, xx)) for xx in (x, 0.5 * x)]
        assert err[1] <= 0.55 * err[0]

    def test_domain_error(self):
        with pytest.raises(DomainError):
            bessel_k_imag_order(1.0, 0.0)
        with pytest.raises(DomainError):
            bessel_k_imag_order(1.0, -1.0)

    def test_exhausted_refinement_reports_accuracy(self):
        # The refinement budget underlying the Bessel evaluation reports the
        # achieved tolerance when it cannot stabilize.
        from unruhcoh._quad import edges_linear, refine_to_tolerance

        with pytest.raises(AccuracyError) as exc:
            refine_to_tolerance(lambda t: np.cos(500.0 * t),
                                edges_linear(0.0, 10.0, 2), 1e-12,
                                max_doublings=2)
        assert exc.value.achieved > 1e-12


class TestBesselKSmallX:
    def test_phase_identity_exact(self):
        nu, x = 0.3, 0.01
        lhs = bessel_k_small_x(nu, x) ** 2
        rhs = (math.pi / (nu * math.sinh(math.pi * nu))
               * math.cos(gamma_phase(nu, x / 2)) ** 2)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_invariant_under_nu_negation(self):
        assert bessel_k_small_x(0.4, 0.02) == bessel_k_small_x(-0.4, 0.02)

    def test_agrees_with_integral_route(self):
        assert bessel_k_small_x(0.5, 1e-4) == pytest.approx(
            bessel_k_imag_order(0.5, 1e-4), rel=1e-4)

    def test_warns_outside_validity(self):
        with pytest.warns(UserWarning, match="asymptotic"):
            bessel_k_small_x(0.5, 0.2)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bessel_k_small_x(0.0, 0.01)
        with pytest.raises(DomainError):
            bessel_k_small_x(0.5, 0.0)
