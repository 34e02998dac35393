"""Oracle tests: regularized half-line benchmarks, extrapolation behavior,
conjugation symmetry, and agreement with closed forms on spot points (the
full standard grid runs in the acceptance suite)."""

from __future__ import annotations

import cmath
import math

import pytest

from unruhcoh import (
    Boundary,
    Dim,
    DomainError,
    Motion,
    PhysParams,
    QuadratureConfig,
    ScenarioSpec,
    amplitude_coherent,
    amplitude_vac,
    bessel_k_imag_order,
    bessel_k_small_x,
    bessel_oracle,
    complex_log_gamma,
    gamma_half_line,
    p_numeric,
    transition,
)

MIRROR_1D = ScenarioSpec(Dim.D1, Motion.ACCELERATED, Boundary.MIRROR)


def gamma_continuation(nu: float, b: float) -> complex:
    """Gamma(i nu) (eps - i b)^{-i nu} at eps -> 0 with the principal log."""
    return cmath.exp(complex_log_gamma(1j * nu)
                     - 1j * nu * complex(math.log(abs(b)),
                                         -math.copysign(math.pi / 2, b)))


class TestQuadratureConfig:
    def test_defaults_valid(self):
        cfg = QuadratureConfig()
        assert cfg.epsilon_ladder[0] > cfg.epsilon_ladder[-1] > 0

    @pytest.mark.parametrize("ladder", [(0.1, 0.2), (0.1, -0.05), (0.2,),
                                        (0.1, 0.1)])
    def test_bad_ladder_rejected(self, ladder):
        with pytest.raises(DomainError):
            QuadratureConfig(epsilon_ladder=ladder)

    def test_bad_rel_tol_rejected(self):
        with pytest.raises(DomainError):
            QuadratureConfig(rel_tol=0.0)


class TestGammaBenchmark:
    @pytest.mark.parametrize("nu", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
    def test_extrapolation_hits_continuation(self, nu, b):
        res = gamma_half_line(nu, b)
        target = gamma_continuation(nu, b)
        assert abs(res.value - target) / abs(target) < 1e-6
        assert res.converged

    def test_error_estimate_bound_on_convergence(self):
        res = gamma_half_line(1.0, 1.0)
        assert res.converged
        assert res.extrapolation_error_estimate < 1e-6 * abs(res.value)

    def test_ladder_extension_reduces_estimate(self):
        base = (0.2, 0.1, 0.05, 0.025)
        extended = base + (0.0125,)
        e1 = gamma_half_line(1.0, 1.0, QuadratureConfig(epsilon_ladder=base)
                             ).extrapolation_error_estimate
        e2 = gamma_half_line(1.0, 1.0, QuadratureConfig(epsilon_ladder=extended)
                             ).extrapolation_error_estimate
        assert e2 <= e1

    def test_tightening_rel_tol_never_raises_estimate(self):
        e1 = gamma_half_line(1.0, 1.0, QuadratureConfig(rel_tol=1e-6)
                             ).extrapolation_error_estimate
        e2 = gamma_half_line(1.0, 1.0, QuadratureConfig(rel_tol=5e-7)
                             ).extrapolation_error_estimate
        assert e2 <= e1

    def test_short_ladder_flags_non_convergence(self):
        cfg = QuadratureConfig(epsilon_ladder=(0.4, 0.2), rel_tol=1e-10)
        res = gamma_half_line(0.5, 0.5, cfg)
        assert not res.converged
        assert res.extrapolation_error_estimate > 1e-10 * abs(res.value)


class TestAmplitudes:
    def test_vacuum_amplitude_matches_continuation_free_accel(self):
        # single-term scenario: A = Gamma continuation / (a sqrt(4 pi omega))
        p = PhysParams(a=1.0, omega=1.0, Omega=1.0)
        sc = ScenarioSpec(Dim.D1, Motion.ACCELERATED, Boundary.FREE)
        res = amplitude_vac(sc, p)
        target = gamma_continuation(1.0, 1.0) / math.sqrt(4 * math.pi)
        assert abs(res.value - target) / abs(target) < 1e-6

    def test_coherent_conjugation_symmetry(self):
        p = PhysParams(a=1.0, omega=0.7, Omega=1.3, z0=0.4)
        plus = amplitude_coherent(MIRROR_1D, p, sign=+1)
        minus = amplitude_coherent(MIRROR_1D, p, sign=-1)
        assert abs(plus.value) == pytest.approx(abs(minus.value), rel=1e-12)

    def test_deexcitation_uses_negated_frequency(self):
        p = PhysParams(a=1.0, omega=1.0, Omega=0.8)
        sc = ScenarioSpec(Dim.D1, Motion.ACCELERATED, Boundary.FREE)
        de = amplitude_vac(sc, p, sign=-1)
        target = gamma_continuation(-0.8, 1.0) / math.sqrt(4 * math.pi)
        assert abs(de.value - target) / abs(target) < 1e-6


class TestPNumeric:
    @pytest.mark.parametrize("scenario", [
        ScenarioSpec(Dim.D1, Motion.ACCELERATED, Boundary.MIRROR),
        ScenarioSpec(Dim.D1, Motion.STATIC, Boundary.FREE),
    ], ids=lambda s: s.label())
    def test_matches_closed_form(self, scenario):
        p = PhysParams(a=1.0, omega=1.0, Omega=1.0, z0=0.3)
        cf, nm = transition(scenario, p), p_numeric(scenario, p)
        assert nm.converged
        for k in ("p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"):
            assert getattr(nm, k) == pytest.approx(getattr(cf, k), rel=1e-4)

    def test_static_mirror_example_point(self):
        p = PhysParams(a=1.0, omega=0.7, Omega=1.3, z0=0.5)
        sc = ScenarioSpec(Dim.D1, Motion.STATIC, Boundary.MIRROR)
        cf, nm = transition(sc, p), p_numeric(sc, p)
        for k in ("p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"):
            assert getattr(nm, k) == pytest.approx(getattr(cf, k), rel=1e-4)

    def test_zero_amplitude_short_circuits(self):
        p = PhysParams(a=1.0, omega=1.0, Omega=1.0, alpha_k=0.0)
        nm = p_numeric(ScenarioSpec(Dim.D1, Motion.ACCELERATED, Boundary.FREE), p)
        assert nm.p_alpha_ex == 0.0
        assert nm.p_alpha_de == 0.0

    def test_coherent_parts_agree_to_tolerance(self):
        p = PhysParams(a=2.0, omega=0.5, Omega=1.0, z0=0.3)
        nm = p_numeric(MIRROR_1D, p)
        assert nm.p_alpha_ex == pytest.approx(nm.p_alpha_de, rel=1e-6)

    def test_non_convergence_propagates(self):
        cfg = QuadratureConfig(epsilon_ladder=(0.4, 0.2), rel_tol=1e-10)
        p = PhysParams(a=1.0, omega=1.0, Omega=1.0, z0=0.3)
        nm = p_numeric(MIRROR_1D, p, cfg)
        assert not nm.converged

    def test_exact_bessel_branch_agreement_3d(self):
        # the oracle integrates the exact (3+1)D accelerated mode, so it must
        # reproduce the exact-Bessel branch even outside the large-a regime
        p = PhysParams(a=5.0, omega=1.0, Omega=1.0, theta=math.pi / 3,
                       z0=0.2, kperp_dot_xperp=0.4)
        for boundary in Boundary:
            sc = ScenarioSpec(Dim.D3, Motion.ACCELERATED, boundary)
            cf, nm = transition(sc, p), p_numeric(sc, p)
            assert nm.p_alpha_ex == pytest.approx(cf.exact.p_alpha, rel=1e-6)
            if cf.exact.p_vac_ex is not None:
                assert nm.p_vac_ex == pytest.approx(cf.exact.p_vac_ex, rel=1e-6)
                assert nm.p_vac_de == pytest.approx(cf.exact.p_vac_de, rel=1e-6)

    def test_static_3d_matches_closed_form_at_quadrature_level(self):
        # the closed forms follow exactly from the asymptotic (U, V) mode the
        # oracle integrates, so agreement is at quadrature tolerance
        p = PhysParams(a=100.0, omega=1.0, Omega=1.0, theta=math.pi / 4,
                       z0=0.2, kperp_dot_xperp=0.7)
        for boundary in Boundary:
            sc = ScenarioSpec(Dim.D3, Motion.STATIC, boundary)
            cf, nm = transition(sc, p), p_numeric(sc, p)
            for k in ("p_vac_ex", "p_vac_de", "p_alpha_ex", "p_alpha_de"):
                assert getattr(nm, k) == pytest.approx(getattr(cf, k), rel=1e-6)


class TestBesselOracle:
    def test_k0_product_form(self):
        assert bessel_oracle(0.0, 1.0, 1.0) == pytest.approx(0.4210244382, abs=1e-9)

    def test_unit_z_reduces_to_cosh_route(self):
        for nu, x in ((0.5, 0.8), (1.0, 2.0)):
            assert bessel_oracle(nu, x, 1.0) == pytest.approx(
                bessel_k_imag_order(nu, x), rel=1e-8)

    def test_split_argument_invariance(self):
        # K depends only on the product x z
        a = bessel_oracle(0.7, 0.5, 2.0)
        b = bessel_oracle(0.7, 1.0, 1.0)
        assert a == pytest.approx(b, rel=1e-10)

    def test_small_product_matches_asymptotic(self):
        assert bessel_oracle(0.5, 0.01, 1.0) == pytest.approx(
            bessel_k_small_x(0.5, 0.01), rel=1e-3)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            bessel_oracle(0.5, -1.0, 1.0)
        with pytest.raises(DomainError):
            bessel_oracle(0.5, 1.0, 0.0)
