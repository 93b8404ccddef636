"""Zeta functions: closed forms, Mellin continuation, contour route,
derivative at zero, and the one-loop correction."""

import cmath
import math

import numpy as np
import pytest

from kinkzeta import zetareg
from kinkzeta.errors import BranchCollisionError, DomainError, PoleError
from kinkzeta.resolvent import CaseTag, build_resolvent


class TestVacuumZeta:
    def test_d1_reference_value(self):
        # Gamma(1/2)/Gamma(1) / (2 sqrt(pi)) = 1/2 at s = 1, nu = 1
        assert zetareg.zeta_vacuum(1.0, 1.0, 1) == pytest.approx(0.5, rel=1e-13)

    def test_scaling_homogeneity(self):
        s, d = 0.8, 3
        for c in (0.5, 2.0, 7.3):
            lhs = zetareg.zeta_vacuum(s, c * 1.3, d)
            rhs = zetareg.zeta_vacuum(s, 1.3, d) * c ** (0.5 * d - s)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_mellin_route_d1(self):
        tr = zetareg.vacuum_heat_trace(1.0, 1)
        got = zetareg.mellin_zeta(tr, 1.0).value
        assert got == pytest.approx(zetareg.zeta_vacuum(1.0, 1.0, 1), abs=1e-8)

    def test_mellin_route_d2(self):
        tr = zetareg.vacuum_heat_trace(1.0, 2)
        got = zetareg.mellin_zeta(tr, 2.0).value
        assert got == pytest.approx(zetareg.zeta_vacuum(2.0, 1.0, 2), abs=1e-8)

    def test_pole_structure_residues(self):
        # simple poles at s = d/2 - n; the residue matches the Gamma-function
        # residue (-1)^n/n! divided by Gamma(s0), Richardson-extrapolated
        def residue(s0, nu, d):
            def r(eps):
                return ((eps) * zetareg.zeta_vacuum(s0 + eps, nu, d)).real
            e = 1e-4
            return 2.0 * r(e) - r(2.0 * e)  # removes the O(eps) term

        for d, nu, n in ((1, 1.7, 0), (3, 0.9, 0), (3, 1.0, 1), (2, 1.2, 0)):
            s0 = 0.5 * d - n
            pref = (2 * math.sqrt(math.pi)) ** (-d)
            expect = (pref * (-1.0) ** n / math.factorial(n)
                      / math.gamma(s0) * nu ** (0.5 * d - s0))
            assert residue(s0, nu, d) == pytest.approx(expect, abs=1e-8)

    def test_pole_error(self):
        with pytest.raises(PoleError):
            zetareg.zeta_vacuum(0.5, 1.0, 1)

    def test_vacuum_dprime_at_zero_d1(self):
        # zeta'(0) = -sqrt(nu) for -d^2/dx^2 + nu per unit length
        nu = 2.3
        h = 1e-4
        vals = [zetareg.zeta_vacuum(s, nu, 1).real
                for s in (-2 * h, -h, h, 2 * h)]
        d = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
        assert d == pytest.approx(-math.sqrt(nu), rel=1e-8)


class TestKinkZeta1d:
    def test_forced_values(self):
        assert zetareg.zeta_kink_1d(0.0, 1.0) == pytest.approx(-1.0, abs=1e-13)
        assert zetareg.zeta_kink_1d(1.0, 1.0) == pytest.approx(-0.5, abs=1e-13)

    def test_mellin_matches_closed(self):
        for b in (1.0, 2.0):
            tr = zetareg.erf_heat_trace(b)
            for s in (0.1, 0.3, 0.45):
                got = zetareg.mellin_zeta(tr, s).value
                assert got == pytest.approx(zetareg.zeta_kink_1d(s, b),
                                            abs=1e-7)

    def test_mellin_at_zero(self):
        got = zetareg.mellin_zeta(zetareg.erf_heat_trace(1.0), 0.0).value
        assert got == pytest.approx(-1.0, abs=1e-8)

    def test_zero_trace(self):
        tr = zetareg.zero_heat_trace()
        for s in (0.1, 0.5, 1.5):
            assert zetareg.mellin_zeta(tr, s).value == 0.0


class TestKinkZetaD:
    def test_d1_reduces(self):
        for s in (0.05, 0.3, 1.2):
            assert zetareg.zeta_d_kink(s, 1.4, 1) == pytest.approx(
                zetareg.zeta_kink_1d(s, 1.4), rel=1e-12)

    def test_mellin_route(self):
        for d in (1, 2, 3):
            for s in (0.1, 0.35):
                got = zetareg.zeta_d_kink(s, 1.0, d, method="mellin_numeric")
                ref = zetareg.zeta_d_kink(s, 1.0, d)
                assert got == pytest.approx(ref, abs=1e-6)

    def test_mellin_route_at_zero(self):
        for d in (1, 2, 3):
            got = zetareg.zeta_d_kink(0.0, 1.3, d, method="mellin_numeric")
            ref = zetareg.zeta_d_kink(0.0, 1.3, d)
            assert got == pytest.approx(ref, abs=1e-6)

    def test_variant_is_fixed_rescale(self):
        # the alternative printed normalization differs by (4 pi)^d exactly
        for d in (1, 2, 3, 4):
            s = 0.27
            a = zetareg.zeta_d_kink(s, 1.1, d)
            v = zetareg.zeta_d_kink(s, 1.1, d, method="variant_closed_form")
            assert v == pytest.approx(a * (4.0 * math.pi) ** d, rel=1e-12)

    def test_derivative_symbolic_oracles(self):
        # d=1: 2 ln(2m); d=2: (2m/pi)(1 - ln m); d=3: -m^2/(2 pi)
        for m in (0.5, 1.0, 2.0):
            assert zetareg.derivative_at_zero(m, 1) == pytest.approx(
                2.0 * math.log(2.0 * m), abs=1e-8)
            assert zetareg.derivative_at_zero(m, 2) == pytest.approx(
                2.0 * m / math.pi * (1.0 - math.log(m)), abs=1e-8)
            assert zetareg.derivative_at_zero(m, 3) == pytest.approx(
                -m * m / (2.0 * math.pi), abs=1e-8)

    def test_derivative_richardson_stability(self):
        # recomputing with halved stencils moves the value below 1e-7
        def stencil(m, d, h):
            f = lambda x: zetareg.zeta_d_kink(x, m, d).real
            return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h)
        for m, d in ((0.7, 1), (1.3, 2), (2.1, 3)):
            assert abs(stencil(m, d, 1e-3) - stencil(m, d, 5e-4)) < 1e-7

    def test_d4_smooth_at_zero(self):
        v = zetareg.zeta_d_kink(0.0, 1.0, 4)
        assert v == pytest.approx(-0.25 / math.pi ** 2 / 3.0, rel=1e-12)

    def test_pole_errors(self):
        with pytest.raises(PoleError):
            zetareg.zeta_d_kink(0.5, 1.0, 2)
        with pytest.raises(PoleError):
            zetareg.zeta_d_kink(1.0, 1.0, 3)
        with pytest.raises(DomainError):
            zetareg.zeta_d_kink(0.2, 1.0, 5)


class TestQuantumCorrection:
    def test_linear_in_hbar(self):
        a = zetareg.quantum_correction(1.3, 2, hbar=1.0)
        b = zetareg.quantum_correction(1.3, 2, hbar=2.0)
        assert b == pytest.approx(2.0 * a, rel=1e-12)

    def test_d1_reference(self):
        # -(hbar/2) zeta'(0) with zeta'(0) = 2 ln(2m): m = 1 gives -ln 2
        assert zetareg.quantum_correction(1.0, 1) == pytest.approx(
            -math.log(2.0), abs=1e-8)

    def test_sign_convention(self):
        m = 1.0  # zeta'(0) = 2 ln 2 > 0, so the correction is negative
        assert zetareg.quantum_correction(m, 1) < 0.0

    def test_half_convention(self):
        a = zetareg.quantum_correction(1.5, 3)
        b = zetareg.quantum_correction(1.5, 3, half_convention=True)
        assert b == pytest.approx(0.5 * a, rel=1e-12)


class TestContour:
    def test_case_a_matches_closed_form(self):
        rp = build_resolvent(CaseTag.A, 1.0)
        for s in (0.05, 0.1, 0.2, 0.3, 0.45):
            ev = zetareg.zeta_contour(rp, s)
            assert abs(ev.value - zetareg.zeta_kink_1d(s, 1.0)) < 1e-6

    def test_case_a_negative_s(self):
        # finite and continuous through s values where the Gamma factors of
        # the Mellin route have poles nearby
        rp = build_resolvent(CaseTag.A, 1.0)
        grid = (-0.3, -0.1, 0.05, 0.2, 0.4)
        vals = [zetareg.zeta_contour(rp, s).value for s in grid]
        for s, v in zip(grid, vals):
            assert cmath.isfinite(v)
            assert abs(v - zetareg.zeta_kink_1d(s, 1.0)) < 1e-6

    def test_case_c_matches_mellin_of_two_level_trace(self):
        # independent oracle: Mellin transform of the two-level trace
        # erf(2b sqrt t) + e^{-3 b^2 t} erf(b sqrt t)
        b = 1.0
        rp = build_resolvent(CaseTag.C, b)
        tr = zetareg.HeatTrace(
            source="closed_form_erf",
            eval=lambda t: math.erf(2 * b * math.sqrt(t))
            + math.exp(-3 * b * b * t) * math.erf(b * math.sqrt(t)),
            renormalized=True, large_t=((0.0, 1.0),))
        for s in (0.1, 0.3):
            mel = zetareg.mellin_zeta(tr, s).value
            # the lambda = 3 b^2 bound state enters the Mellin route inside
            # the plateau split; the contour carries it as a pole term
            con = zetareg.zeta_contour(rp, s).value
            assert con.real == pytest.approx(mel.real, abs=1e-6)
            assert abs(con.imag) < 1e-10

    def test_complex_s(self):
        rp = build_resolvent(CaseTag.A, 1.0)
        s = 0.2 + 0.15j
        ev = zetareg.zeta_contour(rp, s)
        assert abs(ev.value - zetareg.zeta_kink_1d(s, 1.0)) < 1e-6

    def test_nahm_self_convergence(self):
        rp = build_resolvent(CaseTag.NAHM, 1.0)
        ev = zetareg.zeta_contour(rp, 0.25)
        assert ev.err_estimate < 1e-6
        assert cmath.isfinite(ev.value)
        # unstable band contributes the e^{-i pi s} phase: genuinely complex
        assert abs(ev.value.imag) > 1e-3

    def test_periodic_strip_guard(self):
        rp = build_resolvent(CaseTag.B, 1.0, k=0.5)
        with pytest.raises(BranchCollisionError):
            zetareg.zeta_contour(rp, 0.7)
        with pytest.raises(BranchCollisionError):
            zetareg.zeta_contour(rp, -0.6)

    def test_method_triangle_case_a(self):
        rp = build_resolvent(CaseTag.A, 1.0)
        tr = zetareg.erf_heat_trace(1.0)
        for s in (0.1, 0.2, 0.25, 0.3, 0.4):
            closed = zetareg.zeta_kink_1d(s, 1.0)
            mellin = zetareg.mellin_zeta(tr, s).value
            contour = zetareg.zeta_contour(rp, s).value
            assert abs(closed - mellin) < 1e-6
            assert abs(closed - contour) < 1e-6
            assert abs(mellin - contour) < 1e-6


class TestDimensionalReduction:
    def test_product_trace_consistency(self):
        # gamma_total = gamma_k x transverse vacuum factor: the Mellin route
        # through the product trace agrees with the closed d-form
        for d in (2, 3):
            tr = zetareg.kink_trace_d(1.0, d)
            for s in (0.05, 0.3):
                got = zetareg.mellin_zeta(tr, s).value
                assert got == pytest.approx(zetareg.zeta_d_kink(s, 1.0, d),
                                            abs=1e-6)
