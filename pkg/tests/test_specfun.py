"""Special-function layer against independent oracles.

Oracles: adaptive quadrature of the defining integrals, direct series
summation, scipy's independent implementations, and finite differences.
"""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import ellipj

from kinkzeta import specfun
from kinkzeta.errors import DomainError, PoleError


def k_quadrature(k2: float) -> float:
    # oracle: direct integral, works for k^2 of either sign
    val, _ = quad(lambda th: 1.0 / math.sqrt(1.0 - k2 * math.sin(th) ** 2),
                  0.0, math.pi / 2.0, epsabs=1e-13, epsrel=1e-13)
    return val


def e_quadrature(k2: float) -> float:
    val, _ = quad(lambda th: math.sqrt(1.0 - k2 * math.sin(th) ** 2),
                  0.0, math.pi / 2.0, epsabs=1e-13, epsrel=1e-13)
    return val


class TestEllipticIntegrals:
    def test_k_at_zero(self):
        assert specfun.ellipk(0.0) == pytest.approx(math.pi / 2.0, abs=1e-15)

    def test_k_against_quadrature(self):
        k = 1.0 / math.sqrt(2.0)
        assert specfun.ellipk(k) == pytest.approx(k_quadrature(k * k), rel=1e-12)

    def test_k_near_one_finite_and_domain_error(self):
        assert math.isfinite(specfun.ellipk(0.999999))
        with pytest.raises(DomainError):
            specfun.ellipk(1.0)

    def test_e_trivial_values(self):
        assert specfun.ellipe(0.0) == pytest.approx(math.pi / 2.0, abs=1e-15)
        assert specfun.ellipe(1.0) == 1.0

    def test_e_against_quadrature(self):
        assert specfun.ellipe(0.5) == pytest.approx(e_quadrature(0.25), rel=1e-12)

    def test_imag_modulus_reduces_to_k0(self):
        assert specfun.ellipk_imag(0.0) == pytest.approx(math.pi / 2.0, abs=1e-14)

    def test_imag_modulus_against_defining_integral(self):
        # K(i kappa), E(i kappa) are the k^2 < 0 integrals, real valued
        kappa = 1.0
        assert specfun.ellipk_imag(kappa) == pytest.approx(
            k_quadrature(-kappa * kappa), rel=1e-12)
        assert specfun.ellipe_imag(kappa) == pytest.approx(
            e_quadrature(-kappa * kappa), rel=1e-12)

    def test_imag_modulus_identity(self):
        k1 = 1.0 / math.sqrt(2.0)
        assert specfun.ellipk_imag(1.0) == pytest.approx(
            specfun.ellipk(k1) / math.sqrt(2.0), rel=1e-14)
        assert specfun.ellipe_imag(1.0) == pytest.approx(
            math.sqrt(2.0) * specfun.ellipe(k1), rel=1e-14)

    def test_legendre_relation(self):
        for k in np.arange(0.1, 0.95, 0.1):
            kp = math.sqrt(1.0 - k * k)
            K, E = specfun.ellipk(k), specfun.ellipe(k)
            Kp, Ep = specfun.ellipk(kp), specfun.ellipe(kp)
            assert E * Kp + Ep * K - K * Kp == pytest.approx(math.pi / 2.0,
                                                             abs=1e-12)


class TestJacobiFunctions:
    def test_trig_limit(self):
        for u in (-2.0, 0.3, 1.7):
            sn, cn, dn = specfun.jacobi_sn_cn_dn(u, 0.0)
            assert sn == pytest.approx(math.sin(u), abs=1e-14)
            assert cn == pytest.approx(math.cos(u), abs=1e-14)
            assert dn == 1.0

    def test_origin(self):
        sn, cn, dn = specfun.jacobi_sn_cn_dn(0.0, 0.77)
        assert (sn, cn, dn) == (0.0, 1.0, 1.0)

    def test_quarter_period(self):
        k = 0.65
        K = specfun.ellipk(k)
        sn, cn, dn = specfun.jacobi_sn_cn_dn(K, k)
        assert sn == pytest.approx(1.0, abs=1e-12)
        assert abs(cn) < 1e-12
        assert dn == pytest.approx(math.sqrt(1.0 - k * k), abs=1e-12)

    def test_identities_random(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            k = rng.uniform(0.05, 0.95)
            u = rng.uniform(-4.0, 4.0) * specfun.ellipk(k)
            sn, cn, dn = specfun.jacobi_sn_cn_dn(u, k)
            assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
            assert dn * dn + k * k * sn * sn == pytest.approx(1.0, abs=1e-12)

    def test_against_scipy(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            k = rng.uniform(0.05, 0.98)
            u = rng.uniform(-4.0, 4.0) * specfun.ellipk(k)
            sn, cn, dn = specfun.jacobi_sn_cn_dn(u, k)
            s2, c2, d2, _ = ellipj(u, k * k)
            assert sn == pytest.approx(s2, abs=1e-12)
            assert cn == pytest.approx(c2, abs=1e-12)
            assert dn == pytest.approx(d2, abs=1e-12)

    def test_complex_reduces_to_real(self):
        sn, cn, dn = specfun.jacobi_sn_cn_dn_complex(1.1 + 0.0j, 0.6)
        s, c, d = specfun.jacobi_sn_cn_dn(1.1, 0.6)
        assert sn == pytest.approx(s) and cn == pytest.approx(c)
        assert dn == pytest.approx(d)

    def test_complex_identities(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            k = rng.uniform(0.1, 0.9)
            u = complex(rng.uniform(-2, 2), rng.uniform(-0.8, 0.8))
            sn, cn, dn = specfun.jacobi_sn_cn_dn_complex(u, k)
            assert abs(sn * sn + cn * cn - 1.0) < 1e-11
            assert abs(dn * dn + k * k * sn * sn - 1.0) < 1e-11

    def test_complex_imaginary_axis(self):
        # sn(iy, k) = i sc(y, k'), purely imaginary
        k = 0.6
        kp = math.sqrt(1 - k * k)
        y = 0.7
        sn, _, _ = specfun.jacobi_sn_cn_dn_complex(1j * y, k)
        s1, c1, _ = specfun.jacobi_sn_cn_dn(y, kp)
        assert sn == pytest.approx(1j * s1 / c1, abs=1e-12)


class TestTheta:
    def test_direct_summation_oracle(self):
        tau = 1j
        direct = sum(cmath.exp(1j * math.pi * (m * m * tau))
                     for m in range(-50, 51))
        val = specfun.theta3(0.0, tau)
        assert val.real > 0 and abs(val.imag) < 1e-15
        assert val == pytest.approx(direct, abs=1e-14)

    def test_period_one(self):
        rng = np.random.default_rng(3)
        tau = 0.1 + 0.8j
        for _ in range(10):
            w = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
            assert specfun.theta3(w + 1.0, tau) == pytest.approx(
                specfun.theta3(w, tau), abs=1e-12)

    def test_quasi_periodicity(self):
        # theta(w + tau) = exp(-i pi tau - 2 i pi w) theta(w)
        rng = np.random.default_rng(5)
        tau = 0.93j
        for _ in range(10):
            w = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2))
            lhs = specfun.theta3(w + tau, tau)
            rhs = cmath.exp(-1j * math.pi * tau - 2j * math.pi * w) \
                * specfun.theta3(w, tau)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            specfun.theta3(0.0, -0.5j)

    def test_half_shift(self):
        tau = 0.77j
        w = 0.21 + 0.05j
        assert specfun.theta3_half_shift(w, tau) == pytest.approx(
            specfun.theta3(w + 0.5, tau))

    def test_theta1_odd_and_zero(self):
        tau = 0.65j
        assert abs(specfun.theta1(0.0, tau)) < 1e-15
        w = 0.23
        assert specfun.theta1(-w, tau) == pytest.approx(-specfun.theta1(w, tau))


class TestWeierstrass:
    def setup_method(self):
        self.params = specfun.weierstrass_params(3.1, 0.4)

    def test_roots_sum_and_cubic(self):
        p = self.params
        assert p.e1 + p.e2 + p.e3 == pytest.approx(0.0, abs=1e-12)
        for e in (p.e1, p.e2, p.e3):
            assert 4 * e ** 3 - p.g2 * e - p.g3 == pytest.approx(
                0.0, abs=1e-12 * max(1.0, abs(e) ** 3))

    def test_nahm_invariants(self):
        # g2 = w^4, g3 = 0 gives the root triple (w^2/2, 0, -w^2/2)
        w = 1.3
        p = specfun.weierstrass_params(w ** 4, 0.0)
        assert p.e1 == pytest.approx(w * w / 2.0, rel=1e-12)
        assert p.e2 == pytest.approx(0.0, abs=1e-12)
        assert p.e3 == pytest.approx(-w * w / 2.0, rel=1e-12)

    def test_half_period_values(self):
        p = self.params
        assert specfun.weierstrass_p(p.omega, p) == pytest.approx(p.e1, abs=1e-10)
        assert specfun.weierstrass_p(p.omega_p, p).real == pytest.approx(
            p.e3, abs=1e-10)

    def test_ode_residual(self):
        # (p')^2 = 4 p^3 - g2 p - g3, with p' from high-order differences
        p = self.params
        rng = np.random.default_rng(17)
        h = 1e-4
        count = 0
        while count < 100:
            z = complex(rng.uniform(0.1, 2 * p.omega - 0.1),
                        rng.uniform(0.1, p.omega_imag - 0.1))
            try:
                wp = specfun.weierstrass_p(z, p)
                d1 = (specfun.weierstrass_p(z - 2 * h, p)
                      - 8 * specfun.weierstrass_p(z - h, p)
                      + 8 * specfun.weierstrass_p(z + h, p)
                      - specfun.weierstrass_p(z + 2 * h, p)) / (12 * h)
            except PoleError:
                continue
            if abs(wp) > 50:
                continue
            resid = d1 * d1 - 4 * wp ** 3 + p.g2 * wp + p.g3
            assert abs(resid) < 1e-8 * max(1.0, abs(wp) ** 3)
            count += 1

    def test_pole_error(self):
        with pytest.raises(PoleError):
            specfun.weierstrass_p(1e-12, self.params)

    def test_inverse_half_periods(self):
        p = self.params
        assert specfun.weierstrass_p_inverse(p.e1, p) == pytest.approx(
            p.omega, abs=1e-9)
        rho3 = specfun.weierstrass_p_inverse(p.e3, p)
        assert rho3 == pytest.approx(p.omega_p, abs=1e-9)

    def test_inverse_round_trip(self):
        p = self.params
        rng = np.random.default_rng(23)
        for _ in range(20):
            H = rng.uniform(-8.0, 8.0)
            rho = specfun.weierstrass_p_inverse(H, p)
            assert abs(specfun.weierstrass_p(rho, p) - H) < 1e-10 * max(1, abs(H))

    def test_zeta_derivative_is_minus_p(self):
        p = self.params
        h = 1e-6
        z = 0.4 + 0.3j
        dz = (specfun.weierstrass_zeta(z + h, p)
              - specfun.weierstrass_zeta(z - h, p)) / (2 * h)
        assert dz == pytest.approx(-specfun.weierstrass_p(z, p), rel=1e-7)

    def test_sigma_behaves_like_u_near_zero(self):
        p = self.params
        u = 1e-5
        assert specfun.weierstrass_sigma(u, p) == pytest.approx(u, rel=1e-8)

    def test_legendre_period_relation(self):
        # eta omega' - eta' omega = i pi / 2
        p = self.params
        etap = specfun.weierstrass_zeta(p.omega_p + p.omega, p) \
            - specfun.weierstrass_zeta(p.omega, p)
        lhs = p.eta * p.omega_p - etap * p.omega
        assert lhs == pytest.approx(1j * math.pi / 2.0, abs=1e-10)


class TestGammaFamily:
    def test_gamma_half(self):
        assert specfun.gamma_fn(0.5).real == pytest.approx(math.sqrt(math.pi),
                                                           rel=1e-14)

    def test_recurrence_random_complex(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            s = complex(rng.uniform(0.1, 5.0), rng.uniform(-2.0, 2.0))
            lhs = specfun.gamma_fn(s + 1)
            rhs = s * specfun.gamma_fn(s)
            assert abs(lhs - rhs) < 1e-12 * abs(lhs)

    def test_pole_errors(self):
        for s in (0.0, -1.0, -5.0):
            with pytest.raises(PoleError):
                specfun.gamma_fn(s)
            with pytest.raises(PoleError):
                specfun.digamma(s)

    def test_digamma_one_against_series(self):
        # psi(1) = -gamma_E = lim (ln N - sum_{n<=N} 1/n); Richardson in 1/N
        def partial(N):
            return math.log(N) - sum(1.0 / n for n in range(1, N + 1)) \
                + 1.0 / (2.0 * N)
        est = partial(200000)  # correction term leaves O(1/N^2)
        assert specfun.digamma(1.0).real == pytest.approx(est, abs=1e-10)

    def test_erf_limits(self):
        assert specfun.erf(0.0) == 0.0
        assert specfun.erf(10.0) == pytest.approx(1.0, abs=1e-15)
