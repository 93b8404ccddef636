"""Self-contained special-function layer.

Complete elliptic integrals K, E by the arithmetic-geometric mean,
Jacobi elliptic functions sn, cn, dn by the descending Landen (AGM phase)
recursion, the imaginary-modulus transformation, Jacobi theta series,
Weierstrass p/zeta/sigma on real rectangular lattices, and thin wrappers
for Gamma, digamma and erf.

Everything here is a pure function of its arguments; there is no module
state, so concurrent use is safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import digamma as _sc_digamma
from scipy.special import gamma as _sc_gamma

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "ellipk",
    "ellipe",
    "ellipk_imag",
    "ellipe_imag",
    "jacobi_sn_cn_dn",
    "jacobi_sn_cn_dn_complex",
    "theta3",
    "theta3_half_shift",
    "theta1",
    "theta1_dw",
    "WeierstrassParams",
    "weierstrass_params",
    "weierstrass_p",
    "weierstrass_p_inverse",
    "weierstrass_zeta",
    "weierstrass_sigma",
    "gamma_fn",
    "digamma",
    "erf",
]

_EPS = 2.220446049250313e-16


# ---------------------------------------------------------------------------
# complete elliptic integrals
# ---------------------------------------------------------------------------

def ellipk(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention.

    K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), computed by the
    AGM iteration: K = pi / (2 agm(1, k')).  Relative error below 1e-13 on
    0 <= k < 1; K diverges logarithmically at k = 1.
    """
    if not 0.0 <= k < 1.0:
        raise DomainError(f"ellipk requires 0 <= k < 1, got {k}")
    a, b = 1.0, math.sqrt((1.0 - k) * (1.0 + k))
    while abs(a - b) > 4.0 * _EPS * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def ellipe(k: float) -> float:
    """Complete elliptic integral of the second kind.

    E(k) = K(k) (1 - sum_n 2^{n-1} c_n^2) with c_0 = k and c_{n+1} the AGM
    defect; E(1) = 1 is handled exactly.
    """
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"ellipe requires 0 <= k <= 1, got {k}")
    if k == 1.0:
        return 1.0
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    pow2 = 0.5
    csum = pow2 * c * c
    while abs(c) > 2.0 * _EPS * a:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pow2 *= 2.0
        csum += pow2 * c * c
    return ellipk(k) * (1.0 - csum)


def ellipk_imag(kappa: float) -> float:
    """K(i kappa): first-kind integral at imaginary modulus.

    Real for kappa >= 0 by the transformation
    K(i kappa) = K(kappa / sqrt(1 + kappa^2)) / sqrt(1 + kappa^2).
    """
    if kappa < 0.0:
        raise DomainError("ellipk_imag requires kappa >= 0")
    r = math.sqrt(1.0 + kappa * kappa)
    return ellipk(kappa / r) / r


def ellipe_imag(kappa: float) -> float:
    """E(i kappa) = sqrt(1 + kappa^2) E(kappa / sqrt(1 + kappa^2))."""
    if kappa < 0.0:
        raise DomainError("ellipe_imag requires kappa >= 0")
    r = math.sqrt(1.0 + kappa * kappa)
    return r * ellipe(kappa / r)


# ---------------------------------------------------------------------------
# Jacobi elliptic functions
# ---------------------------------------------------------------------------

def jacobi_sn_cn_dn(u: float, k: float) -> tuple[float, float, float]:
    """sn, cn, dn of real argument by the descending Landen recursion.

    Builds the AGM scale ladder a_n, c_n, then recovers the amplitude by
    the backward angle recursion phi_{n-1} = (phi_n + asin(c_n/a_n sin
    phi_n)) / 2.  Absolute error below 1e-12 for |u| <= 4 K(k).
    """
    if not 0.0 <= k < 1.0:
        raise DomainError(f"jacobi_sn_cn_dn requires 0 <= k < 1, got {k}")
    if k < 1e-14:
        return math.sin(u), math.cos(u), 1.0
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    a, b = 1.0, kp
    a_hist = [a]
    c_hist = [k]
    n = 0
    while 0.5 * abs(a - b) > 2.0 * _EPS * a and n < 40:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_hist.append(a)
        c_hist.append(c)
        n += 1
    phi = (2.0 ** n) * a_hist[n] * u
    for j in range(n, 0, -1):
        t = c_hist[j] / a_hist[j] * math.sin(phi)
        t = max(-1.0, min(1.0, t))
        phi = 0.5 * (phi + math.asin(t))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(cn * cn + (kp * sn) ** 2)
    return sn, cn, dn


def jacobi_sn_cn_dn_complex(u: complex, k: float) -> tuple[complex, complex, complex]:
    """sn, cn, dn of complex argument via the real/imaginary addition rule.

    Combines values at modulus k (real part) and the complementary modulus
    k' (imaginary part); reduces to the real routine on the real axis.
    """
    u = complex(u)
    if u.imag == 0.0:
        s, c, d = jacobi_sn_cn_dn(u.real, k)
        return complex(s), complex(c), complex(d)
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    s, c, d = jacobi_sn_cn_dn(u.real, k)
    s1, c1, d1 = jacobi_sn_cn_dn(u.imag, kp)
    den = c1 * c1 + (k * s * s1) ** 2
    if den == 0.0:
        raise PoleError("jacobi_sn_cn_dn_complex: argument at a pole")
    sn = (s * d1 + 1j * c * d * s1 * c1) / den
    cn = (c * c1 - 1j * s * d * s1 * d1) / den
    dn = (d * c1 * d1 - 1j * k * k * s * c * s1) / den
    return sn, cn, dn


# ---------------------------------------------------------------------------
# Jacobi theta series
# ---------------------------------------------------------------------------

def theta3(w: complex, tau: complex) -> complex:
    """theta(w | tau) = sum_m exp[i pi (m^2 tau + 2 m w)].

    Truncated when both the +m and -m terms drop below 1e-16 of the
    partial sum; requires Im tau > 0 for convergence.
    """
    tau = complex(tau)
    if tau.imag <= 0.0:
        raise DomainError("theta3 requires Im tau > 0")
    w = complex(w)
    s = 1.0 + 0.0j
    for m in range(1, 512):
        tp = cmath.exp(1j * math.pi * (m * m * tau + 2.0 * m * w))
        tm = cmath.exp(1j * math.pi * (m * m * tau - 2.0 * m * w))
        s += tp + tm
        if abs(tp) + abs(tm) < 1e-16 * max(1.0, abs(s)) and m >= 2:
            return s
    raise ConvergenceError("theta3 series did not converge in 511 terms")


def theta3_half_shift(w: complex, tau: complex) -> complex:
    """theta(w + 1/2 | tau), the antisymmetric companion series."""
    return theta3(complex(w) + 0.5, tau)


def theta1_dw(w: complex, tau: complex, order: int = 0) -> complex:
    """w-derivative of order 0..3 of theta_1(w | tau).

    theta_1(w) = 2 sum_m (-1)^m q^{(m+1/2)^2} sin((2m+1) pi w), q = e^{i pi tau}.
    """
    tau = complex(tau)
    if tau.imag <= 0.0:
        raise DomainError("theta1 requires Im tau > 0")
    if order not in (0, 1, 2, 3):
        raise DomainError("theta1_dw supports order 0..3")
    w = complex(w)
    s = 0.0 + 0.0j
    small_run = 0
    for m in range(0, 512):
        odd = 2 * m + 1
        amp = odd * math.pi
        base = 2.0 * (-1.0) ** m * cmath.exp(1j * math.pi * tau * (m + 0.5) ** 2)
        arg = odd * math.pi * w
        if order == 0:
            term = base * cmath.sin(arg)
        elif order == 1:
            term = base * amp * cmath.cos(arg)
        elif order == 2:
            term = -base * amp ** 2 * cmath.sin(arg)
        else:
            term = -base * amp ** 3 * cmath.cos(arg)
        s += term
        # the envelope |base| e^{(2m+1) pi |Im w|} eventually decays
        # geometrically; two consecutive small terms guard the sin zeros
        env = abs(base) * (amp ** order + 1.0) * math.exp(amp * abs(w.imag))
        small_run = small_run + 1 if env < 1e-17 * max(1.0, abs(s)) else 0
        if small_run >= 2 and m >= 2:
            return s
    raise ConvergenceError("theta1 series did not converge in 512 terms")


def theta1(w: complex, tau: complex) -> complex:
    """theta_1(w | tau), the odd theta function (vanishes at w = 0)."""
    return theta1_dw(w, tau, 0)


# ---------------------------------------------------------------------------
# Weierstrass functions (real rectangular lattices)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassParams:
    """Invariants, roots and periods of a real rectangular Weierstrass lattice.

    e1 > e2 > e3 are the real roots of 4 t^3 - g2 t - g3; omega is the real
    half-period, omega_p = i*omega_imag the imaginary one, eta = zeta(omega).
    """

    g2: float
    g3: float
    e1: float
    e2: float
    e3: float
    omega: float
    omega_imag: float
    eta: float
    k: float
    scale: float  # sqrt(e1 - e3)

    @property
    def omega_p(self) -> complex:
        return 1j * self.omega_imag

    @property
    def tau(self) -> complex:
        return 1j * self.omega_imag / self.omega


def weierstrass_params(g2: float, g3: float) -> WeierstrassParams:
    """Build lattice data from the invariants (three distinct real roots)."""
    roots = np.roots([4.0, 0.0, -g2, -g3])
    scale0 = max(1.0, float(np.max(np.abs(roots))))
    if np.max(np.abs(roots.imag)) > 1e-9 * scale0:
        raise DomainError("weierstrass_params requires three real roots")
    e1, e2, e3 = sorted(roots.real, reverse=True)
    if e1 - e2 < 1e-12 * scale0 or e2 - e3 < 1e-12 * scale0:
        raise DomainError("degenerate lattice (coincident roots) unsupported")
    scale = math.sqrt(e1 - e3)
    k = math.sqrt((e2 - e3) / (e1 - e3))
    kp = math.sqrt((e1 - e2) / (e1 - e3))
    omega = ellipk(k) / scale
    omega_imag = ellipk(kp) / scale
    tau = 1j * omega_imag / omega
    t1p = theta1_dw(0.0, tau, 1)
    t1ppp = theta1_dw(0.0, tau, 3)
    eta = (-t1ppp / (12.0 * omega * t1p)).real
    return WeierstrassParams(g2=float(g2), g3=float(g3), e1=e1, e2=e2, e3=e3,
                             omega=omega, omega_imag=omega_imag, eta=eta,
                             k=k, scale=scale)


def weierstrass_p(z: complex, params: WeierstrassParams) -> complex:
    """p(z) through its sn representation: e3 + (e1 - e3)/sn^2(scale*z; k)."""
    sn, _, _ = jacobi_sn_cn_dn_complex(params.scale * complex(z), params.k)
    if abs(sn) < 1e-8:
        raise PoleError("weierstrass_p evaluated within 1e-8 of a lattice point")
    return params.e3 + (params.scale ** 2) / (sn * sn)


def weierstrass_zeta(z: complex, params: WeierstrassParams) -> complex:
    """zeta(z) = eta z / omega + theta_1'(z/2omega) / (2 omega theta_1)."""
    z = complex(z)
    w = z / (2.0 * params.omega)
    t1 = theta1_dw(w, params.tau, 0)
    if abs(t1) < 1e-280:
        raise PoleError("weierstrass_zeta at a lattice point")
    return params.eta * z / params.omega + theta1_dw(w, params.tau, 1) / (2.0 * params.omega * t1)


def weierstrass_sigma(z: complex, params: WeierstrassParams) -> complex:
    """sigma(z) = 2 omega e^{eta z^2 / 2 omega} theta_1(z/2omega)/theta_1'(0)."""
    z = complex(z)
    w = z / (2.0 * params.omega)
    return (2.0 * params.omega
            * cmath.exp(params.eta * z * z / (2.0 * params.omega))
            * theta1_dw(w, params.tau, 0) / theta1_dw(0.0, params.tau, 1))


def _p_on_ray(params: WeierstrassParams, seg: str, t: float) -> float:
    """Real value of p on the fundamental-rectangle boundary, by segment."""
    if seg == "real":
        z = complex(t, 0.0)
    elif seg == "right":
        z = complex(params.omega, t)
    elif seg == "top":
        z = complex(t, params.omega_imag)
    else:  # "imag"
        z = complex(0.0, t)
    return weierstrass_p(z, params).real


def _expand_down(params, seg, hi, target, factor=0.25):
    """Shrink the parameter toward the corner pole until p passes the target."""
    t = hi * 1e-3
    for _ in range(120):
        if seg == "real" and _p_on_ray(params, seg, t) > target:
            return t
        if seg == "imag" and _p_on_ray(params, seg, t) < target:
            return t
        t *= factor
        if t < 1e-280:
            break
    raise ConvergenceError("weierstrass_p_inverse: bracketing failed")


def weierstrass_p_inverse(H: float, params: WeierstrassParams) -> complex:
    """Solve p(rho) = H for real H on the fundamental-rectangle boundary.

    p is real and monotone on each boundary segment, so the preimage is
    found by 1-D bracketing: rho in (0, omega] for H >= e1, on the right
    edge for e2 <= H <= e1, on the top edge for e3 <= H <= e2, and on the
    imaginary axis for H <= e3.  Residual |p(rho) - H| <= 1e-10.
    """
    H = float(H)
    e1, e2, e3 = params.e1, params.e2, params.e3
    w, wi = params.omega, params.omega_imag
    tol = 1e-13
    if H >= e1:
        if abs(H - e1) < tol * max(1.0, abs(e1)):
            rho = complex(w, 0.0)
        else:
            lo = _expand_down(params, "real", w, H)
            r = brentq(lambda t: _p_on_ray(params, "real", t) - H, lo, w, xtol=1e-15)
            rho = complex(r, 0.0)
    elif H >= e2:
        f = lambda t: _p_on_ray(params, "right", t) - H
        y = brentq(f, 1e-12 * wi, wi * (1.0 - 1e-12), xtol=1e-15) \
            if f(1e-12 * wi) * f(wi * (1.0 - 1e-12)) < 0 else \
            (0.0 if abs(H - e1) < abs(H - e2) else wi)
        rho = complex(w, y)
    elif H >= e3:
        f = lambda t: _p_on_ray(params, "top", t) - H
        if f(1e-12 * w) * f(w * (1.0 - 1e-12)) < 0:
            r = brentq(f, 1e-12 * w, w * (1.0 - 1e-12), xtol=1e-15)
        else:
            r = 0.0 if abs(H - e3) < abs(H - e2) else w
        rho = complex(r, wi)
    else:
        lo = _expand_down(params, "imag", wi, H)
        y = brentq(lambda t: _p_on_ray(params, "imag", t) - H, lo, wi, xtol=1e-15)
        rho = complex(0.0, y)
    resid = abs(weierstrass_p(rho, params) - H)
    if resid > 1e-10 * max(1.0, abs(H)):
        raise ConvergenceError(f"weierstrass_p_inverse residual {resid:.2e}")
    return rho


# ---------------------------------------------------------------------------
# Gamma family and erf
# ---------------------------------------------------------------------------

def _near_nonpositive_integer(s: complex) -> bool:
    s = complex(s)
    return (abs(s.imag) < 1e-12 and s.real < 0.5
            and abs(s.real - round(s.real)) < 1e-12)


def gamma_fn(s: complex) -> complex:
    """Gamma function (complex); raises at the non-positive-integer poles."""
    if _near_nonpositive_integer(s):
        raise PoleError(f"gamma_fn pole at s = {s}")
    return complex(_sc_gamma(complex(s)))


def digamma(s: complex) -> complex:
    """Digamma psi(s) = Gamma'(s)/Gamma(s) (complex)."""
    if _near_nonpositive_integer(s):
        raise PoleError(f"digamma pole at s = {s}")
    return complex(_sc_digamma(complex(s)))


def erf(x: float) -> float:
    """Error function of a real argument."""
    return math.erf(x)
