"""Diagonal resolvents of the five fluctuation operators.

For each case the Laplace-domain Green-function diagonal is the algebraic
form G(p, x) = P(p, z(x)) / (2 sqrt(Q(p))) with

    z = sech^2(bx)                         (kinks A, C)
    z = cn^2(bx; k)                        (periodic B, D; Nahm uses the
                                            imaginary-modulus real section
                                            z = cd^2(sqrt2 b x; 1/sqrt2))

and P, Q polynomial in p.  G satisfies the bilinear identity

    2 G G'' - (G')^2 - 4 (u(x) + p) G^2 + 1 = 0,

which in the z variable becomes
b^2 (rho (2 P P'' - P'^2) + rho' P P') - (p + u) P^2 + Q = 0 with
rho = z^2(1-z) for kinks and z(1-z)(1-k^2+k^2 z) for the periodic cases.

The module also assembles the per-period trace of G (gamma_hat), the
relative spectral density along the branch cuts of sqrt(Q), and its
inverse Laplace transform (the relative heat trace).

Case tags: A = SG kink, B = SG periodic, C = GL kink, D = GL periodic,
NAHM = the k^2 = -1 continuation of D.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from . import specfun
from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "CaseTag",
    "ResolventPolynomial",
    "build_resolvent",
    "hermit_residual",
    "band_edges",
    "gamma_hat",
    "invert_laplace_gamma",
    "TraceInversion",
]

_K1 = 1.0 / math.sqrt(2.0)
_QUAD_OPTS = dict(epsabs=1e-12, epsrel=1e-11, limit=250)


class CaseTag(str, Enum):
    A = "a"        # SG kink
    B = "b"        # SG periodic
    C = "c"        # GL kink
    D = "d"        # GL periodic
    NAHM = "nahm"  # Nahm (k^2 = -1 member of D)


def _polyval(coeffs, x):
    """Evaluate sum_j coeffs[j] x^j (ascending order)."""
    acc = 0.0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _polyder(coeffs):
    return tuple(j * coeffs[j] for j in range(1, len(coeffs)))


@dataclass(frozen=True)
class ResolventPolynomial:
    """P(p, z), Q(p) and the ordered real roots of Q for one case.

    p_rows holds the z-polynomials multiplying ascending powers of p, so
    P(p, z) = sum_i p_rows[i](z) * p^i.  q_coeffs are ascending and monic.
    roots are sorted ascending; double roots appear twice.
    """

    case: CaseTag
    b: float
    k: float | None
    p_rows: tuple[tuple[float, ...], ...]
    q_coeffs: tuple[float, ...]
    roots: tuple[float, ...]
    rho_coeffs: tuple[float, ...]
    u_coeffs: tuple[float, ...]
    nu: float                     # continuum edge of the constant background
    period: float                 # inf for kinks
    moments: tuple[float, ...]    # (I0, Iz, Izz); I0 = inf for kinks

    # -- polynomial data ----------------------------------------------------
    def P(self, p, z):
        return sum(_polyval(row, z) * p ** i for i, row in enumerate(self.p_rows))

    def Q(self, p):
        return _polyval(self.q_coeffs, p)

    def rho(self, z):
        return _polyval(self.rho_coeffs, z)

    def u_of_z(self, z):
        return _polyval(self.u_coeffs, z)

    @property
    def is_kink(self) -> bool:
        return self.case in (CaseTag.A, CaseTag.C)

    # -- coordinate maps ----------------------------------------------------
    def z_of_x(self, x: float) -> float:
        if self.is_kink:
            return 1.0 / math.cosh(self.b * x) ** 2
        if self.case is CaseTag.NAHM:
            _, cn, dn = specfun.jacobi_sn_cn_dn(math.sqrt(2.0) * self.b * x, _K1)
            return (cn / dn) ** 2
        _, cn, _ = specfun.jacobi_sn_cn_dn(self.b * x, self.k)
        return cn * cn

    def u_of_x(self, x: float) -> float:
        return self.u_of_z(self.z_of_x(x))

    # -- square-root branch -------------------------------------------------
    def sqrt_q(self, p: complex) -> complex:
        """sqrt(Q) with per-factor principal logarithms.

        Continuous from p -> +inf along any path avoiding the real cuts;
        on the real axis this realizes the Im p -> 0+ boundary value, and
        it is real with the correct alternating sign on the spectral gaps.
        """
        pc = complex(p)
        acc = 0.0 + 0.0j
        for r in self.roots:
            acc += cmath.log(pc - r)
        return cmath.exp(0.5 * acc)

    def green_diag(self, p: complex, x: float) -> complex:
        """G(p, x) = P(p, z(x)) / (2 sqrt(Q(p)))."""
        return self.P(complex(p), self.z_of_x(x)) / (2.0 * self.sqrt_q(p))

    # -- trace numerators ---------------------------------------------------
    def _numerator(self, p: complex, relative: bool) -> complex:
        """Numerator of the period/relative trace of G.

        relative drops the z-independent column (the constant-background
        Green function), leaving the finite kink moments; otherwise the
        full per-period moments weight every column.
        """
        I0, Iz, Izz = self.moments
        weights = (0.0 if relative else I0, Iz, Izz)
        acc = 0.0 + 0.0j
        for i, row in enumerate(self.p_rows):
            coef = sum(row[j] * weights[j] for j in range(len(row)))
            acc += coef * complex(p) ** i
        return acc

    def gamma_hat(self, p: complex) -> complex:
        """Laplace-domain trace: per period for B/D/NAHM, the renormalized
        (background-subtracted) kink trace for A/C.

        Raises within 1e-6 of a root of Q, where the form is singular.
        """
        pc = complex(p)
        if min(abs(pc - r) for r in self.roots) < 1e-6:
            raise PoleError("gamma_hat within 1e-6 of a branch point")
        return self._numerator(pc, self.is_kink) / (2.0 * self.sqrt_q(pc))

    def gamma_hat_background(self, p: complex) -> complex:
        """Constant-background trace per unit length, 1/(2 sqrt(p + nu))."""
        return 1.0 / (2.0 * cmath.sqrt(complex(p) + self.nu))

    # -- spectral structure -------------------------------------------------
    def cut_segments(self) -> list[tuple[float, float]]:
        """Cuts of sqrt(Q) on the real p axis (Q < 0), as (lo, hi) pairs
        with lo = -inf on the unbounded segment, ordered descending in p."""
        distinct: list[tuple[float, int]] = []
        for r in self.roots:
            if distinct and abs(r - distinct[-1][0]) < 1e-9 * max(1.0, abs(r)):
                distinct[-1] = (distinct[-1][0], distinct[-1][1] + 1)
            else:
                distinct.append((r, 1))
        segs = []
        parity = 0
        pts = [r for r, _ in distinct]
        mults = [m for _, m in distinct]
        for i in range(len(pts) - 1, -1, -1):
            parity = (parity + mults[i]) % 2
            lo = pts[i - 1] if i > 0 else -math.inf
            if parity == 1:
                segs.append((lo, pts[i]))
        return segs

    def pole_terms(self) -> list[tuple[float, float]]:
        """(lambda, residue) for the poles of the relative trace at the
        double roots of Q (bound states of the kink operators)."""
        out = []
        i = 0
        roots = self.roots
        while i < len(roots) - 1:
            if abs(roots[i] - roots[i + 1]) < 1e-9 * max(1.0, abs(roots[i])):
                p0 = 0.5 * (roots[i] + roots[i + 1])
                others = list(roots[:i]) + list(roots[i + 2:])
                acc = 0.0 + 0.0j
                for r in others:
                    acc += cmath.log(complex(p0) - r)
                res = self._numerator(p0, self.is_kink) / (2.0 * cmath.exp(0.5 * acc))
                out.append((-p0, res.real))
                i += 2
            else:
                i += 1
        return out

    def density(self, lam: float) -> float:
        """Spectral density at lambda (per period, or relative for kinks):
        rho(lambda) = (1/pi) Im gamma_hat(p - i0) at p = -lambda.

        Zero off the bands; do not call at band edges.
        """
        p = -lam
        on_cut = any(lo < p < hi for lo, hi in self.cut_segments())
        if not on_cut:
            return 0.0
        val = self._numerator(p, self.is_kink) / (2.0 * self.sqrt_q(p))
        return -val.imag / math.pi

    def bands(self) -> list[tuple[float, float]]:
        """Allowed spectral bands in lambda, ascending; the top one is
        half-infinite and returned as (lo, inf)."""
        out = []
        for lo, hi in self.cut_segments():
            out.append((-hi, math.inf if lo == -math.inf else -lo))
        return sorted(out)


def _clean_roots(coeffs: tuple[float, ...], b: float) -> tuple[float, ...]:
    """Roots of the monic Q from its coefficients: deflate the structural
    zeros, root-solve numerically, merge near-coincident pairs."""
    c = list(coeffs)
    zeros = 0
    while abs(c[0]) == 0.0:
        c.pop(0)
        zeros += 1
    arr = np.roots(list(reversed(c)))
    scale = max(1.0, float(np.max(np.abs(arr))) if len(arr) else 1.0, b ** 2)
    if np.max(np.abs(arr.imag), initial=0.0) > 1e-7 * scale:
        raise ConvergenceError("complex roots in the spectral polynomial")
    roots = sorted(arr.real.tolist() + [0.0] * zeros)
    # average pairs split by rounding (double roots of the kink cases)
    for i in range(len(roots) - 1):
        if abs(roots[i + 1] - roots[i]) < 1e-7 * scale and roots[i] != roots[i + 1]:
            mid = 0.5 * (roots[i] + roots[i + 1])
            roots[i] = roots[i + 1] = mid
    return tuple(roots)


def build_resolvent(case: CaseTag, b: float, k: float | None = None) -> ResolventPolynomial:
    """Populate P, Q, rho, u and the period moments for one case.

    k is required for B and D (0 < k < 1) and ignored for A, C, NAHM.
    Roots of Q are always obtained numerically from the coefficients.
    """
    case = CaseTag(case)
    if b <= 0.0:
        raise DomainError("build_resolvent requires b > 0")
    if case in (CaseTag.B, CaseTag.D):
        if k is None or not 0.0 < k < 1.0:
            raise DomainError(f"case {case.value} requires 0 < k < 1")
    else:
        k = None
    b2 = b * b

    if case is CaseTag.A:
        p_rows = ((0.0, b2), (1.0,))
        q = (0.0, 0.0, b2, 1.0)
        rho = (0.0, 0.0, 1.0, -1.0)
        u = (b2, -2.0 * b2)
        nu = b2
        period = math.inf
        moments = (math.inf, 2.0 / b, 4.0 / (3.0 * b))
    elif case is CaseTag.B:
        k2 = k * k
        p_rows = ((0.0, k2 * b2), (1.0,))
        q = (0.0, b2 * b2 * k2 * (k2 - 1.0), b2 * (2.0 * k2 - 1.0), 1.0)
        rho = (0.0, 1.0 - k2, 2.0 * k2 - 1.0, -k2)
        u = (b2 * (2.0 * k2 - 1.0), -2.0 * k2 * b2)
        nu = b2  # SG vacuum edge (k -> 1 limit of the top band edge)
        K, E = specfun.ellipk(k), specfun.ellipe(k)
        period = 2.0 * K / b
        moments = (period, 2.0 / (b * k2) * (E - (1.0 - k2) * K), 0.0)
    elif case is CaseTag.C:
        b4 = b2 * b2
        p_rows = ((0.0, 0.0, 9.0 * b4), (3.0 * b2, 3.0 * b2), (1.0,))
        q = (0.0, 0.0, 36.0 * b2 ** 3, 33.0 * b4, 10.0 * b2, 1.0)
        rho = (0.0, 0.0, 1.0, -1.0)
        u = (4.0 * b2, -6.0 * b2)
        nu = 4.0 * b2
        period = math.inf
        moments = (math.inf, 2.0 / b, 4.0 / (3.0 * b))
    elif case is CaseTag.D:
        k2 = k * k
        b4 = b2 * b2
        p_rows = ((0.0, 9.0 * b4 * k2 * (1.0 - k2), 9.0 * b4 * k2 * k2),
                  (3.0 * b2, 3.0 * b2 * k2),
                  (1.0,))
        q = (0.0,
             -27.0 * k2 * (1.0 - k2) ** 2 * b4 * b4,
             -9.0 * b2 ** 3 * (k2 + 1.0) * (k2 * k2 - 4.0 * k2 + 1.0),
             3.0 * b4 * (1.0 + 9.0 * k2 + k2 * k2),
             5.0 * b2 * (1.0 + k2),
             1.0)
        rho = (0.0, 1.0 - k2, 2.0 * k2 - 1.0, -k2)
        u = (b2 * (5.0 * k2 - 1.0), -6.0 * k2 * b2)
        nu = 0.0  # periodic case: free reference background
        K, E = specfun.ellipk(k), specfun.ellipe(k)
        period = 2.0 * K / b
        Iz = 2.0 / (b * k2) * (E - (1.0 - k2) * K)
        Izz = 2.0 / b * (K - 2.0 * (K - E) / k2
                         + ((2.0 + k2) * K - 2.0 * (1.0 + k2) * E) / (3.0 * k2 * k2))
        moments = (period, Iz, Izz)
    else:  # NAHM: k^2 = -1 member of case D
        b4 = b2 * b2
        p_rows = ((0.0, -18.0 * b4, 9.0 * b4),
                  (3.0 * b2, -3.0 * b2),
                  (1.0,))
        q = (0.0, 108.0 * b4 * b4, 0.0, -21.0 * b4, 0.0, 1.0)
        rho = (0.0, 2.0, -3.0, 1.0)
        u = (-6.0 * b2, 6.0 * b2)
        nu = 0.0
        # period moments carry the imaginary-modulus integrals K(i), E(i)
        ki, ei = specfun.ellipk_imag(1.0), specfun.ellipe_imag(1.0)
        period = 2.0 * ki / b
        Iz = 2.0 / b * (2.0 * ki - ei)
        Izz = 2.0 / b * (10.0 / 3.0 * ki - 2.0 * ei)
        moments = (period, Iz, Izz)

    return ResolventPolynomial(case=case, b=b, k=k, p_rows=p_rows,
                               q_coeffs=q, roots=_clean_roots(q, b),
                               rho_coeffs=rho, u_coeffs=u, nu=nu,
                               period=period, moments=moments)


def hermit_residual(rp: ResolventPolynomial, p: complex, x: float,
                    scale: float = 1.0) -> float:
    """Magnitude of the bilinear-identity defect for G = scale * P/(2 sqrt Q).

    Computed from exact z-polynomial derivatives and the chain rule
    z_x^2 = 4 b^2 rho(z), z_xx = 2 b^2 rho'(z); for the true G the value
    is zero up to rounding, and any rescaling of G makes it order one.
    """
    z = rp.z_of_x(x)
    pc = complex(p)
    rows = rp.p_rows
    P = rp.P(pc, z)
    Pz = sum(_polyval(_polyder(row), z) * pc ** i for i, row in enumerate(rows))
    Pzz = sum(_polyval(_polyder(_polyder(row)), z) * pc ** i
              for i, row in enumerate(rows))
    rho = rp.rho(z)
    rho_z = _polyval(_polyder(rp.rho_coeffs), z)
    s2 = scale * scale
    R = (rp.b ** 2 * (rho * (2.0 * P * Pzz - Pz * Pz) + rho_z * P * Pz) * s2
         - (pc + rp.u_of_z(z)) * P * P * s2 + rp.Q(pc))
    return abs(R / rp.Q(pc))


def band_edges(rp: ResolventPolynomial) -> tuple[float, ...]:
    """Sorted roots of Q; their negatives are the Bloch band edges of
    -d^2/dx^2 + u(x)."""
    return rp.roots


def gamma_hat(rp: ResolventPolynomial, p: complex) -> complex:
    """Module-level alias of ResolventPolynomial.gamma_hat."""
    return rp.gamma_hat(p)


# ---------------------------------------------------------------------------
# inverse Laplace transform of gamma_hat
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceInversion:
    """Heat-trace value split into spectral sectors.

    bound_part collects the isolated-eigenvalue residues; continuum_stable
    integrates the bands at lambda >= 0 and continuum_unstable the bands
    at lambda < 0, whose exp(|lambda| t) growth marks an unstable sector.
    """

    t: float
    bound_part: float
    continuum_stable: float
    continuum_unstable: float
    quad_error: float

    @property
    def total(self) -> float:
        return self.bound_part + self.continuum_stable + self.continuum_unstable

    @property
    def unstable_sector(self) -> bool:
        return self.continuum_unstable != 0.0


def _integrate_band(f, lo: float, hi: float, opts=None) -> tuple[float, float]:
    """Integrate f over a band with inverse-square-root endpoints handled
    by the v^2 substitution on each half (or on the single edge when the
    band is half-infinite)."""
    opts = opts or _QUAD_OPTS
    if math.isinf(hi):
        g = lambda v: 2.0 * v * f(lo + v * v)
        val, err = quad(g, 0.0, math.inf, **opts)
        return val, err
    mid = 0.5 * (lo + hi)
    gl = lambda v: 2.0 * v * f(lo + v * v)
    gr = lambda v: 2.0 * v * f(hi - v * v)
    v1, e1 = quad(gl, 0.0, math.sqrt(mid - lo), **opts)
    v2, e2 = quad(gr, 0.0, math.sqrt(hi - mid), **opts)
    return v1 + v2, e1 + e2


def invert_laplace_gamma(rp: ResolventPolynomial, t: float) -> TraceInversion:
    """gamma(t) by collapsing the inversion contour onto the cuts and poles.

    gamma(t) = sum_poles res e^{-lambda t} + sum_bands int rho(lambda)
    e^{-lambda t} d lambda.  Bands at negative lambda are integrated but
    reported separately (unstable sector).  Quadrature tolerance 1e-9.
    """
    if t <= 0.0:
        raise DomainError("invert_laplace_gamma requires t > 0")
    bound = sum(res * math.exp(-lam * t) for lam, res in rp.pole_terms())
    stable = 0.0
    unstable = 0.0
    err_total = 0.0
    for lo, hi in rp.bands():
        f = lambda lam: rp.density(lam) * math.exp(-lam * t)
        val, err = _integrate_band(f, lo, hi)
        err_total += err
        if lo >= 0.0:
            stable += val
        else:
            unstable += val
    if err_total > 1e-8 * max(1.0, abs(bound + stable + unstable)):
        raise ConvergenceError(f"heat-trace quadrature error {err_total:.2e}")
    return TraceInversion(t=t, bound_part=bound, continuum_stable=stable,
                          continuum_unstable=unstable, quad_error=err_total)
