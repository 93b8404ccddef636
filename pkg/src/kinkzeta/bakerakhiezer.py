"""Genus-1 cross-check: Lame solutions from Weierstrass/theta quotients.

The one-gap operator in its cnoidal form,

    (-d^2/dx^2 + 2 k^2 - 2 k^2 cn^2(x, k)) psi = h psi,

maps to the Weierstrass form (-d^2/du^2 + 2 p(u)) psi = H psi with
u = (x - i K') / sqrt(3), H = 3h - 2(1 + k^2) and lattice roots
e = (2 - k^2, 2k^2 - 1, -(1 + k^2)), e1 - e3 = 3.  Its Bloch solutions
are sigma quotients

    psi_s(x) = sigma(v + s a) / sigma(v) exp(-s zeta(a) v),   s = +-1,

where v = (x - i K')/sqrt(3) and p(a) = -H, so a runs over the
fundamental-rectangle boundary for real h and hits a half-period exactly
at a band edge (p'(a) = 0), where the two solutions degenerate.

The spectral Green-function diagonal psi_+ psi_- / W, with W the
Wronskian (jump normalization -1), equals the resolvent-polynomial
diagonal of the matching periodic case at p = 1 - h, which is the
cross-module identity this package uses as its strongest internal check.
b is fixed to 1 here; general b is handled at the comparison boundary by
rescaling x -> b x and p -> p / b^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import specfun
from .errors import DomainError, WronskianDegeneracyError

__all__ = [
    "LameSystem",
    "lame_system",
    "LameSolution",
    "make_lame_solution",
    "lame_psi",
    "green_diag",
    "green_offdiag",
    "lame_band_edges",
]

_SQRT3 = math.sqrt(3.0)


def lame_band_edges(k: float) -> tuple[float, float, float]:
    """Band edges of the cnoidal operator: h in {k^2, 1, 1 + k^2}."""
    return (k * k, 1.0, 1.0 + k * k)


@dataclass(frozen=True)
class LameSystem:
    """Per-modulus lattice data for the genus-1 spectral problem."""

    k: float
    params: specfun.WeierstrassParams
    Kp: float     # complete integral at the complementary modulus

    def v_of_x(self, x: float) -> complex:
        return (x - 1j * self.Kp) / _SQRT3


@lru_cache(maxsize=64)
def lame_system(k: float) -> LameSystem:
    if not 0.0 < k < 1.0:
        raise DomainError("lame_system requires 0 < k < 1")
    k2 = k * k
    e1, e2, e3 = 2.0 - k2, 2.0 * k2 - 1.0, -(1.0 + k2)
    g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4.0 * e1 * e2 * e3
    params = specfun.weierstrass_params(g2, g3)
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    return LameSystem(k=k, params=params, Kp=specfun.ellipk(kp))


@dataclass(frozen=True)
class LameSolution:
    """The pair of Bloch solutions at spectral parameter h.

    a is the uniformization point with p(a) = 2(1 + k^2) - 3h; the two
    solutions correspond to the two signs of a.
    """

    h: float
    k: float
    a: complex
    system: LameSystem
    wronskian: complex
    psi_plus: Callable[[float], complex]
    psi_minus: Callable[[float], complex]
    dpsi_plus: Callable[[float], complex]
    dpsi_minus: Callable[[float], complex]


def _psi_factory(sys_: LameSystem, a: complex, sign: int):
    params = sys_.params
    za = specfun.weierstrass_zeta(a, params)

    def psi(x: float) -> complex:
        v = sys_.v_of_x(x)
        return (specfun.weierstrass_sigma(v + sign * a, params)
                / specfun.weierstrass_sigma(v, params)
                * cmath.exp(-sign * za * v))

    def dpsi(x: float) -> complex:
        v = sys_.v_of_x(x)
        log_d = (specfun.weierstrass_zeta(v + sign * a, params)
                 - specfun.weierstrass_zeta(v, params) - sign * za)
        return psi(x) * log_d / _SQRT3

    return psi, dpsi


def make_lame_solution(h: float, k: float) -> LameSolution:
    """Construct both Bloch solutions and their Wronskian at parameter h.

    Band edges are uniformized by half-periods, where the two solutions
    coincide; a guard band of 1e-4 around each edge raises the degeneracy
    error (the p -> a map is quadratic there, so closer h values are not
    numerically distinguishable from the edge itself).
    """
    if min(abs(h - he) for he in lame_band_edges(k)) < 1e-4:
        raise WronskianDegeneracyError(
            f"h = {h} is within the band-edge guard band")
    sys_ = lame_system(k)
    H = 3.0 * h - 2.0 * (1.0 + k * k)
    a = specfun.weierstrass_p_inverse(-H, sys_.params)
    pp, dpp = _psi_factory(sys_, a, +1)
    pm, dpm = _psi_factory(sys_, a, -1)
    x0 = 0.31  # any interior point; the Wronskian is x-independent
    w = pp(x0) * dpm(x0) - pm(x0) * dpp(x0)
    scale = abs(pp(x0) * pm(x0)) + 1e-300
    if abs(w) < 1e-10 * scale:
        raise WronskianDegeneracyError(
            f"degenerate Bloch pair at h = {h} (band edge)")
    return LameSolution(h=h, k=k, a=a, system=sys_, wronskian=w,
                        psi_plus=pp, psi_minus=pm, dpsi_plus=dpp,
                        dpsi_minus=dpm)


def lame_psi(x: float, h: float, k: float, sign: int = 1) -> complex:
    """One Bloch solution of the cnoidal problem at spectral parameter h."""
    sol = make_lame_solution(h, k)
    return sol.psi_plus(x) if sign > 0 else sol.psi_minus(x)


def green_diag(x: float, h: float, k: float) -> complex:
    """Green-function diagonal psi_+ psi_- / W (derivative jump -1)."""
    sol = make_lame_solution(h, k)
    return sol.psi_plus(x) * sol.psi_minus(x) / sol.wronskian


def green_offdiag(x: float, x0: float, h: float, k: float) -> complex:
    """Off-diagonal Green function (psi_+ at the larger argument)."""
    sol = make_lame_solution(h, k)
    hi, lo = (x, x0) if x >= x0 else (x0, x)
    return sol.psi_plus(hi) * sol.psi_minus(lo) / sol.wronskian
