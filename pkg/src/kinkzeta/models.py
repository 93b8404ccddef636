"""Field models and their classical static solutions.

Three scalar families on the line, phi'' = V'(phi):

* GL       V = (g/4) (phi^2 - m^2/g)^2
* SG       V = (2 m^4 / 3g) (1 + cos(c phi)),  c = sqrt(3g/2)/m
* Nahm     V = phi^4 / 2, first integral W = -w^4/2 (g = 2 internally)

Each produced solution evaluates phi(x) and phi'(x) in closed form and
carries the first integral W = phi'^2/2 - V(phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy.integrate import quad

from . import specfun
from .errors import (DomainError, EnergyDivergenceError, PoleError,
                     UnsupportedFamilyError)

__all__ = [
    "Family",
    "SolutionKind",
    "ModelSpec",
    "ClassicalSolution",
    "potential_v",
    "kink_solution",
    "periodic_solution",
    "nahm_solution",
    "constant_solution",
    "schrodinger_potential",
    "potential_shift",
    "classical_energy",
    "closed_form_energy",
    "energy_report",
    "modulus_from_w",
    "w_from_modulus",
]

_K1 = 1.0 / math.sqrt(2.0)  # reduced modulus of the Nahm real form


class Family(str, Enum):
    GL = "gl"
    SG = "sg"
    NAHM = "nahm"


class SolutionKind(str, Enum):
    KINK = "kink"
    ANTIKINK = "antikink"
    PERIODIC = "periodic"
    CONSTANT = "constant"


@dataclass(frozen=True)
class ModelSpec:
    """Model family with its physical parameters.

    m, g for GL and SG; w for Nahm (which is the g=2, m=0 member of the
    GL family and keeps only the scale w).
    """

    family: Family
    m: float = 0.0
    g: float = 1.0
    w: float = 0.0

    def __post_init__(self):
        f = Family(self.family)
        object.__setattr__(self, "family", f)
        if f is Family.NAHM:
            if self.w <= 0.0:
                raise DomainError("Nahm model requires w > 0")
            object.__setattr__(self, "g", 2.0)
            object.__setattr__(self, "m", 0.0)
        else:
            if self.m <= 0.0 or self.g <= 0.0:
                raise DomainError(f"{f.value} model requires m > 0 and g > 0")

    @property
    def vacuum_mass2(self) -> float:
        """V''(vacuum): the continuum edge nu of the fluctuation operator."""
        if self.family is Family.GL:
            return 2.0 * self.m ** 2
        if self.family is Family.SG:
            return self.m ** 2
        raise UnsupportedFamilyError("Nahm has no constant vacuum")

    @property
    def field_period(self) -> float:
        """SG field-space period Phi = 2 pi m sqrt(2/(3g))."""
        if self.family is not Family.SG:
            raise UnsupportedFamilyError("field_period is SG-only")
        return 2.0 * math.pi * self.m * math.sqrt(2.0 / (3.0 * self.g))


def potential_v(spec: ModelSpec, phi: float, order: int = 0) -> float:
    """V(phi) and its first two phi-derivatives (order 0, 1 or 2)."""
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    m, g = spec.m, spec.g
    if spec.family is Family.GL:
        if order == 0:
            return 0.25 * g * (phi * phi - m * m / g) ** 2
        if order == 1:
            return g * phi ** 3 - m * m * phi
        return 3.0 * g * phi * phi - m * m
    if spec.family is Family.SG:
        c = math.sqrt(1.5 * g) / m
        amp = 2.0 * m ** 4 / (3.0 * g)
        if order == 0:
            return amp * (1.0 + math.cos(c * phi))
        if order == 1:
            return -(m ** 3) * math.sqrt(2.0 / (3.0 * g)) * math.sin(c * phi)
        return -(m * m) * math.cos(c * phi)
    # Nahm: V = phi^4/2
    if order == 0:
        return 0.5 * phi ** 4
    if order == 1:
        return 2.0 * phi ** 3
    return 6.0 * phi * phi


def modulus_from_w(spec: ModelSpec, W: float) -> float:
    """Elliptic modulus of the periodic solution carrying first integral W."""
    if spec.family is Family.SG:
        lo = -4.0 * spec.m ** 4 / (3.0 * spec.g)
        if not lo < W < 0.0:
            raise DomainError(f"SG periodic solutions need {lo} < W < 0")
        return math.sqrt(1.0 + 3.0 * spec.g * W / (4.0 * spec.m ** 4))
    if spec.family is Family.GL:
        lo = -spec.m ** 4 / (4.0 * spec.g)
        if not lo < W < 0.0:
            raise DomainError(f"GL periodic solutions need {lo} < W < 0")
        r = math.sqrt(-4.0 * spec.g * W) / spec.m ** 2
        return math.sqrt((1.0 - r) / (1.0 + r))
    raise UnsupportedFamilyError("modulus_from_w: GL or SG only")


def w_from_modulus(spec: ModelSpec, k: float) -> float:
    """First integral W of the periodic solution with modulus k."""
    if spec.family is Family.SG:
        return 4.0 * (k * k - 1.0) * spec.m ** 4 / (3.0 * spec.g)
    if spec.family is Family.GL:
        return -((1.0 - k * k) / (1.0 + k * k)) ** 2 * spec.m ** 4 / (4.0 * spec.g)
    raise UnsupportedFamilyError("w_from_modulus: GL or SG only")


@dataclass(frozen=True)
class ClassicalSolution:
    """Evaluable static solution with its family metadata.

    period is the period of the associated Schroedinger potential u(x)
    (the field itself is antiperiodic over it for the periodic families);
    it is None for kinks and constants.
    """

    spec: ModelSpec
    kind: SolutionKind
    w_const: float            # first integral W
    b_or_sigma: float
    branch_sign: int = 1
    k: float | None = None
    period: float | None = None
    phi_const: float | None = None   # constant solutions only

    # -- evaluation ---------------------------------------------------------
    def phi(self, x: float) -> float:
        s, spec = self.branch_sign, self.spec
        if self.kind is SolutionKind.CONSTANT:
            return self.phi_const
        if spec.family is Family.GL:
            b = self.b_or_sigma
            if self.kind is SolutionKind.PERIODIC:
                sn, _, _ = specfun.jacobi_sn_cn_dn(b * x, self.k)
                return s * math.sqrt(2.0 / spec.g) * self.k * b * sn
            return s * math.sqrt(2.0 / spec.g) * b * math.tanh(b * x)
        if spec.family is Family.SG:
            m = spec.m
            amp = 2.0 * m * math.sqrt(2.0 / (3.0 * spec.g))
            if self.kind is SolutionKind.PERIODIC:
                sn, _, _ = specfun.jacobi_sn_cn_dn(m * x, self.k)
                return s * amp * math.asin(self.k * sn)
            # asin(tanh) = atan(sinh), the latter well conditioned at the tails
            return s * amp * math.atan(math.sinh(m * x))
        # Nahm real form: phi = w / cn(sqrt(2) w x; 1/sqrt2), poles at cn = 0
        w = spec.w
        _, cn, _ = specfun.jacobi_sn_cn_dn(math.sqrt(2.0) * w * x, _K1)
        self._nahm_pole_guard(x)
        return s * w / cn

    def dphi(self, x: float) -> float:
        s, spec = self.branch_sign, self.spec
        if self.kind is SolutionKind.CONSTANT:
            return 0.0
        if spec.family is Family.GL:
            b = self.b_or_sigma
            if self.kind is SolutionKind.PERIODIC:
                _, cn, dn = specfun.jacobi_sn_cn_dn(b * x, self.k)
                return s * math.sqrt(2.0 / spec.g) * self.k * b * b * cn * dn
            sech = 1.0 / math.cosh(b * x)
            return s * math.sqrt(2.0 / spec.g) * b * b * sech * sech
        if spec.family is Family.SG:
            m = spec.m
            amp = 2.0 * m * math.sqrt(2.0 / (3.0 * spec.g))
            if self.kind is SolutionKind.PERIODIC:
                _, cn, _ = specfun.jacobi_sn_cn_dn(m * x, self.k)
                return s * amp * m * self.k * cn
            return s * amp * m / math.cosh(m * x)
        w = spec.w
        u = math.sqrt(2.0) * w * x
        sn, cn, dn = specfun.jacobi_sn_cn_dn(u, _K1)
        self._nahm_pole_guard(x)
        return s * math.sqrt(2.0) * w * w * sn * dn / (cn * cn)

    def _nahm_pole_guard(self, x: float) -> None:
        w = self.spec.w
        u = math.sqrt(2.0) * w * x
        quarter = specfun.ellipk(_K1)
        # distance (in u) to the nearest zero of cn, at odd multiples of K
        d = abs((u - quarter) % (2.0 * quarter))
        d = min(d, 2.0 * quarter - d)
        if d < 1e-3:
            raise PoleError(f"Nahm solution pole near x = {x}")


def kink_solution(spec: ModelSpec, sign: int = 1) -> ClassicalSolution:
    """Separatrix (W = 0) kink/antikink of the GL or SG model."""
    if spec.family is Family.GL:
        b = spec.m / math.sqrt(2.0)
    elif spec.family is Family.SG:
        b = spec.m
    else:
        raise UnsupportedFamilyError("Nahm model has no bounded separatrix")
    kind = SolutionKind.KINK if sign > 0 else SolutionKind.ANTIKINK
    return ClassicalSolution(spec=spec, kind=kind, w_const=0.0,
                             b_or_sigma=b, branch_sign=1 if sign > 0 else -1)


def periodic_solution(spec: ModelSpec, k: float | None = None,
                      W: float | None = None, sign: int = 1) -> ClassicalSolution:
    """Elliptic periodic solution, parametrized by modulus k or by W."""
    if (k is None) == (W is None):
        raise DomainError("supply exactly one of k or W")
    if k is None:
        k = modulus_from_w(spec, W)
    if not 0.0 < k < 1.0:
        raise DomainError(f"periodic solutions require 0 < k < 1, got {k}")
    if spec.family is Family.GL:
        b = spec.m / math.sqrt(1.0 + k * k)
    elif spec.family is Family.SG:
        b = spec.m
    else:
        raise UnsupportedFamilyError("use nahm_solution for the Nahm family")
    W = w_from_modulus(spec, k)
    return ClassicalSolution(spec=spec, kind=SolutionKind.PERIODIC, w_const=W,
                             b_or_sigma=b, branch_sign=1 if sign > 0 else -1,
                             k=k, period=2.0 * specfun.ellipk(k) / b)


def nahm_solution(spec: ModelSpec, sign: int = 1) -> ClassicalSolution:
    """Real unbounded solution of phi'^2 = phi^4 - w^4 (W = -w^4/2).

    phi(x) = w / cn(sqrt(2) w x; 1/sqrt(2)), with poles at the zeros of cn.
    Evaluation within 1e-3 (in the cn argument) of a pole raises.
    """
    if spec.family is not Family.NAHM:
        raise UnsupportedFamilyError("nahm_solution requires the Nahm family")
    w = spec.w
    sigma = w / math.sqrt(2.0)
    period = math.sqrt(2.0) * specfun.ellipk(_K1) / w
    return ClassicalSolution(spec=spec, kind=SolutionKind.PERIODIC,
                             w_const=-0.5 * w ** 4, b_or_sigma=sigma,
                             branch_sign=1 if sign > 0 else -1, period=period)


def constant_solution(spec: ModelSpec, which: str = "vacuum") -> ClassicalSolution:
    """Constant solutions; W is computed directly from the first integral."""
    if spec.family is Family.GL:
        phi0 = spec.m / math.sqrt(spec.g) if which == "vacuum" else 0.0
    elif spec.family is Family.SG:
        phi0 = 0.5 * spec.field_period if which == "vacuum" else 0.0
    else:
        raise UnsupportedFamilyError("Nahm model has no constant solutions")
    W = -potential_v(spec, phi0)
    return ClassicalSolution(spec=spec, kind=SolutionKind.CONSTANT, w_const=W,
                             b_or_sigma=0.0, phi_const=phi0)


def potential_shift(sol: ClassicalSolution) -> float:
    """Shift lambda with V''(phi(x)) = lambda + u(x) for this solution's u."""
    if sol.spec.family is Family.GL and sol.kind in (SolutionKind.KINK,
                                                     SolutionKind.ANTIKINK):
        return 4.0 * sol.b_or_sigma ** 2
    return 0.0


def schrodinger_potential(sol: ClassicalSolution, x: float) -> float:
    """Potential u(x) of the fluctuation operator -d^2/dx^2 + u(x).

    GL kink uses the conventional zero-asymptote form u = -6 b^2 sech^2(bx)
    (shift 4 b^2 removed); all other cases return V''(phi(x)) unshifted.
    """
    spec, b = sol.spec, sol.b_or_sigma
    if sol.kind is SolutionKind.CONSTANT:
        return potential_v(spec, sol.phi_const, order=2)
    if spec.family is Family.GL:
        if sol.kind is SolutionKind.PERIODIC:
            _, cn, _ = specfun.jacobi_sn_cn_dn(b * x, sol.k)
            return (5.0 * sol.k ** 2 - 1.0) * b * b - 6.0 * sol.k ** 2 * b * b * cn * cn
        sech = 1.0 / math.cosh(b * x)
        return -6.0 * b * b * sech * sech
    if spec.family is Family.SG:
        m = spec.m
        if sol.kind is SolutionKind.PERIODIC:
            _, cn, _ = specfun.jacobi_sn_cn_dn(m * x, sol.k)
            return m * m * (2.0 * sol.k ** 2 - 1.0 - 2.0 * sol.k ** 2 * cn * cn)
        sech = 1.0 / math.cosh(m * x)
        return m * m * (1.0 - 2.0 * sech * sech)
    return 6.0 * sol.phi(x) ** 2  # Nahm, singular; pole guard applies


def _energy_density(sol: ClassicalSolution, x: float) -> float:
    return 0.5 * sol.dphi(x) ** 2 + potential_v(sol.spec, sol.phi(x))


def classical_energy(sol: ClassicalSolution) -> float:
    """Raw energy integral of the density phi'^2/2 + V over R (kinks) or
    one period (periodic solutions); absolute tolerance 1e-9."""
    if sol.kind is SolutionKind.CONSTANT:
        raise DomainError("classical_energy requires a kink or periodic solution")
    if sol.spec.family is Family.NAHM:
        raise EnergyDivergenceError("Nahm solution is unbounded; energy diverges")
    if sol.kind is SolutionKind.PERIODIC:
        val, err = quad(lambda x: _energy_density(sol, x), 0.0, sol.period,
                        epsabs=1e-12, epsrel=1e-12, limit=200)
    else:
        b = sol.b_or_sigma
        cut = 40.0 / b  # density decays like exp(-2 b x); tail < 1e-17
        val, err = quad(lambda x: _energy_density(sol, x), -cut, cut,
                        epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def _sg_energy_norm(spec: ModelSpec) -> float:
    # conventional normalization: the SG kink carries mass 16 m^2/g, while
    # the raw field integral is 16 m^3/(3g); constant ratio 3/m.
    return 3.0 / spec.m


def closed_form_energy(sol: ClassicalSolution) -> float | None:
    """Closed-form energy in the conventional normalization (SG only).

    Kink: 16 m^2/g.  Periodic: (8 m^2/g) [2 E(k) - (1 - k^2) K(k)], which
    tends to the kink value as k -> 1.  GL energies have no closed form
    here and return None.
    """
    spec = sol.spec
    if spec.family is not Family.SG:
        return None
    m, g = spec.m, spec.g
    if sol.kind in (SolutionKind.KINK, SolutionKind.ANTIKINK):
        return 16.0 * m * m / g
    if sol.kind is SolutionKind.PERIODIC:
        k = sol.k
        K, E = specfun.ellipk(k), specfun.ellipe(k)
        return 8.0 * m * m / g * (2.0 * E - (1.0 - k * k) * K)
    return None


def energy_report(sol: ClassicalSolution) -> dict:
    """Closed-form and quadrature energies side by side.

    The quadrature column is scaled to the same normalization as the
    closed form (factor 3/m for SG; 1 otherwise), and the unscaled field
    integral is reported as raw_integral.
    """
    raw = classical_energy(sol)
    norm = _sg_energy_norm(sol.spec) if sol.spec.family is Family.SG else 1.0
    return {
        "closed_form": closed_form_energy(sol),
        "quadrature": norm * raw,
        "raw_integral": raw,
        "normalization": norm,
    }
