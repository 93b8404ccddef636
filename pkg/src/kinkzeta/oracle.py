"""Brute-force lattice oracle for -d^2/dx^2 + u(x).

Second-order central differences on a uniform grid; Dirichlet boxes for
kink potentials and Bloch-phased single periods for periodic ones.  Used
to gate every closed-form spectral statement in the package.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import DomainError

__all__ = [
    "LatticeSpec",
    "eigenvalues",
    "bloch_eigenvalues",
    "relative_heat_trace",
    "band_edges_lattice",
    "lattice_heat_trace",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Discretization request: box, resolution, boundary condition, u(x)."""

    x_min: float
    x_max: float
    n: int
    bc: str                       # "dirichlet" or "periodic"
    u: Callable[[float], float]

    def __post_init__(self):
        if self.x_max <= self.x_min:
            raise DomainError("x_max must exceed x_min")
        if self.n < 8:
            raise DomainError("n too small for a meaningful lattice")
        if self.bc not in ("dirichlet", "periodic"):
            raise DomainError("bc must be 'dirichlet' or 'periodic'")

    @property
    def h(self) -> float:
        span = self.x_max - self.x_min
        return span / (self.n - 1) if self.bc == "dirichlet" else span / self.n

    def grid(self) -> np.ndarray:
        if self.bc == "dirichlet":
            return np.linspace(self.x_min, self.x_max, self.n)
        return self.x_min + self.h * np.arange(self.n)


def eigenvalues(spec: LatticeSpec, count: int | None = None) -> np.ndarray:
    """Ascending eigenvalues of the discretized operator.

    Dirichlet: symmetric tridiagonal on the interior points, solved by the
    LAPACK bisection path.  Periodic: the theta = 0 Bloch reduction.
    """
    if spec.bc == "periodic":
        return bloch_eigenvalues(spec, 0.0, count)
    h = spec.h
    x = spec.grid()[1:-1]
    diag = 2.0 / h ** 2 + np.array([spec.u(xi) for xi in x])
    off = np.full(len(x) - 1, -1.0 / h ** 2)
    if count is not None and count < len(diag):
        lam = eigvalsh_tridiagonal(diag, off, select="i",
                                   select_range=(0, count - 1))
    else:
        lam = eigvalsh_tridiagonal(diag, off)
    return lam


def bloch_eigenvalues(spec: LatticeSpec, theta: float,
                      count: int | None = None) -> np.ndarray:
    """Eigenvalues at Bloch phase theta on one period (psi(x+L) = e^{i theta} psi)."""
    if spec.bc != "periodic":
        raise DomainError("bloch_eigenvalues requires a periodic lattice")
    h = spec.h
    x = spec.grid()
    n = spec.n
    H = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    H[idx, idx] = 2.0 / h ** 2 + np.array([spec.u(xi) for xi in x])
    H[idx[:-1], idx[:-1] + 1] = -1.0 / h ** 2
    H[idx[:-1] + 1, idx[:-1]] = -1.0 / h ** 2
    H[0, n - 1] = -np.exp(-1j * theta) / h ** 2
    H[n - 1, 0] = -np.exp(1j * theta) / h ** 2
    lam = np.linalg.eigvalsh(H)
    return lam[:count] if count is not None else lam


def relative_heat_trace(spec: LatticeSpec, spec0: LatticeSpec, t: float) -> float:
    """sum_n (e^{-lambda_n t} - e^{-lambda0_n t}) over all lattice modes."""
    if t <= 0.0:
        raise DomainError("relative_heat_trace requires t > 0")
    if (spec.bc, spec.n, spec.x_min, spec.x_max) != (spec0.bc, spec0.n,
                                                     spec0.x_min, spec0.x_max):
        raise DomainError("both lattices must share the same geometry")
    lam = eigenvalues(spec)
    lam0 = eigenvalues(spec0)
    terms = np.exp(-lam * t) - np.exp(-lam0 * t)
    tail = abs(terms[-1])
    if tail > 1e-6:
        warnings.warn(f"relative_heat_trace truncation tail {tail:.2e}",
                      RuntimeWarning, stacklevel=2)
    return float(np.sum(terms))


def band_edges_lattice(spec: LatticeSpec, n_edges: int) -> np.ndarray:
    """Band edges from the Bloch problem at theta = 0 and theta = pi.

    The edge sequence alternates 1, 2, 2, 2, ... between the periodic and
    antiperiodic reductions: [t0_0, tp_0, tp_1, t0_1, t0_2, tp_2, ...].
    """
    need = n_edges // 2 + 2
    lam0 = bloch_eigenvalues(spec, 0.0, need + 1)
    lamp = bloch_eigenvalues(spec, math.pi, need + 1)
    order = [lam0[0]]
    i0, ip = 1, 0
    take_pi = True
    while len(order) < n_edges:
        if take_pi:
            order.extend(lamp[ip:ip + 2])
            ip += 2
        else:
            order.extend(lam0[i0:i0 + 2])
            i0 += 2
        take_pi = not take_pi
    return np.sort(np.array(order[:n_edges]).real)


def lattice_heat_trace(spec: LatticeSpec, t: float, n_theta: int = 32) -> float:
    """Per-period heat trace of a periodic operator, averaged over a
    uniform Bloch-phase grid on (0, pi)."""
    if spec.bc != "periodic":
        raise DomainError("lattice_heat_trace requires a periodic lattice")
    thetas = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    acc = 0.0
    for th in thetas:
        lam = bloch_eigenvalues(spec, th)
        acc += float(np.sum(np.exp(-lam * t)))
    return acc / n_theta
