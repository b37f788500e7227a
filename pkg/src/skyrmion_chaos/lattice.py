"""Uniform grid and the discrete (lattice) form of the profile energy.

The radial energy is discretized as

    V[F] = sum_edges h * 1/2 M(x_e, F_e) ((F_{i+1} - F_i)/h)^2 + sum_nodes h U(x_i, F_i)

with edge midpoints x_e, F_e.  The static residual on the grid is -dV/dF_i / h,
a conservative second-order central difference form of d/dx(M F') - M_F F'^2/2 - U_F.
The equations of motion use the node inertia M(x_i, F_i), which makes

    H = sum_nodes h * 1/2 M_i Fdot_i^2 + V

an exact invariant of the semi-discrete flow.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.integrate import simpson

from .model import Density


@dataclass(frozen=True)
class Grid:
    L: float = 16.0
    N: int = 128

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L!r}")
        if int(self.N) != self.N or self.N < 16:
            raise ValueError(f"N must be an integer >= 16, got {self.N!r}")

    @property
    def h(self) -> float:
        return self.L / self.N

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.h

    @cached_property
    def edges(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) * self.h

    def refined(self) -> "Grid":
        return Grid(self.L, 2 * self.N)


def derivative(values, h: float) -> np.ndarray:
    """First derivative to fourth order (5-point central, one-sided near the ends)."""
    f = np.asarray(values)
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return d


def integrate(values, grid: Grid, method: str = "simpson") -> float:
    if method == "simpson":
        return float(simpson(values, dx=grid.h))
    if method == "trapezoid":
        return float(np.trapezoid(values, dx=grid.h))
    raise ValueError(f"unknown quadrature {method!r}")


def lattice_residual(F, grid: Grid, dens: Density) -> np.ndarray:
    """-dV/dF_i / h at the interior nodes i = 1..N-1."""
    h = grid.h
    xe = grid.edges
    Fe = 0.5 * (F[1:] + F[:-1])
    D = (F[1:] - F[:-1]) / h
    flux = dens.M(xe, Fe) * D
    curv = 0.25 * dens.M_F(xe, Fe) * D * D
    xi = grid.nodes[1:-1]
    return (flux[1:] - flux[:-1]) / h - (curv[1:] + curv[:-1]) - dens.U_F(xi, F[1:-1])


def lattice_jacobian(F, grid: Grid, dens: Density) -> np.ndarray:
    """Tridiagonal Jacobian of lattice_residual w.r.t. interior values, in
    scipy.linalg.solve_banded (1, 1) layout.  Complex-step, three colours."""
    n = grid.N - 1
    ab = np.zeros((3, n))
    step = 1e-30
    base = np.asarray(F, dtype=complex)
    for colour in range(3):
        pert = base.copy()
        cols = np.arange(1 + colour, grid.N, 3)
        pert[cols] += 1j * step
        dR = lattice_residual(pert, grid, dens).imag / step
        for c in cols:
            j = c - 1
            for i in (j - 1, j, j + 1):
                if 0 <= i < n:
                    ab[1 + i - j, j] = dR[i]
    return ab


def lattice_acceleration(F, Fdot, grid: Grid, dens: Density) -> np.ndarray:
    """Fddot at all nodes; the two boundary entries are zero."""
    xi = grid.nodes[1:-1]
    Fi = F[1:-1]
    Gi = Fdot[1:-1]
    out = np.zeros_like(F)
    R = lattice_residual(F, grid, dens)
    out[1:-1] = (R - 0.5 * dens.M_F(xi, Fi) * Gi * Gi) / dens.M(xi, Fi)
    return out


def lattice_energy(F, Fdot, grid: Grid, dens: Density) -> float:
    """Discrete energy in the hedgehog normalization (multiply by 4 for mass units)."""
    h = grid.h
    xe = grid.edges
    Fe = 0.5 * (F[1:] + F[:-1])
    D = (F[1:] - F[:-1]) / h
    xi = grid.nodes[1:-1]
    Fi = F[1:-1]
    Gi = Fdot[1:-1]
    gradient_part = np.sum(0.5 * dens.M(xe, Fe) * D * D)
    node_part = np.sum(0.5 * dens.M(xi, Fi) * Gi * Gi + dens.U(xi, Fi))
    return float(h * (gradient_part + node_part))
