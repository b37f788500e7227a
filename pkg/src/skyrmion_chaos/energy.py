"""Static masses of the twisty ansatz and the time-dependent Hamiltonian.

Masses are in units of pi F_pi / e.  The polar-angle integrals are done in
closed form; radial integrals use composite Simpson on the profile grid with
fourth-order finite-difference derivatives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import Grid, derivative, integrate, lattice_energy
from .model import Density, ModelParams, sb_coefficient, SbVariant

# polar integrals of sin(theta) * (k^2 w(theta) + 1) for the two readings of
# the quartic-mass bracket: w = 1 or w = sin^2(theta)
M4_READINGS = {
    "unity": lambda k: 2.0 * (k * k + 1),
    "sin2": lambda k: 4.0 * k * k / 3 + 2.0,
}


class InvalidProfileError(ValueError):
    pass


@dataclass(frozen=True)
class MassBreakdown:
    m2: float
    m4: float
    k: int

    @property
    def total(self) -> float:
        return self.m2 + self.m4


def _profile_arrays(profile):
    F = np.asarray(profile.values, dtype=float)
    n0 = F[0] / np.pi
    if not np.isclose(n0, np.round(n0), rtol=0, atol=1e-12):
        raise InvalidProfileError(f"F(0) = {F[0]!r} is not a multiple of pi")
    x = profile.grid.nodes
    Fp = derivative(F, profile.grid.h)
    return x, F, Fp


def _sin2_over_x2(x, F, Fp):
    """sin^2 F / x^2 with its x -> 0 limit F'(0)^2 (F(0) = n pi)."""
    out = np.empty_like(F)
    out[1:] = np.sin(F[1:]) ** 2 / x[1:] ** 2
    out[0] = Fp[0] ** 2
    return out


def mass_m2(profile, k: int = 1, quadrature: str = "simpson") -> float:
    x, F, Fp = _profile_arrays(profile)
    s2x2 = _sin2_over_x2(x, F, Fp)
    # theta integral gives 2
    integrand = 0.25 * 2.0 * x * x * (Fp * Fp + (k * k + 1) * s2x2)
    return integrate(integrand, profile.grid, quadrature)


def mass_m4(profile, k: int = 1, reading: str = "unity", quadrature: str = "simpson") -> float:
    x, F, Fp = _profile_arrays(profile)
    s2x2 = _sin2_over_x2(x, F, Fp)
    angular = M4_READINGS[reading](k)
    integrand = x * x * (angular * Fp * Fp + 2.0 * k * k * s2x2) * s2x2
    return integrate(integrand, profile.grid, quadrature)


def masses(profile, k: int = 1, reading: str = "unity") -> MassBreakdown:
    return MassBreakdown(mass_m2(profile, k), mass_m4(profile, k, reading), k)


def hamiltonian(state, params: ModelParams, gamma6: float = 0.0, quadrature: str = "simpson") -> float:
    """Energy of a time-dependent hedgehog in units of pi F_pi / e.

    4 * integral x^2 { (Fdot^2 + F'^2)/8 + sin^2F/(4x^2) + sin^2F/x^2 (Fdot^2 + F'^2)
                       + sin^4F/(2x^4) + (g/8) sin^4F/x^4 (Fdot^2 + F'^2)
                       + eps beta^2 (1 - cos F)/4 } dx

    The modified symmetry-breaking term is always included.  With
    quadrature="lattice" the discrete energy conserved by the grid equations
    of motion is returned instead of the Simpson value.
    """
    dens = Density(k=1, gamma6=gamma6, sb=sb_coefficient(SbVariant.MODIFIED, params))
    grid: Grid = state.grid
    F = np.asarray(state.F, dtype=float)
    G = np.asarray(state.Fdot, dtype=float)
    if quadrature == "lattice":
        return 4.0 * lattice_energy(F, G, grid, dens)
    x = grid.nodes
    Fp = derivative(F, grid.h)
    s2x2 = _sin2_over_x2(x, F, Fp)
    kin = G * G + Fp * Fp
    density = (
        x * x * kin / 8
        + x * x * s2x2 / 4
        + x * x * s2x2 * kin
        + x * x * s2x2 * s2x2 / 2
        + dens.sb * x * x * (1 - np.cos(F))
    )
    if gamma6:
        density = density + (gamma6 / 8) * x * x * s2x2 * s2x2 * kin
    return 4.0 * integrate(density, grid, quadrature)
