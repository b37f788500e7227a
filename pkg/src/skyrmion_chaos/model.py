"""Model constants, the static profile equations and the kink-like profile.

All lengths and times are dimensionless (x = e F_pi r, tau = e F_pi t).
The profile equations are written in the normalization of the B=1 hedgehog
equation, i.e. the F'' coefficient is x^2/4 + (k^2+1) sin^2 F, so that the
twisty k=1 equation coincides with the hedgehog one term by term.

Every equation here is the Euler-Lagrange equation of an energy density of
the form

    e(x, F, F') = 1/2 M(x, F) F'^2 + U(x, F)

with the same M acting as the inertia of the time-dependent problem.  The
`Density` class carries M and U and their partial derivatives; the static
residual, the grid operator in `static` and the equations of motion in
`dynamics` are all assembled from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

HBAR_C = 197.327  # MeV fm


class InvalidParameterError(ValueError):
    pass


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    """Physical constants; the dimensionless couplings are derived on access."""

    m_pi: float = 140.0
    e: float = 4.84
    F_pi: float = 108.0
    epsilon: float = 3.5e-7
    eps6_sq: float = 5.0  # fm^2

    def __post_init__(self):
        for name in ("m_pi", "e", "F_pi"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidParameterError(f"{name} must be positive, got {value!r}")
        for name in ("epsilon", "eps6_sq"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise InvalidParameterError(f"{name} must be non-negative, got {value!r}")

    @property
    def beta(self) -> float:
        return self.m_pi / (self.e * self.F_pi)

    @property
    def gamma6(self) -> float:
        # F_pi^2 eps6^2 is MeV^2 fm^2; divide by (hbar c)^2 to make it a number
        return (self.F_pi / HBAR_C) ** 2 * self.eps6_sq * self.e**4 / np.pi**4

    @property
    def mass_unit_gamma(self) -> float:
        """Energy unit pi F_pi / e in MeV."""
        return np.pi * self.F_pi / self.e


def derive_dimensionless(m_pi=140.0, e=4.84, F_pi=108.0, epsilon=3.5e-7, eps6_sq=5.0) -> ModelParams:
    return ModelParams(float(m_pi), float(e), float(F_pi), float(epsilon), float(eps6_sq))


class SbVariant(str, Enum):
    NONE = "none"
    PION_MASS = "pion-mass"
    MODIFIED = "modified"


def sb_coefficient(variant: SbVariant, params: ModelParams) -> float:
    """c in the source c x^2 sin F."""
    variant = SbVariant(variant)
    if variant is SbVariant.NONE:
        return 0.0
    c = params.beta**2 / 4
    if variant is SbVariant.MODIFIED:
        c = params.epsilon * c
    return c


def sb_source(variant: SbVariant, x, F, params: ModelParams):
    if np.any(np.asarray(x) < 0):
        raise ValueError("x must be non-negative")
    return sb_coefficient(variant, params) * np.square(x) * np.sin(F)


@dataclass(frozen=True)
class StaticEquationSpec:
    """Which static equation to solve.

    `sixth` switches on the sixth-order stabilizer (k=1 only); its coupling
    is taken from ModelParams.gamma6.
    """

    k: int = 1
    n: int = 1
    sb: SbVariant = SbVariant.NONE
    sixth: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sb", SbVariant(self.sb))
        if int(self.k) != self.k or self.k < 1:
            raise InvalidParameterError(f"twist k must be an integer >= 1, got {self.k!r}")
        if int(self.n) != self.n:
            raise InvalidParameterError(f"winding n must be an integer, got {self.n!r}")
        if self.sixth and self.k != 1:
            raise InvalidParameterError("the sixth-order term is only defined for the hedgehog (k=1)")

    @property
    def a(self) -> int:
        return 2 * (self.k**2 + 1)

    @property
    def b(self) -> int:
        return 2 * self.k**2

    def density(self, params: ModelParams) -> "Density":
        return Density(
            k=self.k,
            gamma6=params.gamma6 if self.sixth else 0.0,
            sb=sb_coefficient(self.sb, params),
        )


@dataclass(frozen=True)
class Density:
    """Energy density 1/2 M F'^2 + U in the hedgehog normalization.

    M = x^2/4 + (k^2+1) sin^2 F + (g/4) sin^4 F / x^2
    U = (k^2+1) sin^2 F / 8 + k^2 sin^4 F / (2 x^2) + c x^2 (1 - cos F)

    `fprime_coeff` multiplies the -(g/4) sin^4 F / x^3 slot of dM/dx.  The
    variational value is 2 (dM/dx has g/2); 1 gives the coefficient as
    printed in the published sixth-order equation of motion and breaks
    energy conservation.  It only enters pointwise formulas: the grid
    operators are built from M itself.
    """

    k: int = 1
    gamma6: float = 0.0
    sb: float = 0.0
    fprime_coeff: float = 2.0

    @property
    def kk1(self) -> float:
        return float(self.k * self.k + 1)

    def M(self, x, F):
        s2 = np.sin(F) ** 2
        out = x * x / 4 + self.kk1 * s2
        if self.gamma6:
            out = out + (self.gamma6 / 4) * s2 * s2 / (x * x)
        return out

    def M_F(self, x, F):
        s2f = np.sin(2 * F)
        out = self.kk1 * s2f
        if self.gamma6:
            out = out + (self.gamma6 / 2) * np.sin(F) ** 2 * s2f / (x * x)
        return out

    def M_x(self, x, F):
        out = x / 2
        if self.gamma6:
            out = out - self.fprime_coeff * (self.gamma6 / 4) * np.sin(F) ** 4 / x**3
        return out

    def U(self, x, F):
        s2 = np.sin(F) ** 2
        out = self.kk1 * s2 / 8 + self.k**2 * s2 * s2 / (2 * x * x)
        if self.sb:
            out = out + self.sb * x * x * (1 - np.cos(F))
        return out

    def U_F(self, x, F):
        s2f = np.sin(2 * F)
        out = self.kk1 * s2f / 8 + self.k**2 * np.sin(F) ** 2 * s2f / (x * x)
        if self.sb:
            out = out + self.sb * x * x * np.sin(F)
        return out


def kink_profile(x, n: int = 1):
    """4 n arctan(exp(-x)); F(0) = n pi, exponential tail 4 n e^{-x}."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("kink profile is defined for x >= 0")
    return 4 * n * np.arctan(np.exp(-x))


def kink_derivatives(x, n: int = 1):
    """Closed-form (F, F', F'') of the kink profile."""
    x = np.asarray(x, dtype=float)
    F = kink_profile(x, n)
    sech = 1.0 / np.cosh(x)
    return F, -2 * n * sech, 2 * n * sech * np.tanh(x)


def _check_positive(x):
    if np.any(np.asarray(x) <= 0):
        raise SingularPointError("profile equations are singular at x = 0")


def static_residual(spec: StaticEquationSpec, x, F, Fp, Fpp, params: ModelParams):
    """LHS minus RHS of the static profile equation at x > 0.

    k=1, no sixth-order term, no source: the B=1 hedgehog equation
        xF'/2 + (x^2/4 + 2 sin^2 F) F'' + sin2F F'^2 - sin2F/4 - sin^2F sin2F/x^2
    General k: the twisty equation divided by 4.
    The symmetry-breaking source is subtracted.
    """
    _check_positive(x)
    return _static_residual(spec.density(params), x, F, Fp, Fpp)


def _static_residual(dens: Density, x, F, Fp, Fpp):
    return dens.M(x, F) * Fpp + dens.M_x(x, F) * Fp + 0.5 * dens.M_F(x, F) * Fp * Fp - dens.U_F(x, F)


def twisty_residual(spec: StaticEquationSpec, x, F, Fp, Fpp, params: ModelParams):
    """Twisty equation with its printed coefficients a and b (4x the hedgehog normalization)."""
    _check_positive(x)
    a, b = spec.a, spec.b
    s = np.sin(F)
    lhs = (x * x + 2 * a * s * s) * Fpp + 2 * x * Fp + (a * Fp * Fp - a / 4 - 2 * b * s * s / (x * x)) * np.sin(2 * F)
    return lhs - 4 * sb_source(spec.sb, x, F, params)
