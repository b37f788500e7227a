"""Static profile solver and the kink-residual comparison table."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import LinAlgError, solve_banded
from scipy.optimize import brentq

from .lattice import Grid, lattice_jacobian, lattice_residual
from .model import (
    ModelParams,
    SbVariant,
    StaticEquationSpec,
    kink_derivatives,
    kink_profile,
    sb_source,
    static_residual,
)

log = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-3
ACCEPT_TOL = 1e-6


class SolverError(RuntimeError):
    def __init__(self, message, best_residual=np.inf, best=None):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual
        self.best = best


class DegenerateSolveError(SolverError):
    pass


@dataclass
class Profile:
    grid: Grid
    values: np.ndarray
    spec: StaticEquationSpec
    residual_norm: float = np.nan
    iterations: int = 0
    method: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.N + 1,):
            raise ValueError(f"expected {self.grid.N + 1} values, got {self.values.shape}")

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def boundary_ok(self) -> bool:
        return self.values[0] == self.spec.n * np.pi and abs(self.values[-1]) <= BOUNDARY_TOL

    def monotonicity_violations(self) -> np.ndarray:
        """Indices i with F[i+1] > F[i] (soft check; reported, never raised)."""
        return np.flatnonzero(np.diff(self.values) > 0)


def origin_exponent(k: int) -> float:
    """p in F ~ n pi - c x^p near the origin, from p (p + 1) = k^2 + 1."""
    return 0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * (k * k + 1)))


def _shoot(spec: StaticEquationSpec, params: ModelParams, L: float, c: float, x_start: float = 1e-3):
    dens = spec.density(params)
    n = spec.n
    p = origin_exponent(spec.k)

    def rhs(x, y):
        F, P = y
        Fpp = (dens.U_F(x, F) - dens.M_x(x, F) * P - 0.5 * dens.M_F(x, F) * P * P) / dens.M(x, F)
        return [P, Fpp]

    def escaped(x, y):
        # left the band between the vacuum and the origin value: the shot is decided
        return min(y[0] + 0.5, n * np.pi + 0.5 - y[0])

    escaped.terminal = True
    y0 = [n * np.pi - c * x_start**p, -c * p * x_start ** (p - 1)]
    sol = solve_ivp(rhs, (x_start, L), y0, events=escaped, rtol=1e-8, atol=1e-10, dense_output=True)
    return sol


def _miss(spec, params, L, c):
    sol = _shoot(spec, params, L, c)
    if sol.status == 1:  # escaped before L
        return -1.0 if sol.y[0, -1] < 0 else 1.0
    return float(np.clip(sol.y[0, -1], -1.0, 1.0))


def shoot(spec: StaticEquationSpec, grid: Grid, params: ModelParams, scan=None):
    """Shooting on the origin coefficient c (F'(0) = -c for k = 1).

    Returns grid values or None when no bracket is found.  Among several
    roots the one closest to the kink profile (max-norm) is kept.
    """
    if spec.n == 0:
        return np.zeros(grid.N + 1)
    if scan is None:
        scan = np.geomspace(0.05, 50.0, 19) * abs(spec.n)
    misses = [_miss(spec, params, grid.L, c) for c in scan]
    roots = []
    for (c0, m0), (c1, m1) in zip(zip(scan, misses), zip(scan[1:], misses[1:])):
        if m0 == 0.0:
            roots.append(c0)
        elif m0 * m1 < 0:
            roots.append(brentq(lambda c: _miss(spec, params, grid.L, c), c0, c1, xtol=1e-10, rtol=1e-10))
    if not roots:
        return None
    x = grid.nodes
    kink = kink_profile(x, spec.n)
    best, best_dist = None, np.inf
    for c in roots:
        sol = _shoot(spec, params, grid.L, c)
        if sol.status != 0:
            continue
        F = np.empty_like(x)
        inside = x >= sol.t[0]
        F[inside] = sol.sol(x[inside])[0]
        p = origin_exponent(spec.k)
        F[~inside] = spec.n * np.pi - c * x[~inside] ** p
        dist = np.max(np.abs(F - kink))
        if dist < best_dist:
            best, best_dist = F, dist
    return best


def newton(F, spec: StaticEquationSpec, grid: Grid, params: ModelParams, tol=1e-11, max_iter=60):
    """Damped Newton on the lattice residual; boundary nodes stay fixed."""
    dens = spec.density(params)
    F = np.array(F, dtype=float)
    R = lattice_residual(F, grid, dens)
    norm = np.max(np.abs(R))
    for it in range(max_iter):
        if norm < tol:
            return F, norm, it
        try:
            step = solve_banded((1, 1), lattice_jacobian(F, grid, dens), -R)
        except (LinAlgError, ValueError) as exc:
            raise DegenerateSolveError(f"singular Jacobian at iteration {it}", norm, F) from exc
        if not np.all(np.isfinite(step)):
            raise DegenerateSolveError(f"singular Jacobian at iteration {it}", norm, F)
        lam = 1.0
        while lam > 1e-4:
            trial = F.copy()
            trial[1:-1] += lam * step
            R_trial = lattice_residual(trial, grid, dens)
            norm_trial = np.max(np.abs(R_trial))
            if norm_trial < norm or norm_trial < tol:
                break
            lam *= 0.5
        else:
            if norm < ACCEPT_TOL:
                return F, norm, it
            raise SolverError("line search stalled", norm, F)
        F, R, norm = trial, R_trial, norm_trial
        if lam == 1.0 and np.max(np.abs(step)) < 1e-14:
            return F, norm, it + 1
    if norm < ACCEPT_TOL:
        return F, norm, max_iter
    raise SolverError(f"no convergence after {max_iter} iterations", norm, F)


def solve_static(spec: StaticEquationSpec, grid: Grid = Grid(), params: ModelParams = ModelParams(),
                 init: Profile | None = None) -> Profile:
    """Solve the static profile equation with F(0) = n pi, F(L) = 0.

    Start from `init` if given, otherwise from a shooting solution (falling
    back to the kink profile when shooting fails to bracket), then polish
    with damped Newton on the grid equations.
    """
    if init is not None:
        if init.grid != grid:
            raise ValueError("init profile lives on a different grid")
        F0 = init.values.copy()
        if F0[0] != spec.n * np.pi or abs(F0[-1]) > BOUNDARY_TOL:
            raise ValueError("init profile violates the boundary values")
        method = "newton(init)"
    else:
        F0 = shoot(spec, grid, params)
        method = "shooting+newton"
        if F0 is None:
            log.info("shooting found no bracket for %s; relaxing from the kink profile", spec)
            F0 = kink_profile(grid.nodes, spec.n)
            method = "newton(kink)"
    F0[0] = spec.n * np.pi
    F0[-1] = 0.0
    F, norm, its = newton(F0, spec, grid, params)
    if abs(F[-1]) > BOUNDARY_TOL or norm >= ACCEPT_TOL:
        raise SolverError("solution violates profile invariants", norm, F)
    prof = Profile(grid, F, spec, residual_norm=float(norm), iterations=its, method=method)
    bad = prof.monotonicity_violations()
    if spec.n > 0 and bad.size:
        log.warning("profile %s is not monotone at %d nodes", spec, bad.size)
    return prof


@dataclass
class KinkComparison:
    x: np.ndarray
    lhs_kink: np.ndarray
    rhs_pionmass: np.ndarray
    rhs_modified: np.ndarray

    def misfit(self, which: str, x_min: float = 0.5, x_max: float = 16.0) -> float:
        """Discrete L2 norm of lhs_kink - rhs over x in [x_min, x_max]."""
        rhs = {"pion-mass": self.rhs_pionmass, "modified": self.rhs_modified}[which]
        sel = (self.x >= x_min) & (self.x <= x_max)
        return float(np.sqrt(np.sum((self.lhs_kink[sel] - rhs[sel]) ** 2)))


def kink_comparison(grid: Grid = Grid(), params: ModelParams = ModelParams()) -> KinkComparison:
    """Hedgehog left-hand side on the kink profile against both source terms, at x_i > 0."""
    x = grid.nodes[1:]
    F, Fp, Fpp = kink_derivatives(x, 1)
    lhs = static_residual(StaticEquationSpec(k=1, n=1), x, F, Fp, Fpp, params)
    return KinkComparison(
        x=x,
        lhs_kink=lhs,
        rhs_pionmass=sb_source(SbVariant.PION_MASS, x, F, params),
        rhs_modified=sb_source(SbVariant.MODIFIED, x, F, params),
    )
