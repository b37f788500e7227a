"""Method-of-lines evolution of the time-dependent hedgehog.

Space is discretized with the lattice energy of `lattice` (a conservative
central-difference scheme), time with classical fixed-step RK4.  Both the
quartic model and the model with the sixth-order stabilizer carry the
modified symmetry-breaking term.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .energy import hamiltonian
from ._kernels import rk4_k1
from .lattice import Grid, lattice_acceleration
from .model import Density, ModelParams, SbVariant, StaticEquationSpec, sb_coefficient
from .static import Profile

log = logging.getLogger(__name__)

BLOWUP_LIMIT = 1e3


class Model(str, Enum):
    QUARTIC = "quartic"
    SIXTH = "sixth"


class InvalidModeError(ValueError):
    pass


class BlowUpError(RuntimeError):
    def __init__(self, t, max_abs, state=None, trajectory=None):
        super().__init__(f"evolution blew up at t={t:.6g} (max|F| = {max_abs:.3e})")
        self.t = t
        self.max_abs = max_abs
        self.state = state
        self.trajectory = trajectory


@dataclass
class FieldState:
    grid: Grid
    F: np.ndarray
    Fdot: np.ndarray
    t: float = 0.0

    def copy(self) -> "FieldState":
        return FieldState(self.grid, self.F.copy(), self.Fdot.copy(), self.t)


def model_density(model: Model, params: ModelParams) -> Density:
    gamma6 = params.gamma6 if Model(model) is Model.SIXTH else 0.0
    return Density(k=1, gamma6=gamma6, sb=sb_coefficient(SbVariant.MODIFIED, params))


def static_spec_for(model: Model) -> StaticEquationSpec:
    """Static equation whose solution is a fixed point of `model`."""
    return StaticEquationSpec(k=1, n=1, sb=SbVariant.MODIFIED, sixth=Model(model) is Model.SIXTH)


def init_perturbed(base: Profile, j: int = 16, A: float = 0.1) -> FieldState:
    grid = base.grid
    if int(j) != j or not 1 <= j <= grid.N - 1:
        raise InvalidModeError(f"mode j must be in 1..{grid.N - 1}, got {j!r}")
    i = np.arange(grid.N + 1)
    F = base.values + A * np.sin(j * np.pi * i / grid.N)
    # sin(j pi) is ~1e-16, not 0: keep the boundary values exact
    F[0], F[-1] = base.values[0], base.values[-1]
    return FieldState(grid, F, np.zeros_like(F), 0.0)


def acceleration_pointwise(x, F, Fp, Fpp, Fdot, params: ModelParams, gamma6: float = 0.0,
                           fprime_coeff: float = 2.0):
    """Fddot from the continuum equation of motion at given local values.

    gamma6 = 0 is the quartic equation:
        Fddot = F'' + [x F'/2 + sin2F (F'^2 - Fdot^2) - sin2F/4 - sin^2F sin2F/x^2
                       - eps beta^2 x^2 sinF/4] / (x^2/4 + 2 sin^2F)
    """
    dens = Density(k=1, gamma6=gamma6, sb=sb_coefficient(SbVariant.MODIFIED, params), fprime_coeff=fprime_coeff)
    num = dens.M_x(x, F) * Fp + 0.5 * dens.M_F(x, F) * (Fp * Fp - Fdot * Fdot) - dens.U_F(x, F)
    return Fpp + num / dens.M(x, F)


def acceleration_quartic(state: FieldState, params: ModelParams) -> np.ndarray:
    return lattice_acceleration(state.F, state.Fdot, state.grid, model_density(Model.QUARTIC, params))


def acceleration_sixth(state: FieldState, params: ModelParams) -> np.ndarray:
    return lattice_acceleration(state.F, state.Fdot, state.grid, model_density(Model.SIXTH, params))


def _rk4(F, G, dt, grid, dens):
    a1 = lattice_acceleration(F, G, grid, dens)
    F2, G2 = F + 0.5 * dt * G, G + 0.5 * dt * a1
    a2 = lattice_acceleration(F2, G2, grid, dens)
    F3, G3 = F + 0.5 * dt * G2, G + 0.5 * dt * a2
    a3 = lattice_acceleration(F3, G3, grid, dens)
    F4, G4 = F + dt * G3, G + dt * a3
    a4 = lattice_acceleration(F4, G4, grid, dens)
    Fn = F + (dt / 6) * (G + 2 * G2 + 2 * G3 + G4)
    Gn = G + (dt / 6) * (a1 + 2 * a2 + 2 * a3 + a4)
    # boundary nodes are pinned
    Fn[0], Fn[-1] = F[0], F[-1]
    Gn[0], Gn[-1] = G[0], G[-1]
    return Fn, Gn


def _check_finite(F, G, t, grid):
    max_abs = float(np.max(np.abs(F))) if np.all(np.isfinite(F)) else np.inf
    if not np.all(np.isfinite(G)) or max_abs > BLOWUP_LIMIT:
        raise BlowUpError(t, max_abs, FieldState(grid, F, G, t))


def step_rk4(state: FieldState, dt: float, model: Model, params: ModelParams) -> FieldState:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    F, G = _rk4(state.F, state.Fdot, dt, state.grid, model_density(model, params))
    t = state.t + dt
    _check_finite(F, G, t, state.grid)
    return FieldState(state.grid, F, G, t)


DEFAULT_SNAPSHOTS = {Model.QUARTIC: (0.0, 100.0, 200.0, 300.0, 500.0), Model.SIXTH: (0.0, 100.0, 200.0, 300.0)}
DEFAULT_T_END = {Model.QUARTIC: 500.0, Model.SIXTH: 300.0}


@dataclass
class EvolutionConfig:
    base_profile: Profile
    model: Model = Model.QUARTIC
    dt: float = 1e-3
    t_end: float = 500.0
    snapshot_times: tuple = DEFAULT_SNAPSHOTS[Model.QUARTIC]
    perturb_mode: int = 16
    perturb_amp: float = 0.1
    energy_every: int = 100
    sample_every: float = 0.5  # time between stored field samples for mode histories

    def __post_init__(self):
        self.model = Model(self.model)
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if self.t_end < 0:
            raise ValueError(f"t_end must be non-negative, got {self.t_end!r}")
        self.snapshot_times = tuple(sorted(float(t) for t in self.snapshot_times if t <= self.t_end))
        if any(t < 0 for t in self.snapshot_times):
            raise ValueError("snapshot times must lie in [0, t_end]")
        if not 1 <= self.perturb_mode <= self.base_profile.grid.N - 1:
            raise InvalidModeError(f"mode j must be in 1..{self.base_profile.grid.N - 1}")
        if int(self.energy_every) != self.energy_every or not 1 <= self.energy_every <= 100:
            raise ValueError("energy_every must be an integer in 1..100")

    @property
    def n_steps(self) -> int:
        return int(np.ceil(self.t_end / self.dt - 1e-9))


@dataclass
class Trajectory:
    config: EvolutionConfig
    snapshots: list = field(default_factory=list)
    energy_log: list = field(default_factory=list)  # (t, H_lattice, H_simpson)
    sample_times: list = field(default_factory=list)
    samples: list = field(default_factory=list)  # F at sample_times

    def energies(self) -> np.ndarray:
        return np.array(self.energy_log, dtype=float).reshape(-1, 3)

    def sample_array(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.sample_times), np.array(self.samples).reshape(len(self.sample_times), -1)

    def relative_drift(self, t_max: float = np.inf, column: int = 1) -> float:
        E = self.energies()
        E = E[E[:, 0] <= t_max + 1e-12]
        return float(np.max(np.abs(E[:, column] - E[0, column])) / abs(E[0, column]))


def evolve(config: EvolutionConfig, params: ModelParams = ModelParams(), state: FieldState | None = None) -> Trajectory:
    """Integrate from t=0 to t_end with fixed dt, recording snapshots, energies and samples.

    Snapshots are taken at the first step with t >= the requested time.
    """
    if state is None:
        state = init_perturbed(config.base_profile, config.perturb_mode, config.perturb_amp)
    grid = state.grid
    dens = model_density(config.model, params)
    traj = Trajectory(config)
    F, G = state.F.copy(), state.Fdot.copy()
    t0, dt, n_steps = state.t, config.dt, config.n_steps
    sample_stride = max(1, int(round(config.sample_every / dt)))
    snap_steps = sorted({min(n_steps, int(np.ceil(ts / dt - 1e-9))) for ts in config.snapshot_times})
    events = set(range(0, n_steps + 1, config.energy_every))
    events |= set(range(0, n_steps + 1, sample_stride))
    events |= set(snap_steps) | {n_steps}

    done = 0
    for step in sorted(events):
        if step > done:
            rk4_k1(F, G, dt, step - done, grid.h, dens.gamma6, dens.sb)
            done = step
            try:
                _check_finite(F, G, t0 + step * dt, grid)
            except BlowUpError as exc:
                exc.trajectory = traj
                raise
        t = t0 + step * dt
        if step in snap_steps:
            traj.snapshots.append(FieldState(grid, F.copy(), G.copy(), t))
        if step % config.energy_every == 0 or step == n_steps:
            st = FieldState(grid, F, G, t)
            traj.energy_log.append((t, hamiltonian(st, params, dens.gamma6, "lattice"),
                                    hamiltonian(st, params, dens.gamma6)))
        if step % sample_stride == 0:
            traj.sample_times.append(t)
            traj.samples.append(F.copy())
    if not traj.snapshots:
        traj.snapshots.append(FieldState(grid, F.copy(), G.copy(), t0 + n_steps * dt))
    log.info("evolved %s to t=%g in %d steps", config.model.value, config.t_end, n_steps)
    return traj
