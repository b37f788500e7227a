"""Sine-mode decomposition of fluctuations on the grid.

A_j = (2/N) sum_{i=1}^{N-1} dF_i sin(j pi i / N),   j = 1..N-1

is the exact inverse of dF_i = sum_j A_j sin(j pi i / N) on the grid (DST-I).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dst

from .lattice import Grid

BOUNDARY_TOL = 1e-9


class InvalidFluctuationError(ValueError):
    pass


class IncompatibleGridError(ValueError):
    pass


@dataclass
class ModeSpectrum:
    t: float
    amplitudes: np.ndarray  # A_1 .. A_{N-1}

    def __getitem__(self, j: int) -> float:
        if not 1 <= j <= len(self.amplitudes):
            raise IndexError(f"mode {j} outside 1..{len(self.amplitudes)}")
        return float(self.amplitudes[j - 1])


@dataclass
class ModeHistory:
    j: int
    times: np.ndarray
    amplitudes: np.ndarray


def mode_amplitudes(deltaF, grid: Grid, t: float = 0.0) -> ModeSpectrum:
    d = np.asarray(deltaF, dtype=float)
    if d.shape[-1] != grid.N + 1:
        raise IncompatibleGridError(f"expected {grid.N + 1} node values, got {d.shape[-1]}")
    if np.any(np.abs(d[..., 0]) > BOUNDARY_TOL) or np.any(np.abs(d[..., -1]) > BOUNDARY_TOL):
        raise InvalidFluctuationError("fluctuation must vanish at both boundary nodes")
    # scipy's DST-I carries a factor 2: y_k = 2 sum_n x_n sin(pi (k+1)(n+1)/N)
    return ModeSpectrum(t, dst(d[..., 1:-1], type=1, axis=-1) / grid.N)


def reconstruct(spectrum: ModeSpectrum, grid: Grid) -> np.ndarray:
    A = np.asarray(spectrum.amplitudes, dtype=float)
    if A.shape[-1] != grid.N - 1:
        raise IncompatibleGridError(f"expected {grid.N - 1} amplitudes, got {A.shape[-1]}")
    out = np.zeros(A.shape[:-1] + (grid.N + 1,))
    out[..., 1:-1] = dst(A, type=1, axis=-1) / 2
    return out


def broadband(amplitudes: np.ndarray, exclude=(16,)) -> np.ndarray:
    """sum_j |A_j| over all modes except `exclude` (last axis indexes j-1)."""
    A = np.abs(np.asarray(amplitudes))
    total = A.sum(axis=-1)
    for j in exclude:
        total = total - A[..., j - 1]
    return total


def spectra(trajectory, base) -> tuple[np.ndarray, np.ndarray]:
    """(times, A[t, j-1]) for every stored sample of a trajectory."""
    times, F = trajectory.sample_array()
    if F.shape[-1] != base.grid.N + 1 or trajectory.config.base_profile.grid != base.grid:
        raise IncompatibleGridError("trajectory and base profile live on different grids")
    return times, mode_amplitudes(F - base.values, base.grid).amplitudes


def mode_history(trajectory, base, modes) -> list[ModeHistory]:
    modes = list(modes)
    if not modes:
        return []
    times, A = spectra(trajectory, base)
    for j in modes:
        if not 1 <= j <= base.grid.N - 1:
            raise IndexError(f"mode {j} outside 1..{base.grid.N - 1}")
    return [ModeHistory(j, times, A[:, j - 1].copy()) for j in modes]
