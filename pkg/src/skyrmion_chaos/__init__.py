"""Hedgehog skyrmions with a modified symmetry-breaking term: static profiles,
B=2 masses, time evolution and sine-mode diagnostics."""
from .dynamics import EvolutionConfig, FieldState, Model, Trajectory, evolve, init_perturbed
from .energy import MassBreakdown, hamiltonian, mass_m2, mass_m4
from .lattice import Grid
from .model import ModelParams, SbVariant, StaticEquationSpec, derive_dimensionless, kink_profile
from .spectral import ModeSpectrum, mode_amplitudes, mode_history, reconstruct
from .static import Profile, kink_comparison, solve_static

__version__ = "0.1.0"
