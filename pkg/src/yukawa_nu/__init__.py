"""Bound states of the Yukawa potential from the parametric Nikiforov-Uvarov
closed form, checked against a numerical solution of the exact radial equation."""

from .errors import (
    AccuracyError,
    ConvergenceError,
    NoBoundStateError,
    NoRealSolutionError,
    ParameterDomainError,
    StateNotFoundError,
)
from .yukawa_model import (
    BoundState,
    PotentialParams,
    QuantumNumbers,
    coulomb_energy,
    energy_nl,
    radial_wavefunction,
)

__version__ = "0.1.0"
