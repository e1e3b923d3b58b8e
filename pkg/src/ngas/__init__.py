"""Non-perturbative gap-equation approximation for anharmonic oscillators and lambda phi^4."""
from .gap import GapSolution, critical_coupling, potential_params, select_phase, solve_gap
from .model import (
    InconsistentGap,
    Level,
    NGASError,
    NoConvergence,
    OscillatorClass,
    OscillatorSpec,
    Phase,
    PhaseNotAvailable,
    PotentialParams,
    WrongClass,
    level_functions,
)
from .spectrum import LevelEnergy, energy_lo, level_energy, moments, scaling_check

__version__ = "0.1.0"

__all__ = [
    "GapSolution", "InconsistentGap", "Level", "LevelEnergy", "NGASError", "NoConvergence",
    "OscillatorClass", "OscillatorSpec", "Phase", "PhaseNotAvailable", "PotentialParams",
    "WrongClass", "critical_coupling", "energy_lo", "level_energy", "level_functions",
    "moments", "potential_params", "scaling_check", "select_phase", "solve_gap",
]
