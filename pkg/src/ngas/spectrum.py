"""Leading-order energy levels and the quantum-average moments."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gap import GapSolution, potential_params, solve_gap
from .model import (
    InconsistentGap,
    OscillatorClass,
    OscillatorSpec,
    Phase,
    WrongClass,
    as_level,
)
from .moments import Moments, energy_functional, moments_at

__all__ = [
    "LevelEnergy",
    "Moments",
    "moments",
    "energy_lo",
    "level_energy",
    "scaling_check",
]


@dataclass(frozen=True)
class LevelEnergy:
    e0: float
    de2: Optional[float] = None
    de3: Optional[float] = None

    @property
    def total(self) -> float:
        return self.e0 + (self.de2 or 0.0) + (self.de3 or 0.0)


def moments(gap: GapSolution, level) -> Moments:
    if not gap.omega > 0:
        raise ValueError("omega must be positive")
    return moments_at(gap.omega, gap.sigma, as_level(level).xi)


def _closed_form(spec: OscillatorSpec, xi: float, gap: GapSolution) -> float:
    w, g, lam = gap.omega, spec.g, spec.lam
    cls = spec.cls
    if cls is OscillatorClass.QUARTIC_AHO:
        return xi / 4.0 * (3.0 * w + g / w)
    if cls is OscillatorClass.QUARTIC_DWO:
        if gap.phase is Phase.SSB:
            return xi / 4.0 * (3.0 * w + 2.0 * g / w) - g * g / (16.0 * lam)
        return xi / 4.0 * (3.0 * w - g / w)
    if cls is OscillatorClass.SEXTIC_AHO:
        return xi / 3.0 * (2.0 * w + g / w)
    if cls is OscillatorClass.SEXTIC_DWO:
        return xi / 3.0 * (2.0 * w - g / w)
    return xi / 8.0 * (5.0 * w + 3.0 * g / w)


def energy_lo(spec: OscillatorSpec, level, gap: Optional[GapSolution] = None) -> LevelEnergy:
    """Leading-order energy of one level.

    The class closed form is cross-checked against the general functional
    <n|H|n>(omega, sigma) and against omega*xi + h0.
    """
    level = as_level(level)
    if gap is None:
        gap = solve_gap(spec, level)
    xi = level.xi
    e_closed = _closed_form(spec, xi, gap)
    e_func = energy_functional(spec.sign, spec.g, spec.lam, spec.power, gap.omega, gap.sigma, xi)
    e_shift = gap.omega * xi + potential_params(spec, level, gap).h0
    scale = max(1.0, abs(e_closed), abs(e_func))
    for other in (e_func, e_shift):
        if abs(e_closed - other) > 1e-9 * scale:
            raise InconsistentGap(
                f"closed form {e_closed!r} disagrees with functional {other!r} "
                f"for {spec.cls.value} n={level.n}")
    return LevelEnergy(e0=e_closed)


def level_energy(spec: OscillatorSpec, level) -> float:
    return energy_lo(spec, level).e0


def scaling_check(g: float, lam: float, level) -> float:
    """Relative violation of E(g, lam) = lam^(1/3) E(g lam^(-2/3), 1) for the quartic AHO."""
    if not lam > 0:
        raise ValueError("scaling check needs lambda > 0")
    lhs = level_energy(OscillatorSpec(OscillatorClass.QUARTIC_AHO, g, lam), level)
    rhs = lam ** (1.0 / 3.0) * level_energy(
        OscillatorSpec(OscillatorClass.QUARTIC_AHO, g * lam ** (-2.0 / 3.0), 1.0), level)
    return abs(lhs - rhs) / abs(lhs)


def scaling_check_for(spec: OscillatorSpec, level) -> float:
    if spec.cls is not OscillatorClass.QUARTIC_AHO:
        raise WrongClass("scaling law is stated for the quartic AHO only")
    return scaling_check(spec.g, spec.lam, level)
