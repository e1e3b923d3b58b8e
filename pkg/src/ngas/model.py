"""Oscillator conventions, immutable domain types and the level functions.

Every oscillator handled here has the Hamiltonian

    H = p^2/2 + s * g * phi^2 / 2 + lam * phi^(2k)

with ``s = +1`` (anharmonic, AHO) or ``s = -1`` (double well, DWO), ``g > 0``
and ``2k`` in {4, 6, 8}.  The sign of the quadratic term is carried by the
oscillator class, never by ``g``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass


class NGASError(Exception):
    """Base class for all errors raised by the package."""


class PhaseNotAvailable(NGASError):
    pass


class NoConvergence(NGASError):
    pass


class InconsistentGap(NGASError):
    pass


class WrongClass(NGASError):
    pass


class OscillatorClass(enum.Enum):
    QUARTIC_AHO = "quartic-aho"
    QUARTIC_DWO = "quartic-dwo"
    SEXTIC_AHO = "sextic-aho"
    SEXTIC_DWO = "sextic-dwo"
    OCTIC_AHO = "octic-aho"

    @property
    def anharmonic_power(self) -> int:
        return {"quartic": 4, "sextic": 6, "octic": 8}[self.value.split("-")[0]]

    @property
    def quadratic_sign(self) -> int:
        return 1 if self.value.endswith("aho") else -1

    @property
    def is_double_well(self) -> bool:
        return self.quadratic_sign < 0


class Phase(enum.Enum):
    SR = "SR"
    SSB = "SSB"


@dataclass(frozen=True)
class OscillatorSpec:
    """Oscillator class plus its two couplings.

    ``lam == 0`` is accepted for the single-well classes only, where it is the
    harmonic limit; a double well without the confining term is unbounded.
    """

    cls: OscillatorClass
    g: float
    lam: float

    def __post_init__(self):
        if not isinstance(self.cls, OscillatorClass):
            object.__setattr__(self, "cls", OscillatorClass(self.cls))
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g!r}")
        if self.lam < 0 or self.lam != self.lam:
            raise ValueError(f"lambda must be non-negative, got {self.lam!r}")
        if self.lam == 0 and self.cls.is_double_well:
            raise ValueError("a double-well oscillator needs lambda > 0")

    @property
    def power(self) -> int:
        return self.cls.anharmonic_power

    @property
    def sign(self) -> int:
        return self.cls.quadratic_sign


@dataclass(frozen=True)
class Level:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"level index must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def xi(self) -> float:
        return self.n + 0.5


@dataclass(frozen=True)
class PotentialParams:
    """Coefficients of the approximating potential ``A phi^2 - B phi + C`` and the shift h0."""

    A: float
    B: float
    C: float
    h0: float


def f_xi(xi: float) -> float:
    return xi + 1.0 / (4.0 * xi)


def p_xi(xi: float) -> float:
    return 5.0 * xi - 1.0 / (4.0 * xi)


def h_xi(xi: float) -> float:
    return xi**3 + 3.5 * xi + 9.0 / (16.0 * xi)


def level_functions(level: Level) -> tuple[float, float, float]:
    """Return ``(f, p, h)`` evaluated at ``xi = n + 1/2``."""
    xi = level.xi
    return f_xi(xi), p_xi(xi), h_xi(xi)


def as_level(level) -> Level:
    return level if isinstance(level, Level) else Level(level)
