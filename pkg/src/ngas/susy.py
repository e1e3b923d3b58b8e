"""Supersymmetric partners built from the superpotential W = beta phi^3.

H_pm = p^2 + W^2 -+ W' is twice the oscillator p^2/2 + (W^2 -+ W')/2, so the
partner pair maps onto sextic specs with lam = beta^2/2 and g = 3 beta, and
every energy quoted here is doubled to match the p^2 + W^2 -+ W' convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .model import NGASError, OscillatorClass, OscillatorSpec
from .oracle import converged_levels
from .spectrum import level_energy


class QuadratureNotConverged(NGASError):
    pass


@dataclass(frozen=True)
class SusyPair:
    beta: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")

    @property
    def lam(self) -> float:
        return self.beta**2 / 2.0

    @property
    def g(self) -> float:
        return 3.0 * self.beta

    @property
    def aho_spec(self) -> OscillatorSpec:
        return OscillatorSpec(OscillatorClass.SEXTIC_AHO, self.g, self.lam)

    @property
    def dwo_spec(self) -> OscillatorSpec:
        return OscillatorSpec(OscillatorClass.SEXTIC_DWO, self.g, self.lam)


@dataclass(frozen=True)
class GaussianState:
    amplitude: float
    width_exponent: float

    def __call__(self, phi):
        return self.amplitude * np.exp(-self.width_exponent * np.asarray(phi) ** 2)

    @property
    def norm(self) -> float:
        return self.amplitude**2 * math.sqrt(math.pi / (2.0 * self.width_exponent))


@dataclass(frozen=True)
class QuarticExponentState:
    """``amplitude * exp(-beta phi^4 / 4)``, the exact SUSY ground state."""

    amplitude: float
    beta: float

    def __call__(self, phi):
        return self.amplitude * np.exp(-self.beta * np.asarray(phi) ** 4 / 4.0)


@dataclass(frozen=True)
class IsppRow:
    n: int
    e_aho: float
    e_dwo_next: float
    relative_gap: float


@dataclass(frozen=True)
class SusyExactReport:
    beta: float
    dwo_ground: float
    pairs: tuple[tuple[int, float, float], ...]
    max_pair_mismatch: float
    ground_ok: bool
    pairs_ok: bool


@dataclass(frozen=True)
class GroundStateComparison:
    susy_state: QuarticExponentState
    ngas_state: GaussianState
    overlap: float


def ispp_table(beta: float, n_max: int) -> list[IsppRow]:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    pair = SusyPair(beta)
    rows = []
    for n in range(n_max + 1):
        ea = 2.0 * level_energy(pair.aho_spec, n)
        ed = 2.0 * level_energy(pair.dwo_spec, n + 1)
        rows.append(IsppRow(n, ea, ed, abs(ed - ea) / ea))
    return rows


def susy_exact_checks(beta: float, n_pairs: int = 5, tol: float = 1e-10) -> SusyExactReport:
    """Oracle test of unbroken SUSY: zero DWO ground energy and paired levels."""
    pair = SusyPair(beta)
    aho = converged_levels(pair.aho_spec, n_pairs, tol)
    dwo = converged_levels(pair.dwo_spec, n_pairs + 1, tol)
    pairs = tuple((n, 2.0 * aho.eigenvalues[n], 2.0 * dwo.eigenvalues[n + 1]) for n in range(n_pairs))
    mismatch = max(abs(a - d) / max(1.0, abs(a)) for _, a, d in pairs)
    e0 = 2.0 * dwo.eigenvalues[0]
    return SusyExactReport(beta=beta, dwo_ground=e0, pairs=pairs, max_pair_mismatch=mismatch,
                           ground_ok=-1e-6 <= e0 <= 1e-4, pairs_ok=mismatch <= 1e-6)


def susy_amplitude(beta: float) -> float:
    return (8.0 * beta) ** 0.125 / math.sqrt(math.gamma(0.25))


def ngas_ground_frequency(beta: float) -> float:
    pair = SusyPair(beta)
    g, lam = pair.g, pair.lam
    return math.sqrt((-g + math.sqrt(g * g + 90.0 * lam)) / 2.0)


def groundstate_comparison(beta: float) -> GroundStateComparison:
    if not beta > 0:
        raise ValueError("beta must be positive")
    susy = QuarticExponentState(susy_amplitude(beta), beta)
    w = ngas_ground_frequency(beta)
    ngas = GaussianState((w / math.pi) ** 0.25, w / 2.0)
    # both states are even; integrate over the half line on the natural scale
    scale = beta ** -0.25
    val, err = integrate.quad(lambda x: susy(x) * ngas(x), 0.0, np.inf,
                              epsabs=0.0, epsrel=1e-12, limit=200)
    if not np.isfinite(val) or err > 1e-10 * max(abs(val), scale):
        raise QuadratureNotConverged(f"overlap integral error estimate {err:.2e}")
    return GroundStateComparison(susy, ngas, 2.0 * val)


def wavefunction_curves(beta: float, phi_max: float = 3.0, points: int = 121):
    """Rows (phi, psi_susy, psi_ngas) for plotting the two ground states."""
    cmp = groundstate_comparison(beta)
    phi = np.linspace(-phi_max, phi_max, points)
    return [(float(x), float(cmp.susy_state(x)), float(cmp.ngas_state(x))) for x in phi]
