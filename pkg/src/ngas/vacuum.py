"""Vacuum structure of the quartic oscillator as a squeezed free-particle state."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .gap import _cubic_aho, solve_gap
from .model import NGASError, OscillatorSpec, WrongClass


class GapFailure(NGASError):
    pass


@dataclass(frozen=True)
class VacuumStructure:
    alpha: float
    n0: float
    omega0: float
    omega: float


def vacuum_structure(spec: OscillatorSpec, level=0) -> VacuumStructure:
    """Bogoliubov parameter and free-quanta density for the effective vacuum."""
    if spec.cls.is_double_well:
        raise WrongClass("vacuum structure is defined on the single-well (sigma = 0) branch")
    w = solve_gap(spec, level).omega
    w0 = math.sqrt(spec.g)
    n0 = 0.25 * (w / w0 + w0 / w - 2.0)
    return VacuumStructure(alpha=0.5 * math.log(w0 / w), n0=max(n0, 0.0), omega0=w0, omega=w)


def _omega_at(lam: float, sigma: float) -> float:
    # omega^3 - (1 + 12 lam sigma^2) omega - 6 lam = 0, largest root
    g_eff = 1.0 + 12.0 * lam * sigma * sigma
    w = _cubic_aho(g_eff, lam, 1.0)
    for _ in range(3):
        val = w**3 - g_eff * w - 6.0 * lam
        der = 3.0 * w * w - g_eff
        if der <= 0:
            break
        w -= val / der
    res = abs(w**3 - g_eff * w - 6.0 * lam)
    if not (w > 0 and math.isfinite(w)) or res > 1e-10 * max(1.0, w**3):
        raise GapFailure(f"no frequency at sigma={sigma!r}")
    return w


def effective_potential_qm(lam: float, sigma_grid: Iterable[float]) -> list[tuple[float, float, float]]:
    """Rows (sigma, omega(sigma), V_eff(sigma)) for the g = 1 quartic oscillator."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    rows = []
    for s in sigma_grid:
        s = float(s)
        if not math.isfinite(s):
            raise GapFailure("non-finite grid point")
        w = _omega_at(lam, s)
        v = (w / 4.0 + (1.0 + 12.0 * lam * s * s) / (4.0 * w) + 3.0 * lam / (4.0 * w * w)
             + s * s / 2.0 + lam * s**4)
        rows.append((s, w, v))
    return rows


def stability_gap(lam: float) -> float:
    """Ground energy minus its first-order perturbative value, for g = 1."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    w = _omega_at(lam, 0.0)
    return 0.25 * (w + 1.0 / w) + 0.75 * lam * (1.0 / (w * w) - 1.0) - 0.5
