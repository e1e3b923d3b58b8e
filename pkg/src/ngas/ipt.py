"""Rayleigh-Schroedinger corrections around the level's effective oscillator.

The unperturbed operator is H0(n), the shifted oscillator fitted to level n;
the perturbation lam*H' = lam*(phi^(2k) - V(phi)) has zero average in |n>, so
the first correction vanishes and the series starts at second order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gap import GapSolution, potential_params, solve_gap
from .model import NGASError, OscillatorSpec, as_level
from .spectrum import level_energy

FIXED = "fixed"
LO_LEVELS = "lo-levels"
DENOMINATORS = (FIXED, LO_LEVELS)

SUPPORTED_POWERS = (1, 2, 3, 4, 6, 8)


class UnsupportedPower(NGASError):
    pass


class TruncationNotConverged(NGASError):
    pass


@dataclass(frozen=True)
class ResidualElement:
    m: int
    n: int
    value: float


@lru_cache(maxsize=4096)
def _ladder_x(j: int, n: int) -> tuple[tuple[int, float], ...]:
    """(b + b^dagger)^j |n> as sparse (index, coefficient) pairs."""
    state = {n: 1.0}
    for _ in range(j):
        nxt: dict[int, float] = {}
        for k, c in state.items():
            nxt[k + 1] = nxt.get(k + 1, 0.0) + c * math.sqrt(k + 1)
            if k > 0:
                nxt[k - 1] = nxt.get(k - 1, 0.0) + c * math.sqrt(k)
        state = nxt
    return tuple(sorted(state.items()))


def phi_power_element(m: int, n: int, power: int, omega: float, sigma: float = 0.0) -> float:
    """<m| phi^power |n> with phi = sigma + (b + b^dagger)/sqrt(2 omega)."""
    if power not in SUPPORTED_POWERS:
        raise UnsupportedPower(f"power {power} not in {SUPPORTED_POWERS}")
    if m < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    if not omega > 0:
        raise ValueError("omega must be positive")
    total = 0.0
    for j in range(power + 1):
        if (j - (m - n)) % 2 or abs(m - n) > j:
            continue
        coeff = math.comb(power, j) * sigma ** (power - j) / (2.0 * omega) ** (j / 2.0)
        if coeff == 0.0:
            continue
        amp = dict(_ladder_x(j, n)).get(m, 0.0)
        total += coeff * amp
    return total


def _residual_operator(spec: OscillatorSpec, level, gap: GapSolution):
    params = potential_params(spec, level, gap)
    lam, k = spec.lam, spec.power
    w, s = gap.omega, gap.sigma

    def element(m: int, j: int) -> float:
        v = phi_power_element(m, j, k, w, s) - params.A * phi_power_element(m, j, 2, w, s)
        if s != 0.0:
            v += params.B * phi_power_element(m, j, 1, w, s)
        if m == j:
            v -= params.C
        return lam * v

    return element


def residual_element(spec: OscillatorSpec, level_n, m: int, gap: GapSolution | None = None) -> ResidualElement:
    """<m| lam (phi^(2k) - V) |n> in the eigenbasis of H0 fitted to level n."""
    level = as_level(level_n)
    gap = solve_gap(spec, level) if gap is None else gap
    element = _residual_operator(spec, level, gap)
    return ResidualElement(m=m, n=level.n, value=element(m, level.n))


def residual_matrix(spec: OscillatorSpec, level, window: int, gap: GapSolution | None = None):
    """Dense block of lam*H' over indices [max(0, n-window), n+window]."""
    level = as_level(level)
    gap = solve_gap(spec, level) if gap is None else gap
    element = _residual_operator(spec, level, gap)
    idx = np.arange(max(0, level.n - window), level.n + window + 1)
    band = 2 * spec.power if gap.sigma != 0.0 else spec.power
    mat = np.zeros((idx.size, idx.size))
    for a, i in enumerate(idx):
        for b in range(a, idx.size):
            j = idx[b]
            if j - i > band:
                break
            mat[a, b] = mat[b, a] = element(int(i), int(j))
    return idx, mat, gap


def _denominators(spec, level, idx, gap, denominator):
    n = level.n
    if denominator == FIXED:
        return (n - idx) * gap.omega
    if denominator == LO_LEVELS:
        e_n = level_energy(spec, level)
        return np.array([e_n - level_energy(spec, int(m)) for m in idx])
    raise ValueError(f"denominator must be one of {DENOMINATORS}, got {denominator!r}")


def _corrections(spec, level, window, denominator):
    idx, V, gap = residual_matrix(spec, level, window)
    pos = int(np.searchsorted(idx, level.n))
    first = V[pos, pos]
    d = _denominators(spec, level, idx, gap, denominator)
    mask = idx != level.n
    vn = V[pos, mask]
    dn = d[mask]
    de2 = float(np.sum(vn * vn / dn))
    u = vn / dn
    de3 = float(u @ V[np.ix_(mask, mask)] @ u)
    return first, de2, de3


def first_order(spec: OscillatorSpec, level, window: int = 16) -> float:
    """<n|lam H'|n>, evaluated numerically rather than assumed zero."""
    first, _, _ = _corrections(spec, as_level(level), window, FIXED)
    return first


def _converged(spec, level, window, denominator):
    level = as_level(level)
    _, de2, de3 = _corrections(spec, level, window, denominator)
    _, de2b, de3b = _corrections(spec, level, window + 8, denominator)
    if abs(de2b - de2) > 1e-9 * max(abs(de2b), 1e-300) and abs(de2b - de2) > 1e-15:
        raise TruncationNotConverged(f"second-order sum changed by {de2b - de2:.3e} when enlarging window")
    return de2, de3


def correction_order2(spec: OscillatorSpec, level, window: int = 16, denominator: str = FIXED) -> float:
    return _converged(spec, level, window, denominator)[0]


def correction_order3(spec: OscillatorSpec, level, window: int = 16, denominator: str = FIXED) -> float:
    return _converged(spec, level, window, denominator)[1]


def corrections(spec: OscillatorSpec, level, window: int = 16, denominator: str = FIXED) -> tuple[float, float]:
    """(de2, de3) in one pass."""
    return _converged(spec, level, window, denominator)
