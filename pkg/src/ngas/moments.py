"""Quantum averages of field powers in an eigenstate of a shifted oscillator.

For ``phi = sigma + (b + b^dagger)/sqrt(2 omega)`` and the n-th eigenstate,
odd central moments vanish and the even ones depend only on ``xi = n + 1/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class Moments:
    m1: float
    m2: float
    m3: float
    m4: float
    m6: float
    m8: float
    p2: float

    def power(self, k: int) -> float:
        return {1: self.m1, 2: self.m2, 3: self.m3, 4: self.m4, 6: self.m6, 8: self.m8}[k]


def central_moments(omega: float, xi: float) -> dict[int, float]:
    return {
        0: 1.0,
        2: xi / omega,
        4: 3.0 * (1.0 + 4.0 * xi**2) / (8.0 * omega**2),
        6: (5.0 / 8.0) * (xi / omega**3) * (5.0 + 4.0 * xi**2),
        8: (35.0 / 128.0) * (16.0 * xi**4 + 56.0 * xi**2 + 9.0) / omega**4,
    }


def field_moment(k: int, omega: float, sigma: float, xi: float) -> float:
    """<phi^k> by binomial expansion around the shift sigma (k <= 8)."""
    c = central_moments(omega, xi)
    return sum(comb(k, j) * sigma ** (k - j) * c[j] for j in range(0, k + 1, 2))


def moments_at(omega: float, sigma: float, xi: float) -> Moments:
    return Moments(
        m1=sigma,
        m2=field_moment(2, omega, sigma, xi),
        m3=field_moment(3, omega, sigma, xi),
        m4=field_moment(4, omega, sigma, xi),
        m6=field_moment(6, omega, sigma, xi),
        m8=field_moment(8, omega, sigma, xi),
        p2=omega * xi,
    )


def energy_functional(sign: int, g: float, lam: float, power: int,
                      omega: float, sigma: float, xi: float) -> float:
    """<n|H|n> for trial parameters (omega, sigma), valid off the gap equation too."""
    return (0.5 * omega * xi
            + 0.5 * sign * g * field_moment(2, omega, sigma, xi)
            + lam * field_moment(power, omega, sigma, xi))
