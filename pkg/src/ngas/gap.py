"""Gap equations, ground-state configuration and the approximating potential.

The frequency omega of the effective shifted oscillator at level n follows from
stationarity of <n|H|n> in omega; the shift sigma from stationarity in sigma.
For every class except the quartic double well only sigma = 0 is physical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .model import (
    InconsistentGap,
    Level,
    NoConvergence,
    OscillatorClass,
    OscillatorSpec,
    Phase,
    PhaseNotAvailable,
    PotentialParams,
    as_level,
    f_xi,
    h_xi,
    p_xi,
)
from .moments import field_moment

# Value printed alongside the critical-coupling formula for (g=1, n=0).  The
# formula itself gives (2/3)**1.5/6 = 0.0907...; both are kept, the formula is
# what select_phase uses.
PRINTED_LAMBDA_C_GROUND = 0.0362886

_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class GapSolution:
    omega: float
    sigma: float
    phase: Phase
    residual: float
    trig_rho: Optional[float] = None
    trig_theta: Optional[float] = None


def critical_coupling(g: float, level) -> float:
    """Coupling below which the broken phase of the quartic double well exists."""
    if not g > 0:
        raise ValueError("g must be positive")
    p = p_xi(as_level(level).xi)
    if p <= 0:
        raise ValueError("degenerate level function p(xi) <= 0")
    return (2.0 * g / 3.0) ** 1.5 / (3.0 * p)


def select_phase(spec: OscillatorSpec, level) -> Phase:
    if spec.cls is OscillatorClass.QUARTIC_DWO and spec.lam <= critical_coupling(spec.g, level):
        return Phase.SSB
    return Phase.SR


def gap_polynomial(spec: OscillatorSpec, level, omega: float, phase: Phase = Phase.SR):
    """Return (value, derivative, constant term) of the gap polynomial at omega."""
    xi = as_level(level).xi
    g, lam, s = spec.g, spec.lam, spec.sign
    power = spec.power
    if phase is Phase.SSB:
        c = 6.0 * lam * p_xi(xi)
        return omega**3 - 2.0 * g * omega + c, 3.0 * omega**2 - 2.0 * g, c
    if power == 4:
        c = 6.0 * lam * f_xi(xi)
        return omega**3 - s * g * omega - c, 3.0 * omega**2 - s * g, c
    if power == 6:
        c = 3.75 * lam * (5.0 + 4.0 * xi**2)
        return (omega**4 - s * g * omega**2 - c,
                4.0 * omega**3 - 2.0 * s * g * omega, c)
    c = 35.0 * lam * h_xi(xi)
    return omega**5 - s * g * omega**3 - c, 5.0 * omega**4 - 3.0 * s * g * omega**2, c


def _polish(spec, level, omega, phase, steps=4):
    # Newton steps on the gap polynomial; stop once the update is at roundoff.
    for _ in range(steps):
        val, der, _ = gap_polynomial(spec, level, omega, phase)
        if der == 0 or val == 0:
            break
        step = val / der
        if abs(step) > 0.1 * omega:
            break
        omega -= step
        if abs(step) <= 1e-16 * omega:
            break
    return omega


def _cubic_aho(g: float, lam: float, f: float) -> float:
    """Largest root of w^3 - g w - 6 lam f = 0 in Cardano form.

    With P = g/3, Q = 3 lam f and rho = P^3/Q^2 the root is
    Q^(1/3) [(1 + sqrt(1-rho))^(1/3) + (1 - sqrt(1-rho))^(1/3)].  For rho > 1 the
    two cube roots are complex conjugates and the sum is 2 Re of one of them.
    """
    if lam == 0:
        return math.sqrt(g)
    P = g / 3.0
    Q = 3.0 * lam * f
    rho = P**3 / Q**2
    if rho <= 1.0:
        r = math.sqrt(1.0 - rho)
        return Q ** (1.0 / 3.0) * ((1.0 + r) ** (1.0 / 3.0) + (1.0 - r) ** (1.0 / 3.0))
    # principal cube root of 1 + i sqrt(rho - 1) = sqrt(rho) exp(i phi)
    phi = math.atan(math.sqrt(rho - 1.0))
    return 2.0 * math.sqrt(P) * math.cos(phi / 3.0)


def _cubic_dwo_sr(g: float, lam: float, f: float) -> float:
    """Unique positive root of w^3 + g w - 6 lam f = 0.

    Cardano gives Q^(1/3) (a - b) with a^3 - b^3 = 2 and ab = rho^(1/3); the
    difference is evaluated as 2/(a^2 + ab + b^2) to avoid cancellation.
    """
    Q = 3.0 * lam * f
    rho = g**3 / (243.0 * lam**2 * f**2)
    s = math.sqrt(1.0 + rho)
    a = (s + 1.0) ** (1.0 / 3.0)
    ab = rho ** (1.0 / 3.0)
    b = ab / a
    return Q ** (1.0 / 3.0) * 2.0 / (a * a + ab + b * b)


def _ssb_trig(g: float, lam: float, lam_c: float) -> tuple[float, float, float]:
    rho = math.sqrt(2.0 * g / 3.0)
    theta = math.pi / 2.0 + math.asin(lam / lam_c)
    return 2.0 * rho * math.cos(theta / 3.0), rho, theta


def _sextic(g: float, lam: float, xi: float, sign: int) -> float:
    disc = math.sqrt(g * g + 15.0 * lam * (5.0 + 4.0 * xi**2))
    if sign > 0:
        w2 = 0.5 * (g + disc)
    else:
        # (-g + disc)/2 rewritten without cancellation
        w2 = 7.5 * lam * (5.0 + 4.0 * xi**2) / (g + disc)
    return math.sqrt(w2)


def _octic(g: float, lam: float, xi: float, maxiter: int = 200) -> float:
    """Positive root of w^5 - g w^3 - c by Newton safeguarded with bisection."""
    c = 35.0 * lam * h_xi(xi)
    lo = math.sqrt(g)
    if c == 0:
        return lo
    hi = c ** 0.2 + math.sqrt(g) + 1.0

    def F(w):
        return w**5 - g * w**3 - c

    if not (F(lo) < 0 < F(hi)):
        raise NoConvergence("octic gap equation bracket does not enclose a root")
    w = 0.5 * (lo + hi)
    for _ in range(maxiter):
        val = F(w)
        if val == 0:
            return w
        if val < 0:
            lo = w
        else:
            hi = w
        der = 5.0 * w**4 - 3.0 * g * w**2
        step = w - val / der if der > 0 else None
        w_new = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if abs(w_new - w) <= 4e-16 * w:
            return w_new
        w = w_new
    raise NoConvergence("octic gap equation did not converge")


def solve_gap(spec: OscillatorSpec, level, phase: Optional[Phase] = None) -> GapSolution:
    """Solve the gap equation for one level; ``phase=None`` picks the stable phase."""
    level = as_level(level)
    xi = level.xi
    phase = select_phase(spec, level) if phase is None else Phase(phase)
    g, lam = spec.g, spec.lam
    cls = spec.cls
    sigma = 0.0
    rho = theta = None

    if phase is Phase.SSB:
        if cls is not OscillatorClass.QUARTIC_DWO:
            raise PhaseNotAvailable(f"no broken phase for {cls.value}")
        lam_c = critical_coupling(g, level)
        if lam > lam_c:
            raise PhaseNotAvailable(f"lambda={lam} above critical coupling {lam_c}")
        omega, rho, theta = _ssb_trig(g, lam, lam_c)
    elif cls is OscillatorClass.QUARTIC_AHO:
        omega = _cubic_aho(g, lam, f_xi(xi))
    elif cls is OscillatorClass.QUARTIC_DWO:
        omega = _cubic_dwo_sr(g, lam, f_xi(xi))
    elif spec.power == 6:
        omega = _sextic(g, lam, xi, spec.sign)
    else:
        omega = _octic(g, lam, xi)

    if lam > 0:
        omega = _polish(spec, level, omega, phase)
    if phase is Phase.SSB:
        # the +sigma and -sigma vacua are degenerate; report sigma >= 0
        sigma2 = (g - 12.0 * lam * xi / omega) / (4.0 * lam)
        if sigma2 < 0:
            raise PhaseNotAvailable("broken-phase shift sigma^2 would be negative")
        sigma = math.sqrt(sigma2)
    val, _, const = gap_polynomial(spec, level, omega, phase)
    residual = abs(val)
    if not omega > 0 or residual > _RESIDUAL_RTOL * max(1.0, abs(const)):
        raise NoConvergence(f"gap residual {residual:.3e} too large for {spec}, n={level.n}")
    return GapSolution(omega=omega, sigma=sigma, phase=phase, residual=residual,
                       trig_rho=rho, trig_theta=theta)


def _a_coefficient(power: int, omega: float, sigma: float, xi: float) -> float:
    """Quadratic coefficient of the approximating potential from the gap equation."""
    s2 = sigma * sigma
    if power == 4:
        return 6.0 * s2 + 3.0 * f_xi(xi) / omega
    if power == 6:
        return (15.0 * s2 * s2 + 45.0 * s2 * (1.0 + 4.0 * xi**2) / (4.0 * xi * omega)
                + 15.0 / (8.0 * omega**2) * (5.0 + 4.0 * xi**2))
    return (28.0 * s2**3 + 105.0 * s2 * s2 * (1.0 + 4.0 * xi**2) / (2.0 * xi * omega)
            + 105.0 * s2 / (2.0 * omega**2) * (5.0 + 4.0 * xi**2)
            + 35.0 * h_xi(xi) / (2.0 * omega**3))


def potential_params(spec: OscillatorSpec, level, gap: GapSolution) -> PotentialParams:
    """A, B, C and h0 for the level's approximating potential.

    A comes from the class's gap-equation rearrangement and is checked against
    omega^2 = s g + 2 lam A; B inverts sigma = lam B / omega^2; C enforces equal
    averages of phi^(2k) and the approximating potential.
    """
    xi = as_level(level).xi
    if spec.lam == 0:
        return PotentialParams(0.0, 0.0, 0.0, 0.0)
    omega, sigma = gap.omega, gap.sigma
    A = _a_coefficient(spec.power, omega, sigma, xi)
    w2 = spec.sign * spec.g + 2.0 * spec.lam * A
    if abs(w2 - omega**2) > 1e-10 * max(omega**2, spec.g):
        raise InconsistentGap(f"omega^2={omega**2!r} but s*g + 2*lam*A={w2!r}")
    B = omega**2 * sigma / spec.lam
    C = (field_moment(spec.power, omega, sigma, xi)
         - A * field_moment(2, omega, sigma, xi) + B * sigma)
    h0 = spec.lam * C - 0.5 * omega**2 * sigma**2
    return PotentialParams(A=A, B=B, C=C, h0=h0)
