"""Gaussian (leading-order) treatment of lambda phi^4 theory in 3+1 dimensions.

Two regimes are kept apart on purpose.  Bare quantities (m^2, lam) only make
sense at a finite 3-momentum cutoff, which every bare-side function takes
explicitly.  The renormalized effective potential is written in the
cutoff-free variables t = M^2/m_R^2, eta = -4 pi^2 / lam_R and sigma/m_R.

Momentum integrals use a sharp cutoff and closed-form antiderivatives:

    I_n(x) = (1/4 pi^2) int_0^Lambda k^2 (k^2 + x^2)^(n - 1/2) dk,  n = -1, 0, 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .model import NGASError

FOUR_PI2 = 4.0 * math.pi**2
SIXTEEN_PI2 = 16.0 * math.pi**2


class NoPositiveSolution(NGASError):
    pass


class BranchUnavailable(NGASError):
    pass


class OutsideDomain(NGASError):
    pass


@dataclass(frozen=True)
class StevensonIntegrals:
    mass: float
    cutoff: float
    i0: float
    i1: float
    im1: float


def stevenson_integrals(mass: float, cutoff: float) -> StevensonIntegrals:
    if mass < 0 or not math.isfinite(mass):
        raise ValueError("mass must be finite and non-negative")
    if not cutoff > 0 or not math.isfinite(cutoff):
        raise ValueError("cutoff must be finite and positive")
    lam_, x = cutoff, mass
    if x == 0.0:
        return StevensonIntegrals(mass, cutoff, lam_**2 / (2.0 * FOUR_PI2),
                                  lam_**4 / (4.0 * FOUR_PI2), math.inf)
    r = math.hypot(lam_, x)
    ash = math.asinh(lam_ / x)
    x2 = x * x
    i0 = 0.5 * (lam_ * r - x2 * ash) / FOUR_PI2
    i1 = (lam_ * (2.0 * lam_**2 + x2) * r - x2 * x2 * ash) / (8.0 * FOUR_PI2)
    im1 = (ash - lam_ / r) / FOUR_PI2
    return StevensonIntegrals(mass, cutoff, i0, i1, im1)


def _ints(m2: float, cutoff: float) -> StevensonIntegrals:
    return stevenson_integrals(math.sqrt(m2), cutoff)


def gaussian_energy(m2_bare: float, lambda_bare: float, M2: float, sigma: float, cutoff: float) -> float:
    """<H> per unit volume in the Gaussian vacuum of mass M shifted by sigma."""
    s = _ints(M2, cutoff)
    s2 = sigma * sigma
    return (s.i1 - 0.5 * M2 * s.i0 + 0.5 * m2_bare * (s2 + s.i0)
            + lambda_bare * (s2 * s2 + 6.0 * s2 * s.i0 + 3.0 * s.i0**2))


def _gap_residual(M2, m2, lam, sigma, cutoff):
    return M2 - m2 - 12.0 * lam * sigma * sigma - 12.0 * lam * _ints(M2, cutoff).i0


def bare_gap(m2_bare: float, lambda_bare: float, sigma: float, cutoff: float,
             points: int = 1200) -> float:
    """Mass gap M^2 solving M^2 = m^2 + 12 lam sigma^2 + 12 lam I0(M^2).

    For lam >= 0 the residual is increasing in M^2 and the root is unique.  For
    lam < 0 several roots can exist; the one returned is the lowest-energy
    local minimum of the Gaussian energy, i.e. a root where the residual
    crosses zero from below.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    if lambda_bare == 0:
        if m2_bare <= 0:
            raise NoPositiveSolution("free theory with m^2 <= 0 has no positive mass gap")
        return float(m2_bare)
    scale = abs(m2_bare) + 12.0 * abs(lambda_bare) * (sigma * sigma + cutoff**2 / (2.0 * FOUR_PI2))
    scale = max(scale, 1e-300)
    grid = np.geomspace(1e-30 * scale, 1e3 * scale, points)
    vals = [_gap_residual(x, m2_bare, lambda_bare, sigma, cutoff) for x in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa < 0 <= fb:
            roots.append(brentq(_gap_residual, a, b, args=(m2_bare, lambda_bare, sigma, cutoff),
                                xtol=1e-300, rtol=1e-15, maxiter=500))
    if not roots:
        raise NoPositiveSolution(
            f"no positive M^2 for m^2={m2_bare!r}, lambda={lambda_bare!r}, sigma={sigma!r}")
    return min(roots, key=lambda r: gaussian_energy(m2_bare, lambda_bare, r, sigma, cutoff))


class Renormalized(NamedTuple):
    m_r: float
    lambda_r: float


@dataclass(frozen=True)
class BareParameters:
    m2: float
    lam: float
    order: str
    margin: float  # 1 + 6 lam I_{-1}(m_R); vanishes on the precarious branch as the cutoff grows


def renormalize(m2_bare: float, lambda_bare: float, cutoff: float) -> Renormalized:
    """Forward map (m^2, lam) at cutoff Lambda -> (m_R, lam_R)."""
    m2_r = bare_gap(m2_bare, lambda_bare, 0.0, cutoff)
    m_r = math.sqrt(m2_r)
    a = stevenson_integrals(m_r, cutoff).im1
    lam = lambda_bare
    denom = 1.0 + 6.0 * lam * a
    if denom == 0.0:
        raise BranchUnavailable("renormalized coupling diverges at 1 + 6 lam I_-1 = 0")
    return Renormalized(m_r, lam * (1.0 - 12.0 * lam * a) / denom)


def bare_from_renormalized(m_r: float, lambda_r: float, cutoff: float,
                           order: str = "exact") -> BareParameters:
    """Bare parameters on the precarious (negative, vanishing) coupling branch.

    ``order="exact"`` takes the root of 12 a lam^2 + (6 a lam_R - 1) lam + lam_R = 0
    (a = I_-1(m_R)) that tends to -1/(6a).  ``order="leading"`` keeps only the
    first correction of its large-a expansion, lam = -(1 + 1/(2 a lam_R))/(6a),
    with bare mass m_R^2 + 2 I0/I_-1.
    """
    if not m_r > 0:
        raise ValueError("m_r must be positive")
    ints = stevenson_integrals(m_r, cutoff)
    a = ints.im1
    if lambda_r == 0:
        raise BranchUnavailable("lam_R = 0 is the trivial theory, not the precarious branch")
    if order == "exact":
        b = 6.0 * a * lambda_r - 1.0
        disc = b * b - 48.0 * a * lambda_r
        if disc < 0:
            raise BranchUnavailable(f"no real bare coupling for lam_R={lambda_r!r} at this cutoff")
        sq = math.sqrt(disc)
        q = -0.5 * (b + math.copysign(sq, b))
        roots = [r for r in (q / (12.0 * a), lambda_r / q if q else math.nan) if r < 0]
        if not roots:
            raise BranchUnavailable("no negative bare coupling for this lam_R")
        lam = min(roots, key=lambda r: abs(1.0 + 6.0 * a * r))
        m2 = m_r * m_r - 12.0 * lam * ints.i0
    elif order == "leading":
        lam = -(1.0 + 1.0 / (2.0 * a * lambda_r)) / (6.0 * a)
        if not lam < 0:
            raise BranchUnavailable("leading-order precarious coupling is not negative here")
        m2 = m_r * m_r + 2.0 * ints.i0 / a
    else:
        raise ValueError("order must be 'exact' or 'leading'")
    return BareParameters(m2=m2, lam=lam, order=order, margin=1.0 + 6.0 * lam * a)


def sigma_min_sq(eta: float, m_r: float = 1.0) -> float:
    """Largest sigma^2 for which the renormalized gap equation has a solution."""
    return m_r * m_r / SIXTEEN_PI2 * (math.exp(-eta) + eta - 1.0)


def gap_function(t: float, eta: float, s: float) -> float:
    return (1.0 - eta) * (t - 1.0) - s - t * math.log(t)


def renormalized_gap(eta: float, sigma_over_mr: float) -> float:
    """t = M^2(sigma)/m_R^2 on the branch through t = 1 at sigma = 0."""
    s = SIXTEEN_PI2 * sigma_over_mr**2
    if s == 0.0:
        return 1.0
    t_star = math.exp(-eta)
    edge = math.exp(-eta) + eta - 1.0
    if s > edge * (1.0 + 1e-13):
        raise OutsideDomain(f"sigma^2/m_R^2={sigma_over_mr**2!r} beyond edge {edge / SIXTEEN_PI2!r}")
    lo, hi = min(1.0, t_star), max(1.0, t_star)
    f_star = gap_function(t_star, eta, s)
    if f_star <= 0.0:
        return t_star  # tangency, up to rounding
    return brentq(gap_function, lo, hi, args=(eta, s), xtol=1e-300, rtol=1e-15, maxiter=500)


def second_gap_root(eta: float, sigma_over_mr: float) -> Optional[float]:
    """The other root of the gap equation, on the far side of the tangency point."""
    s = SIXTEEN_PI2 * sigma_over_mr**2
    t_star = math.exp(-eta)
    if gap_function(t_star, eta, s) < 0:
        return None
    if t_star < 1.0:
        lo = t_star
        while gap_function(lo, eta, s) >= 0 and lo > 1e-300:
            lo *= 0.5
        if gap_function(lo, eta, s) >= 0:
            return None
        return brentq(gap_function, lo, t_star, args=(eta, s), xtol=1e-300, rtol=1e-15)
    hi = t_star
    while gap_function(hi, eta, s) >= 0:
        hi *= 2.0
    return brentq(gap_function, t_star, hi, args=(eta, s), xtol=1e-300, rtol=1e-15)


@dataclass(frozen=True)
class EffectivePotentialCurve:
    points: tuple[tuple[float, float, float], ...]  # (sigma, t, U - U_min)
    u_min: Optional[float]
    domain_edge: float


def effective_potential_shifted(eta: float, m_r: float, sigma: float) -> tuple[float, float]:
    """(t, U(sigma) - U_min) in the cutoff-free renormalized form."""
    t = renormalized_gap(eta, sigma / m_r)
    m2, m4 = m_r * m_r, m_r**4
    u = (0.25 * t * m2 * sigma * sigma - m4 / (8.0 * SIXTEEN_PI2) * (t - 1.0) ** 2
         - m4 / (4.0 * SIXTEEN_PI2) * (t - 1.0) * eta)
    return t, u


def u_min_bare(m_r: float, lambda_bare: float, cutoff: float) -> float:
    """Vacuum energy density I1(m_R) - 3 lam I0(m_R)^2 at finite cutoff."""
    s = stevenson_integrals(m_r, cutoff)
    return s.i1 - 3.0 * lambda_bare * s.i0**2


def effective_potential(eta: float, m_r: float, sigma_grid: Iterable[float],
                        cutoff: Optional[float] = None) -> EffectivePotentialCurve:
    """Renormalized effective potential over a sigma grid.

    U_min is cutoff dependent, so it is reported only when ``cutoff`` is given;
    the bare coupling is then taken from the precarious branch for
    lam_R = -4 pi^2 / eta.
    """
    if not m_r > 0:
        raise ValueError("m_r must be positive")
    pts = []
    for s in sigma_grid:
        t, u = effective_potential_shifted(eta, m_r, float(s))
        pts.append((float(s), t, u))
    u_min = None
    if cutoff is not None and eta != 0:
        bare = bare_from_renormalized(m_r, -FOUR_PI2 / eta, cutoff)
        u_min = u_min_bare(m_r, bare.lam, cutoff)
    return EffectivePotentialCurve(tuple(pts), u_min, math.sqrt(sigma_min_sq(eta, m_r)))


def perturbative_potential(m2_bare: float, lambda_bare: float, cutoff: float,
                           sigma_grid: Iterable[float]) -> list[tuple[float, float]]:
    """Rows (sigma, U^P) in the free-field vacuum, where the integrals use the bare mass."""
    if not m2_bare > 0:
        raise ValueError("the perturbative vacuum needs m^2 > 0")
    s = _ints(m2_bare, cutoff)
    rows = []
    for x in sigma_grid:
        x = float(x)
        u = (0.5 * m2_bare * x * x + lambda_bare * x**4 + s.i1
             + 6.0 * lambda_bare * x * x * s.i0 + 3.0 * lambda_bare * s.i0**2)
        rows.append((x, u))
    return rows


@dataclass(frozen=True)
class TrivialityReport:
    curve: tuple[tuple[float, float], ...]
    m2_bar_r: float
    lambda_bar_r: float
    unbounded_below: Optional[bool]  # lam < 0: U^P(sigma_big) < U^P(0); None otherwise
    sigma_big: Optional[float]
    cutoff_growth: tuple[tuple[float, float], ...]  # (cutoff, m2_bar_r) for lam fixed
    growth_exponent: float  # d ln(m2_bar_r - m^2) / d ln Lambda at the largest cutoff
    lambda_trajectory: tuple[tuple[float, float], ...]  # (cutoff, lam keeping m2_bar_r fixed)
    u_min_ngas: Optional[float]
    u_min_pert: float
    ngas_below_pert: Optional[bool]


def perturbative_ep(m2_bare: float, lambda_bare: float, cutoff: float,
                    sigma_grid: Sequence[float] = (), growth_factors=(1, 2, 4, 8, 16)) -> TrivialityReport:
    """Free-vacuum effective potential plus the checks behind the triviality argument."""
    curve = tuple(perturbative_potential(m2_bare, lambda_bare, cutoff, sigma_grid))
    i0 = _ints(m2_bare, cutoff).i0
    m2bar = m2_bare + 12.0 * lambda_bare * i0

    unbounded = sigma_big = None
    if lambda_bare < 0:
        # beyond this sigma the quartic term beats the quadratic ones by a factor 4
        quad = abs(0.5 * m2_bare + 6.0 * lambda_bare * i0)
        sigma_big = 2.0 * math.sqrt(4.0 * quad / abs(lambda_bare) + 1.0)
        u0, ubig = (u for _, u in perturbative_potential(m2_bare, lambda_bare, cutoff, (0.0, sigma_big)))
        unbounded = ubig < u0

    growth = tuple((cutoff * f, m2_bare + 12.0 * lambda_bare * _ints(m2_bare, cutoff * f).i0)
                   for f in growth_factors)
    (c1, g1), (c2, g2) = growth[-2], growth[-1]
    if lambda_bare != 0:
        exponent = math.log((g2 - m2_bare) / (g1 - m2_bare)) / math.log(c2 / c1)
    else:
        exponent = 0.0
    # coupling that holds m2_bar_r at its present value as the cutoff grows
    traj = tuple((c, (m2bar - m2_bare) / (12.0 * _ints(m2_bare, c).i0)) for c, _ in growth)

    u_pert = _ints(m2_bare, cutoff).i1 + 3.0 * lambda_bare * i0**2
    try:
        m2_r = bare_gap(m2_bare, lambda_bare, 0.0, cutoff)
        u_ngas = u_min_bare(math.sqrt(m2_r), lambda_bare, cutoff)
        below = u_ngas <= u_pert
    except NoPositiveSolution:
        u_ngas = below = None
    return TrivialityReport(curve, m2bar, lambda_bare, unbounded, sigma_big, growth, exponent,
                            traj, u_ngas, u_pert, below)


def condensate_density(m_bare: float, m_r: float, k_grid: Iterable[float]) -> list[tuple[float, float, float]]:
    """Rows (k, n(k), rho(k)); rho is the cutoff-removed shape n(k)/n(0)."""
    if not m_r > 0:
        raise ValueError("m_r must be positive")
    if not m_bare > 0:
        raise ValueError("m_bare must be positive")
    rows = []
    pref = 1.0 / (32.0 * math.pi**3)
    for k in k_grid:
        k = float(k)
        wm = math.hypot(k, m_bare)
        wr = math.hypot(k, m_r)
        # w1/w2 + w2/w1 - 2 = (w1 - w2)^2 / (w1 w2), without cancellation
        n = pref * (wm - wr) ** 2 / (wm * wr)
        rho = 1.0 / math.sqrt(1.0 + (k / m_r) ** 2)
        rows.append((k, n, rho))
    return rows
