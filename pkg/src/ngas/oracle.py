"""Rayleigh-Ritz eigenvalues in a truncated harmonic-oscillator basis.

This is the reference every accuracy claim is measured against, so it shares
nothing with the gap-equation code beyond picking a well-conditioned basis
frequency.  In the frequency-Omega basis

    H = Omega (a^dagger a + 1/2) + (s g - Omega^2) x^2 / 2 + lam x^(2k),

with ``x = (a + a^dagger)/sqrt(2 Omega)``.  Powers of x are built in a basis
padded by 2k states and then truncated, which gives the exact projection of H
onto the first N states and therefore guarantees Cauchy interlacing as N grows.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, eig_banded

from .gap import solve_gap
from .model import NGASError, OscillatorSpec

MIN_BASIS = 8
START_BASIS = 64
MAX_BASIS = 4096


class EigensolverFailure(NGASError):
    pass


class NotConverged(NGASError):
    pass


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: tuple[float, ...]
    basis_size: int
    basis_frequency: float
    converged: bool = False
    tail_estimate: Optional[float] = None

    def level(self, n: int) -> float:
        return self.eigenvalues[n]


def _position_operator(size: int, omega: float) -> sp.csr_matrix:
    off = np.sqrt(np.arange(1, size) / (2.0 * omega))
    return sp.diags([off, off], [-1, 1], format="csr")


def hamiltonian_matrix(spec: OscillatorSpec, basis_size: int, basis_frequency: float) -> np.ndarray:
    """Dense projected Hamiltonian, mainly for tests and small bases."""
    return _projected(spec, basis_size, basis_frequency).toarray()


def _projected(spec: OscillatorSpec, n: int, omega: float) -> sp.csr_matrix:
    k = spec.power
    x = _position_operator(n + k, omega)
    x2 = x @ x
    xk = x2
    for _ in range(k // 2 - 1):
        xk = xk @ x2
    diag = sp.diags(omega * (np.arange(n + k) + 0.5))
    h = diag + 0.5 * (spec.sign * spec.g - omega**2) * x2 + spec.lam * xk
    return h.tocsr()[:n, :n]


def _parity_band(h: sp.csr_matrix, parity: int, half_band: int) -> np.ndarray:
    # Within one parity sector, x^(2k) couples states at most k indices apart.
    dense = h[parity::2, parity::2].toarray()
    m = dense.shape[0]
    band = np.zeros((half_band + 1, m))
    for d in range(min(half_band, m - 1) + 1):
        band[d, : m - d] = np.diagonal(dense, -d)
    return band


def _banded_eigvalsh(band: np.ndarray) -> np.ndarray:
    try:
        vals = eig_banded(band, lower=True, eigvals_only=True, check_finite=True)
    except (LinAlgError, ValueError) as exc:
        raise EigensolverFailure(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise EigensolverFailure("non-finite eigenvalues")
    return vals


def symmetric_banded_eigenvalues(matrix: np.ndarray, half_band: int) -> np.ndarray:
    """Eigenvalues of a symmetric banded matrix via LAPACK's banded solver."""
    m = matrix.shape[0]
    band = np.zeros((half_band + 1, m))
    for d in range(min(half_band, m - 1) + 1):
        band[d, : m - d] = np.diagonal(matrix, -d)
    return _banded_eigvalsh(band)


def diagonalize(spec: OscillatorSpec, basis_size: int, basis_frequency: float) -> OracleResult:
    if int(basis_size) != basis_size or basis_size < MIN_BASIS:
        raise ValueError(f"basis_size must be an integer >= {MIN_BASIS}")
    if not basis_frequency > 0:
        raise ValueError("basis_frequency must be positive")
    h = _projected(spec, int(basis_size), float(basis_frequency))
    half = spec.power // 2
    vals = np.concatenate([_banded_eigvalsh(_parity_band(h, p, half)) for p in (0, 1)])
    vals.sort()
    return OracleResult(tuple(float(v) for v in vals), int(basis_size), float(basis_frequency))


def default_frequency(spec: OscillatorSpec) -> float:
    return solve_gap(spec, 0).omega


def converged_levels(spec: OscillatorSpec, levels_wanted: Sequence[int] | int = 1,
                     tol: float = 1e-9, basis_frequency: Optional[float] = None,
                     max_basis: int = MAX_BASIS) -> OracleResult:
    """Double the basis from 64 until every wanted level moves by less than tol.

    The threshold is ``tol * max(1, |E|)`` so that strong-coupling levels of
    size 10^3 are not held to an absolute 1e-9 they cannot reach in double
    precision.  ``levels_wanted`` is a count or an explicit list of indices.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    wanted = list(range(levels_wanted)) if isinstance(levels_wanted, int) else list(levels_wanted)
    if not wanted or min(wanted) < 0:
        raise ValueError("levels_wanted must name at least one non-negative level")
    omega = default_frequency(spec) if basis_frequency is None else basis_frequency
    n = max(START_BASIS, MIN_BASIS)
    while n <= 2 * max(wanted) + 16:
        n *= 2
    prev = diagonalize(spec, n, omega)
    while True:
        n *= 2
        if n > max_basis:
            raise NotConverged(f"levels {wanted} not converged to {tol} within N={max_basis}")
        cur = diagonalize(spec, n, omega)
        change = max(abs(cur.eigenvalues[i] - prev.eigenvalues[i]) / max(1.0, abs(cur.eigenvalues[i]))
                     for i in wanted)
        if change < tol:
            return OracleResult(cur.eigenvalues, cur.basis_size, omega, True, change)
        prev = cur
