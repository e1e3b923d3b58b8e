import math

import numpy as np
import pytest

from ngas import OscillatorClass, OscillatorSpec
from ngas.oracle import (
    NotConverged,
    converged_levels,
    diagonalize,
    hamiltonian_matrix,
    symmetric_banded_eigenvalues,
)


def test_three_state_matrix_by_hand():
    lam = 0.3
    h = hamiltonian_matrix(OscillatorSpec("quartic-aho", 1, lam), 3, 1.0)
    expected = np.array([
        [0.5 + 0.75 * lam, 0.0, 1.5 * math.sqrt(2) * lam],
        [0.0, 1.5 + 3.75 * lam, 0.0],
        [1.5 * math.sqrt(2) * lam, 0.0, 2.5 + 9.75 * lam],
    ])
    assert np.allclose(h, expected, atol=1e-14)


def test_two_state_eigenvalues():
    h = hamiltonian_matrix(OscillatorSpec("quartic-aho", 1, 1), 2, 1.0)
    assert np.allclose(np.linalg.eigvalsh(h), [1.25, 5.25])


@pytest.mark.parametrize("g", [1.0, 4.0])
def test_free_oscillator_exact(g):
    res = diagonalize(OscillatorSpec("quartic-aho", g, 0), 40, math.sqrt(g))
    assert np.allclose(res.eigenvalues[:10], math.sqrt(g) * (np.arange(10) + 0.5), atol=1e-13)


def test_banded_solver_matches_dense():
    rng = np.random.default_rng(7)
    m, k = 30, 3
    a = rng.normal(size=(m, m))
    a = a + a.T
    a[np.abs(np.subtract.outer(np.arange(m), np.arange(m))) > k] = 0.0
    assert np.allclose(symmetric_banded_eigenvalues(a, k), np.linalg.eigvalsh(a), atol=1e-12)


@pytest.mark.parametrize("cls", list(OscillatorClass))
def test_parity_split_matches_dense(cls):
    spec = OscillatorSpec(cls, 1.0, 0.7)
    res = diagonalize(spec, 48, 1.8)
    dense = np.linalg.eigvalsh(hamiltonian_matrix(spec, 48, 1.8))
    # backward-stable solvers: absolute error scales with the matrix norm
    assert np.allclose(res.eigenvalues, dense, rtol=1e-11, atol=1e-13 * np.abs(dense).max())


@pytest.mark.parametrize("cls", list(OscillatorClass))
def test_ritz_values_decrease_with_basis(cls):
    spec = OscillatorSpec(cls, 1.0, 0.5)
    small = diagonalize(spec, 20, 1.5).eigenvalues
    big = diagonalize(spec, 40, 1.5).eigenvalues
    assert all(b <= s + 1e-12 * max(1, abs(s)) for s, b in zip(small, big))


@pytest.mark.parametrize("cls", list(OscillatorClass))
def test_basis_frequency_independence(cls):
    spec = OscillatorSpec(cls, 1.0, 1.0)
    a = converged_levels(spec, 6, 1e-11)
    b = converged_levels(spec, 6, 1e-11, basis_frequency=1.5 * a.basis_frequency)
    assert a.converged and b.converged
    assert np.allclose(a.eigenvalues[:6], b.eigenvalues[:6], rtol=1e-9)


def test_quartic_unit_ground_state():
    assert converged_levels(OscillatorSpec("quartic-aho", 1, 1)).level(0) == pytest.approx(0.803770651, abs=1e-9)


def test_double_well_close_to_modified_series_value():
    e = converged_levels(OscillatorSpec("quartic-dwo", 1, 0.1)).level(0) + 0.625
    assert e == pytest.approx(0.4702, rel=2e-3)


def test_not_converged():
    with pytest.raises(NotConverged):
        converged_levels(OscillatorSpec("octic-aho", 1, 1), [40], 1e-12, max_basis=128)


@pytest.mark.parametrize("kwargs", [{"basis_size": 7, "basis_frequency": 1.0},
                                    {"basis_size": 10.5, "basis_frequency": 1.0},
                                    {"basis_size": 16, "basis_frequency": 0.0}])
def test_bad_basis(kwargs):
    with pytest.raises(ValueError):
        diagonalize(OscillatorSpec("quartic-aho", 1, 1), **kwargs)


def test_bad_level_request():
    with pytest.raises(ValueError):
        converged_levels(OscillatorSpec("quartic-aho", 1, 1), [])
    with pytest.raises(ValueError):
        converged_levels(OscillatorSpec("quartic-aho", 1, 1), 1, tol=0)
