import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qillum.errors import DimensionError, InvalidArgumentError, PhysicalityError
from qillum.symplectic import (
    GaussianState,
    is_physical,
    make_coherent,
    make_thermal,
    make_tmsv,
    mean_photons,
    min_uncertainty_eigenvalue,
    mode_photons,
    omega,
    partial_trace,
    random_gaussian,
    random_passive,
    random_pure_probe,
    symplectic_eigenvalues,
    tensor,
    vacuum,
)


def test_omega_is_antisymmetric_and_squares_to_minus_one():
    w = omega(3)
    np.testing.assert_array_equal(w, -w.T)
    np.testing.assert_array_equal(w @ w, -np.eye(6))
    np.testing.assert_array_equal(w[:2, :2], [[0, 1], [-1, 0]])


def test_vacuum():
    s = vacuum(2)
    np.testing.assert_array_equal(s.cov, np.eye(4))
    assert s.n_modes == 2
    assert mean_photons(s) == 0.0
    np.testing.assert_allclose(symplectic_eigenvalues(s).values, [1.0, 1.0], atol=1e-14)


@pytest.mark.parametrize("n_mean", [0.0, 0.3, 1.0, 25.0])
def test_thermal_spectrum_and_photons(n_mean):
    s = make_thermal(2, n_mean)
    np.testing.assert_allclose(symplectic_eigenvalues(s).values, [2 * n_mean + 1] * 2, rtol=1e-13)
    assert mean_photons(s) == pytest.approx(2 * n_mean, abs=1e-13)


def test_coherent_mean_convention():
    s = make_coherent([1 + 2j, -0.5])
    np.testing.assert_allclose(s.mean, math.sqrt(2) * np.array([1, 2, -0.5, 0]))
    np.testing.assert_array_equal(s.cov, np.eye(4))
    np.testing.assert_allclose(mode_photons(s), [5.0, 0.25])


@pytest.mark.parametrize("energy", [0.0, 0.01, 0.3, 2.0, 600.0])
def test_tmsv_is_pure_with_equal_marginals(energy):
    s = make_tmsv(energy)
    assert is_physical(s)
    np.testing.assert_allclose(symplectic_eigenvalues(s).values, [1.0, 1.0], atol=1e-9)
    np.testing.assert_allclose(mode_photons(s), [energy, energy], rtol=1e-13, atol=1e-15)
    for k in (0, 1):
        np.testing.assert_allclose(partial_trace(s, [k]).cov, (2 * energy + 1) * np.eye(2), rtol=1e-13)


def test_tensor_and_partial_trace_roundtrip():
    a, b = make_coherent([0.3j]), make_tmsv(0.7)
    s = tensor(a, b)
    assert s.n_modes == 3
    np.testing.assert_allclose(partial_trace(s, [1, 2]).cov, b.cov)
    np.testing.assert_allclose(partial_trace(s, [0]).mean, a.mean)
    swapped = partial_trace(s, [2, 1])
    np.testing.assert_allclose(swapped.cov, b.cov)  # the tmsv is symmetric under swap


def test_state_is_immutable():
    s = make_thermal(1, 0.5)
    with pytest.raises(ValueError):
        s.cov[0, 0] = 3.0


@pytest.mark.parametrize(
    "mean, cov, exc",
    [
        (np.zeros(3), np.eye(3), DimensionError),
        (np.zeros(4), np.eye(2), DimensionError),
        (np.zeros(2), [[1.0, 0.5], [0.0, 1.0]], InvalidArgumentError),
        (np.zeros(2), [[np.nan, 0.0], [0.0, 1.0]], InvalidArgumentError),
    ],
)
def test_malformed_states_rejected(mean, cov, exc):
    with pytest.raises(exc):
        GaussianState(mean, cov)


def test_unphysical_state_is_flagged():
    s = GaussianState(np.zeros(2), np.diag([0.5, 0.5]))
    assert not is_physical(s)
    assert min_uncertainty_eigenvalue(s) == pytest.approx(-0.5)
    with pytest.raises(PhysicalityError):
        symplectic_eigenvalues(s)


@pytest.mark.parametrize("modes", [[], [0, 0], [3]])
def test_bad_mode_selection(modes):
    with pytest.raises(InvalidArgumentError):
        partial_trace(vacuum(2), modes)


def test_random_passive_is_orthogonal_and_symplectic():
    rng = np.random.default_rng(3)
    for n in (1, 2, 4):
        o = random_passive(n, rng)
        np.testing.assert_allclose(o @ o.T, np.eye(2 * n), atol=1e-12)
        np.testing.assert_allclose(o @ omega(n) @ o.T, omega(n), atol=1e-12)


def test_symplectic_eigenvalues_are_congruence_invariant():
    # Williamson form diag(2, 2, 5, 5) dressed by squeezing and mixing
    rng = np.random.default_rng(11)
    base = np.diag([2.0, 2.0, 5.0, 5.0])
    sq = np.diag([np.exp(0.7), np.exp(-0.7), np.exp(-0.2), np.exp(0.2)])
    s = random_passive(2, rng) @ sq @ random_passive(2, rng)
    state = GaussianState(np.zeros(4), s @ base @ s.T)
    np.testing.assert_allclose(symplectic_eigenvalues(state).values, [5.0, 2.0], rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    n=st.integers(1, 4),
    energy=st.floats(1e-4, 20.0),
    mixed=st.booleans(),
)
def test_random_gaussian_hits_energy_and_is_physical(seed, n, energy, mixed):
    rng = np.random.default_rng(seed)
    signal = list(range(max(1, n - 1)))
    s = random_gaussian(rng, n, energy, signal, mixed=mixed)
    assert is_physical(s)
    assert mean_photons(partial_trace(s, signal)) == pytest.approx(energy, rel=1e-10)
    nu = symplectic_eigenvalues(s).values
    assert np.all(nu >= 1.0)
    if not mixed:
        np.testing.assert_allclose(nu, 1.0, atol=1e-6)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), energy=st.floats(0.0, 5.0))
def test_random_pure_probe_reproducible(seed, energy):
    a = random_pure_probe(2, energy, seed)
    b = random_pure_probe(2, energy, seed)
    np.testing.assert_array_equal(a.cov, b.cov)
    assert a.n_modes == 4
    assert mean_photons(partial_trace(a, [0, 1])) == pytest.approx(2 * energy, rel=1e-10, abs=1e-14)


def test_zero_energy_random_state_is_vacuum():
    s = random_gaussian(np.random.default_rng(0), 3, 0.0, [0])
    np.testing.assert_array_equal(s.cov, np.eye(6))
    np.testing.assert_array_equal(s.mean, np.zeros(6))
