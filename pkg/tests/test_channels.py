import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qillum.channels import (
    GaussianChannel,
    additive_noise,
    apply,
    apply_on_subsystem,
    attenuator,
    complementary_attenuator,
    compose,
    cp_margin,
    identity_channel,
    replacement_channel,
)
from qillum.entropic import entropy
from qillum.errors import DimensionError, InvalidArgumentError
from qillum.symplectic import (
    is_physical,
    make_coherent,
    make_thermal,
    make_tmsv,
    mean_photons,
    random_gaussian,
    tensor,
    vacuum,
)


def test_attenuator_on_coherent_state():
    out = apply(attenuator(1, 0.25, 2.0), make_coherent([2.0]))
    np.testing.assert_allclose(out.mean, [np.sqrt(2) * 1.0, 0.0])
    np.testing.assert_allclose(out.cov, (1 + 0.75 * 4) * np.eye(2))
    # eta |alpha|^2 + (1 - eta) N_B
    assert mean_photons(out) == pytest.approx(0.25 * 4 + 0.75 * 2)


def test_vacuum_maps_to_reference_thermal_state():
    eta, nb = 0.1, 3.0
    out = apply(attenuator(2, eta, nb), vacuum(2))
    np.testing.assert_allclose(out.cov, make_thermal(2, (1 - eta) * nb).cov, rtol=1e-14)


def test_identity_and_replacement_limits():
    s = make_tmsv(0.4)
    out = apply(identity_channel(2), s)
    np.testing.assert_array_equal(out.cov, s.cov)
    np.testing.assert_allclose(apply(attenuator(2, 1.0, 5.0), s).cov, s.cov)
    np.testing.assert_allclose(apply(replacement_channel(2, 0.7), s).cov, make_thermal(2, 0.7).cov)


@pytest.mark.parametrize("eta, nb", [(0.0, 1.0), (1.5, 1.0), (0.5, -0.1), (0.5, np.inf)])
def test_attenuator_rejects_bad_parameters(eta, nb):
    with pytest.raises(InvalidArgumentError):
        attenuator(1, eta, nb)


def test_non_cp_channel_rejected():
    # amplification by 2 with no added noise violates the uncertainty principle
    with pytest.raises(InvalidArgumentError):
        GaussianChannel(2 * np.eye(2), np.zeros((2, 2)))


def test_channel_dimension_checks():
    with pytest.raises(DimensionError):
        GaussianChannel(np.eye(3), np.eye(3))
    with pytest.raises(DimensionError):
        apply(attenuator(2, 0.5, 1.0), vacuum(1))
    with pytest.raises(DimensionError):
        apply_on_subsystem(complementary_attenuator(1, 0.5, 1.0), vacuum(2), [0])


@pytest.mark.parametrize("eta", [0.05, 0.5, 0.95])
@pytest.mark.parametrize("nb", [0.0, 0.2, 4.0])
def test_standard_channels_are_cp(eta, nb):
    for c in (attenuator(2, eta, nb), complementary_attenuator(2, eta, nb), additive_noise(2, nb)):
        assert cp_margin(c) >= -1e-9


@settings(max_examples=50, deadline=None)
@given(
    eta1=st.floats(0.01, 1.0),
    eta2=st.floats(0.01, 1.0),
    nb=st.floats(0.0, 50.0),
)
def test_attenuators_with_equal_noise_compose(eta1, eta2, nb):
    lhs = compose(attenuator(1, eta1, nb), attenuator(1, eta2, nb))
    rhs = attenuator(1, eta1 * eta2, nb)
    np.testing.assert_allclose(lhs.X, rhs.X, rtol=1e-12)
    np.testing.assert_allclose(lhs.Y, rhs.Y, rtol=1e-12, atol=1e-12)


def test_apply_on_subsystem_touches_only_targets():
    s = tensor(make_coherent([0.5]), make_tmsv(0.3))
    out = apply_on_subsystem(attenuator(1, 0.2, 1.0), s, [2])
    np.testing.assert_allclose(out.cov[:4, :4], s.cov[:4, :4])
    np.testing.assert_allclose(out.mean[:2], s.mean[:2])
    assert out.cov[4, 4] == pytest.approx(0.2 * 1.6 + 0.8 * 3.0)
    np.testing.assert_allclose(out.cov[2:4, 4:6], np.sqrt(0.2) * s.cov[2:4, 4:6])


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    eta=st.floats(0.02, 0.98),
    nb=st.floats(0.0, 5.0),
    energy=st.floats(0.01, 3.0),
)
def test_complementary_output_entropy_matches_for_pure_inputs(seed, eta, nb, energy):
    # a pure input and a pure environment leave B and E E' in a pure joint state
    s = random_gaussian(np.random.default_rng(seed), 1, energy)
    out = apply(attenuator(1, eta, nb), s)
    env = apply(complementary_attenuator(1, eta, nb), s)
    assert is_physical(out) and is_physical(env)
    assert entropy(out) == pytest.approx(entropy(env), abs=1e-8)


def test_complementary_environment_energy_balance():
    eta, nb, e = 0.3, 0.8, 1.7
    s = make_coherent([np.sqrt(e)])
    b = apply(attenuator(1, eta, nb), s)
    env = apply(complementary_attenuator(1, eta, nb), s)
    # the beam splitter conserves photons; the partner keeps its own nb
    assert mean_photons(b) + mean_photons(env) == pytest.approx(e + nb + nb, rel=1e-13)
