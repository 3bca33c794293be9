import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_density_matrix
from ottoforge import controls as ct
from ottoforge import dissipators as ds
from ottoforge import linalg as la

BATH = ds.BathParams(alpha=0.01, beta=0.1, omega_cutoff=1e4)


def test_params_validation():
    with pytest.raises(ValueError):
        ds.BathParams(alpha=0.01, beta=-1.0, omega_cutoff=1.0)
    with pytest.raises(ValueError):
        ds.NoiseSpec(lambda_z=-0.1)
    shared = ds.NoiseSpec.shared(0.3, ql_strength=2.0)
    assert shared.lambda_z == shared.lambda_y == 0.3
    assert shared.lambda_x == 0.0 and shared.ql_strength == 2.0


def test_spectral_density_values():
    assert ds.spectral_density(0.0, BATH) == 0.0
    wc = BATH.omega_cutoff
    assert abs(ds.spectral_density(wc, BATH) - BATH.alpha * wc * math.exp(-1)) < 1e-12
    # alpha = 0.01, omega = 100, omega_C = 1e4 -> 1.0 * exp(-0.01)
    assert abs(ds.spectral_density(100.0, BATH) - math.exp(-0.01)) < 1e-12
    with pytest.raises(ValueError):
        ds.spectral_density(-1.0, BATH)


def test_occupation_values():
    assert abs(ds.occupation(math.log(2.0), 1.0) - 1.0) < 1e-12
    assert ds.occupation(100.0, 1.0) < 1e-40
    # Omega = 100, T = 10 (cold bath at the cold splitting).
    assert abs(ds.occupation(100.0, 0.1) - 1.0 / (math.e**10 - 1.0)) < 1e-15
    with pytest.raises(ValueError):
        ds.occupation(1.0, -2.0)


@given(st.floats(0.05, 2.0), st.floats(0.1, 200.0))
def test_occupation_decreasing(beta, omega):
    # Strict monotonicity holds until the exponential underflows.
    assert ds.occupation(omega, beta) > ds.occupation(omega * 1.5, beta)


def test_bath_rates_angle_limits():
    _, _, gamma_zero = ds.bath_rates(5.0, 0.0, BATH)
    assert gamma_zero == 0.0
    gamma_plus, gamma_minus, _ = ds.bath_rates(5.0, np.pi / 2, BATH)
    assert abs(gamma_plus) < 1e-12 and abs(gamma_minus) < 1e-12


@given(st.floats(0.2, 200.0), st.floats(0.05, 2.5), st.floats(0.01, 2.0))
def test_bath_rates_detailed_balance(omega, theta, beta):
    bath = ds.BathParams(alpha=0.01, beta=beta, omega_cutoff=1e4)
    gamma_plus, gamma_minus, _ = ds.bath_rates(omega, theta, bath)
    assert gamma_minus > 0
    assert abs(gamma_plus / gamma_minus - math.exp(-beta * omega)) < 1e-10


def test_bath_dissipator_gibbs_fixed_point():
    omega_z = 3.0
    ham = ct.hamiltonian(1.0, omega_z)
    gen = ds.bath_dissipator(omega_z, 1.0, BATH) + la.commutator_superop(ham)
    gibbs = la.gibbs_state(ham, BATH.beta)
    # Stationarity of the Gibbs state.
    assert np.max(np.abs(gen @ la.vectorize(gibbs))) < 1e-10
    # Unique attractor: long-time propagation from the maximally mixed state.
    theta, omega = ct.mixing_angle(1.0, omega_z)
    rates = ds.bath_rates(omega, theta, BATH)
    horizon = 60.0 / (rates[0] + rates[1])
    final = la.devectorize(la.expm(gen * horizon) @ la.vectorize(np.eye(2) / 2))
    assert la.trace_distance(final, gibbs) < 1e-8


def test_bath_dissipator_zero_coupling():
    bath = ds.BathParams(alpha=0.0, beta=1.0, omega_cutoff=10.0)
    assert np.max(np.abs(ds.bath_dissipator(2.0, 1.0, bath))) == 0.0


def test_noise_dissipator_population_invariance():
    gen = ds.control_noise_dissipator({"z": 3.0}, ds.NoiseSpec(lambda_z=0.2))
    rho = np.diag([0.3, 0.7]).astype(complex)
    assert np.max(np.abs(gen @ la.vectorize(rho))) < 1e-14


def test_noise_dissipator_coherence_decay_rate():
    lam, omega_z = 0.2, 3.0
    gen = ds.control_noise_dissipator({"z": omega_z}, ds.NoiseSpec(lambda_z=lam))
    rho = np.array([[0.5, 0.2 - 0.3j], [0.2 + 0.3j, 0.5]])
    action = la.devectorize(gen @ la.vectorize(rho))
    assert abs(action[0, 1] - (-lam * omega_z**2 * rho[0, 1])) < 1e-12


def test_noise_dissipator_zero_strength_and_scaling():
    assert np.max(np.abs(ds.control_noise_dissipator({"z": 2.0}, ds.NoiseSpec()))) == 0.0
    noise = ds.NoiseSpec.shared(0.05)
    one = ds.control_noise_dissipator({"z": 2.0}, noise)
    four = ds.control_noise_dissipator({"z": 4.0}, noise)
    assert np.max(np.abs(four - 4.0 * one)) < 1e-12


def test_noise_dissipator_purity_contraction():
    rng = np.random.default_rng(8)
    noise = ds.NoiseSpec(lambda_z=0.1, lambda_y=0.2, lambda_x=0.05)
    gen = ds.control_noise_dissipator({"z": 2.0, "y": 1.0, "x": 1.0}, noise)
    for _ in range(25):
        rho = random_density_matrix(rng)
        drho = la.devectorize(gen @ la.vectorize(rho))
        ddt_purity = 2.0 * np.real(np.trace(rho @ drho))
        assert ddt_purity <= 1e-12


def test_ql_dissipator_pure_dephasing():
    theta, _ = ct.mixing_angle(1.0, 2.0)
    lam_ql = 1.3
    gen = ds.ql_dissipator(theta, lam_ql)
    r = ct.rotation_matrix(theta)
    # Diagonal in the energy eigenbasis: no action.
    rho_diag = r @ np.diag([0.2, 0.8]).astype(complex) @ r.conj().T
    assert np.max(np.abs(gen @ la.vectorize(rho_diag))) < 1e-12
    # Off-diagonal entry decays at 4 lambda_QL.
    coh = np.array([[0.5, 0.1 + 0.2j], [0.1 - 0.2j, 0.5]])
    rho = r @ coh @ r.conj().T
    action_rot = r.conj().T @ la.devectorize(gen @ la.vectorize(rho)) @ r
    assert abs(action_rot[0, 1] - (-4.0 * lam_ql * coh[0, 1])) < 1e-12
    assert abs(action_rot[0, 0]) < 1e-12


def test_ql_dissipator_zero_and_validation():
    assert np.max(np.abs(ds.ql_dissipator(0.3, 0.0))) == 0.0
    with pytest.raises(ValueError):
        ds.ql_dissipator(0.3, -1.0)


def test_ql_commutes_with_static_hamiltonian_flow():
    omega_z = 2.0
    theta, _ = ct.mixing_angle(1.0, omega_z)
    ql = ds.ql_dissipator(theta, 0.7)
    comm = la.commutator_superop(ct.hamiltonian(1.0, omega_z))
    assert np.max(np.abs(ql @ comm - comm @ ql)) < 1e-10


@given(st.floats(0.0, 1.0), st.floats(0.0, 5.0), st.floats(0.0, 3.0))
def test_generators_annihilate_trace(lam, omega_z, lam_ql):
    id_vec = la.vectorize(np.eye(2)).conj()
    gen = ds.control_noise_dissipator({"z": omega_z}, ds.NoiseSpec(lambda_z=lam))
    assert np.max(np.abs(id_vec @ gen)) < 1e-10
    theta, _ = ct.mixing_angle(1.0, omega_z)
    assert np.max(np.abs(id_vec @ ds.ql_dissipator(theta, lam_ql))) < 1e-10
    if omega_z > 0:
        assert np.max(np.abs(id_vec @ ds.bath_dissipator(omega_z, 1.0, BATH))) < 1e-10
