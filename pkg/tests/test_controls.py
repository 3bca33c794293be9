import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from ottoforge import controls as ct

endpoints = st.floats(-50.0, 50.0, allow_nan=False)
durations = st.floats(0.01, 100.0, allow_nan=False)


def spec(a=1.0, b=5.0, tau=2.0):
    return ct.RampSpec(a, b, tau)


def test_ramp_endpoints_and_midpoint():
    s = spec(1.0, 5.0, 2.0)
    assert ct.ramp_value(s, 0.0) == 1.0
    assert ct.ramp_value(s, 2.0) == 5.0
    assert abs(ct.ramp_value(s, 1.0) - 3.0) < 1e-14


def test_ramp_rejects_out_of_range_time():
    with pytest.raises(ValueError):
        ct.ramp_value(spec(), -0.1)
    with pytest.raises(ValueError):
        ct.ramp_rate(spec(), 2.5)


def test_ramp_rate_endpoints_vanish():
    s = spec()
    assert ct.ramp_rate(s, 0.0) == 0.0
    assert ct.ramp_rate(s, s.duration) == 0.0


def test_ramp_rate_matches_finite_differences():
    # Independent oracle: central differences of ramp_value.
    s = spec(0.3, 4.7, 1.7)
    eps = 1e-6
    for t in (0.2, 0.5 * s.duration, 1.3):
        numeric = (ct.ramp_value(s, t + eps) - ct.ramp_value(s, t - eps)) / (2 * eps)
        assert abs(ct.ramp_rate(s, t) - numeric) < 1e-7


def test_ramp_rate_midpoint_value():
    s = spec(1.0, 5.0, 2.0)
    assert abs(ct.ramp_rate(s, 1.0) - 1.5 * (5.0 - 1.0) / 2.0) < 1e-14


@given(endpoints, endpoints, durations)
def test_ramp_monotone_between_endpoints(a, b, tau):
    s = ct.RampSpec(a, b, tau)
    values = ct.ramp_value(s, np.linspace(0.0, tau, 33))
    diffs = np.diff(values)
    if b >= a:
        assert np.all(diffs >= -1e-12 * max(1.0, abs(b - a)))
    else:
        assert np.all(diffs <= 1e-12 * max(1.0, abs(b - a)))


def test_mixing_angle_reference_points():
    theta, omega = ct.mixing_angle(1.0, 0.0)
    assert abs(theta - np.pi / 2) < 1e-14 and abs(omega - 1.0) < 1e-14
    theta, omega = ct.mixing_angle(1.0, 1.0)
    assert abs(theta - np.pi / 4) < 1e-14 and abs(omega - np.sqrt(2.0)) < 1e-14
    # Splitting Omega = 100 (in omega_x units) at the figure-caption cold point.
    theta, omega = ct.mixing_angle(1.0, np.sqrt(100.0**2 - 1.0))
    assert abs(omega - 100.0) < 1e-12


def test_mixing_angle_branch():
    theta_large, _ = ct.mixing_angle(1.0, 1e6)
    theta_neg, _ = ct.mixing_angle(1.0, -3.0)
    assert 0 < theta_large < 1e-5
    assert np.pi / 2 < theta_neg < np.pi
    with pytest.raises(ValueError):
        ct.mixing_angle(0.0, 1.0)


def test_sta_field_zero_at_endpoints_and_sign():
    s = spec(1.0, 5.0, 2.0)
    assert ct.sta_field(1.0, s, 0.0) == 0.0
    assert ct.sta_field(1.0, s, 2.0) == 0.0
    interior = [ct.sta_field(1.0, s, t) for t in np.linspace(0.1, 1.9, 9)]
    assert all(v < 0 for v in interior)  # compression: omega_z increasing


def test_sta_field_time_reversal_antisymmetry():
    up = spec(1.0, 5.0, 2.0)
    down = ct.RampSpec(5.0, 1.0, 2.0)
    for t in np.linspace(0.0, 2.0, 11):
        assert abs(ct.sta_field(1.0, down, t) + ct.sta_field(1.0, up, 2.0 - t)) < 1e-12


@given(st.floats(-20.0, 20.0), st.floats(-20.0, 20.0), st.floats(0.05, 10.0))
def test_sta_field_integrates_to_angle_change(a, b, tau):
    # Omega_y = d(theta)/dt, so its integral is the net mixing-angle change.
    s = ct.RampSpec(a, b, tau)
    integral, _ = quad(lambda t: ct.sta_field(1.0, s, t), 0.0, tau, limit=200)
    theta0, _ = ct.mixing_angle(1.0, a)
    theta1, _ = ct.mixing_angle(1.0, b)
    assert abs(integral - (theta1 - theta0)) < 1e-8


def test_hamiltonian_eigenstructure():
    ham = ct.hamiltonian(1.0, 3.0)
    evals = np.linalg.eigvalsh(ham)
    omega = np.hypot(1.0, 3.0)
    assert abs(evals[0]) < 1e-14 and abs(evals[1] - omega) < 1e-14
    theta, _ = ct.mixing_angle(1.0, 3.0)
    r = ct.rotation_matrix(theta)
    rotated = r.conj().T @ ham @ r
    assert np.max(np.abs(rotated - np.diag([omega, 0.0]))) < 1e-14


def test_eigenstates_are_hamiltonian_eigenvectors():
    theta, omega = ct.mixing_angle(1.0, -2.0)
    ham = ct.hamiltonian(1.0, -2.0)
    ket_e, ket_g = ct.eigenstates(theta)
    assert np.max(np.abs(ham @ ket_e - omega * ket_e)) < 1e-14
    assert np.max(np.abs(ham @ ket_g)) < 1e-14


def test_control_field_validation():
    with pytest.raises(ValueError):
        ct.ControlField(1.0)
    with pytest.raises(ValueError):
        ct.ControlField(1.0, ramp=spec(), omega_z_const=1.0)
    with pytest.raises(ValueError):
        ct.ControlField(1.0, omega_z_const=1.0, sta=True)
    field = ct.ControlField(1.0, ramp=spec(1.0, 5.0, 2.0), sta=True)
    assert field.omega_z(1.0) == 3.0
    assert field.omega_y(1.0) != 0.0
    static = ct.ControlField(1.0, omega_z_const=2.0)
    assert static.omega_z(0.7) == 2.0 and static.omega_y(0.7) == 0.0
