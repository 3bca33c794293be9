"""Time-dependent control protocols for the driven qubit.

The working substance Hamiltonian is H(t) = (Omega(t) 1 + Omega_x sigma_x
+ Omega_z(t) sigma_z) / 2 with Omega = sqrt(Omega_x^2 + Omega_z^2), so its
eigenvalues are Omega(t) and 0.  The energy eigenbasis is reached by the
rotation R(theta) = exp(-i theta sigma_y / 2) with theta = arctan(Omega_x
/ Omega_z); the counterdiabatic field is Omega_y = d(theta)/dt.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z

__all__ = [
    "RampSpec",
    "ControlField",
    "ramp_value",
    "ramp_rate",
    "mixing_angle",
    "sta_field",
    "hamiltonian",
    "rotation_matrix",
    "eigenstates",
]


@dataclass(frozen=True)
class RampSpec:
    """Cubic control ramp Omega_z(t) = (3s^2 - 2s^3)(end - start) + start."""

    omega_z_start: float
    omega_z_end: float
    duration: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"ramp duration must be positive, got {self.duration}")


def _check_time(spec, t):
    t = np.asarray(t, dtype=float)
    slack = 1e-12 * max(1.0, spec.duration)
    if np.any(t < -slack) or np.any(t > spec.duration + slack):
        raise ValueError(f"time {t} outside ramp interval [0, {spec.duration}]")
    return np.clip(t, 0.0, spec.duration)


def ramp_value(spec, t):
    """Omega_z at time t along the ramp; endpoints exact, zero end slopes."""
    s = _check_time(spec, t) / spec.duration
    shape = (3.0 - 2.0 * s) * s * s
    return spec.omega_z_start + shape * (spec.omega_z_end - spec.omega_z_start)


def ramp_rate(spec, t):
    """d(Omega_z)/dt along the ramp: 6 s (1 - s) (end - start) / duration."""
    s = _check_time(spec, t) / spec.duration
    return 6.0 * s * (1.0 - s) * (spec.omega_z_end - spec.omega_z_start) / spec.duration


def mixing_angle(omega_x, omega_z):
    """Eigenbasis angle theta in (0, pi) and splitting Omega for given controls.

    The branch is fixed so theta -> 0 as Omega_z -> +inf and theta = pi/2 at
    Omega_z = 0, keeping the eigenbasis rotation continuous along any ramp.
    """
    if not np.all(np.asarray(omega_x) > 0):
        raise ValueError("omega_x must be positive")
    theta = np.arctan2(omega_x, omega_z)
    omega = np.hypot(omega_x, omega_z)
    return theta, omega


def sta_field(omega_x, spec, t):
    """Counterdiabatic amplitude Omega_y(t) = -Omega_x dOmega_z/dt / Omega^2."""
    omega_z = ramp_value(spec, t)
    rate = ramp_rate(spec, t)
    return -omega_x * rate / (omega_x**2 + omega_z**2)


def hamiltonian(omega_x, omega_z, omega_y=0.0):
    """Lab-frame Hamiltonian (Omega 1 + Omega_x sx + Omega_y sy + Omega_z sz)/2.

    The identity offset makes the eigenvalues Omega and 0; Omega keeps its
    bare definition sqrt(Omega_x^2 + Omega_z^2) even when an auxiliary
    sigma_y drive is present, matching the counterdiabatic construction.
    """
    omega = np.hypot(omega_x, omega_z)
    h = 0.5 * (omega * IDENTITY + omega_x * SIGMA_X + omega_z * SIGMA_Z)
    if omega_y:
        h = h + 0.5 * omega_y * SIGMA_Y
    return h


def rotation_matrix(theta):
    """R(theta) = exp(-i theta sigma_y / 2); columns are |e>, |g> in the lab frame."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def eigenstates(theta):
    """Lab-frame energy eigenkets (excited, ground) at mixing angle theta."""
    r = rotation_matrix(theta)
    return r[:, 0].copy(), r[:, 1].copy()


@dataclass(frozen=True)
class ControlField:
    """Bundle of control amplitudes for one stroke.

    Exactly one of ``ramp`` (isentropes) and ``omega_z_const`` (isochores)
    must be given; ``sta`` switches on the counterdiabatic sigma_y drive and
    is only meaningful with a ramp.
    """

    omega_x: float
    ramp: RampSpec | None = None
    omega_z_const: float | None = None
    sta: bool = False

    def __post_init__(self):
        if not self.omega_x > 0:
            raise ValueError("omega_x must be positive")
        if (self.ramp is None) == (self.omega_z_const is None):
            raise ValueError("exactly one of ramp and omega_z_const is required")
        if self.sta and self.ramp is None:
            raise ValueError("STA drive requires a ramp")

    def omega_z(self, t):
        if self.ramp is None:
            return self.omega_z_const if np.isscalar(t) else np.full_like(
                np.asarray(t, dtype=float), self.omega_z_const)
        return ramp_value(self.ramp, t)

    def omega_y(self, t):
        if not self.sta:
            return 0.0 if np.isscalar(t) else np.zeros_like(np.asarray(t, dtype=float))
        return sta_field(self.omega_x, self.ramp, t)
