"""Generators beyond unitary evolution: thermal bath, control noise, dephasing.

Three dissipators enter the cycle dynamics: the Ohmic-bath GKLS dissipator
acting on isochores, the control-noise double commutator obtained by
averaging Gaussian white amplitude noise on the driven axes, and the
quantum-lubrication dephasing applied diagonally in the instantaneous
energy eigenbasis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .controls import eigenstates, mixing_angle
from .linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    double_commutator_superop,
    lindblad_superop,
)

__all__ = [
    "BathParams",
    "NoiseSpec",
    "spectral_density",
    "occupation",
    "bath_rates",
    "bath_dissipator",
    "control_noise_dissipator",
    "ql_dissipator",
]


@dataclass(frozen=True)
class BathParams:
    """Ohmic bath: coupling alpha, inverse temperature beta, cutoff omega_cutoff."""

    alpha: float
    beta: float
    omega_cutoff: float

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("bath coupling alpha must be non-negative")
        if not self.beta > 0 or not self.omega_cutoff > 0:
            raise ValueError("bath beta and omega_cutoff must be positive")


@dataclass(frozen=True)
class NoiseSpec:
    """White-noise strengths per control axis plus the lubrication strength.

    lambda_z acts on the sigma_z drive on every stroke, lambda_y on the
    counterdiabatic drive when an STA is active, lambda_x optionally on the
    intrinsic tunnelling (off by default), and ql_strength is the constant
    dephasing rate of the lubricating field.
    """

    lambda_z: float = 0.0
    lambda_y: float = 0.0
    lambda_x: float = 0.0
    ql_strength: float = 0.0

    def __post_init__(self):
        for name in ("lambda_z", "lambda_y", "lambda_x", "ql_strength"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def shared(cls, lam, ql_strength=0.0):
        """Single noise level on all externally driven axes (z and STA y)."""
        return cls(lambda_z=lam, lambda_y=lam, lambda_x=0.0, ql_strength=ql_strength)


def spectral_density(omega, bath):
    """Ohmic spectral density J(omega) = alpha omega exp(-omega / omega_cutoff)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0")
    out = bath.alpha * omega * np.exp(-omega / bath.omega_cutoff)
    return float(out) if out.ndim == 0 else out


def occupation(omega, beta):
    """Bose occupation N(omega) = 1 / (exp(beta omega) - 1)."""
    x = np.asarray(beta * np.asarray(omega, dtype=float))
    if np.any(x <= 0):
        raise ValueError("occupation requires beta * omega > 0")
    # exp(-x) / (1 - exp(-x)) avoids overflow for large beta * omega.
    out = np.exp(-x) / (-np.expm1(-x))
    return float(out) if out.ndim == 0 else out


def bath_rates(omega, theta, bath):
    """GKLS rates (gamma_plus, gamma_minus, gamma_zero) at splitting omega.

    gamma_plus = 2 pi J N cos^2(theta), gamma_minus = 2 pi J (1 + N)
    cos^2(theta), gamma_zero = 2 pi (alpha / beta) sin^2(theta); detailed
    balance gamma_plus / gamma_minus = exp(-beta omega) holds by construction.
    """
    if not omega > 0:
        raise ValueError("bath rates require a positive splitting")
    j = spectral_density(omega, bath)
    n = occupation(omega, bath.beta)
    cos2 = np.cos(theta) ** 2
    gamma_plus = 2.0 * np.pi * j * n * cos2
    gamma_minus = 2.0 * np.pi * j * (1.0 + n) * cos2
    gamma_zero = 2.0 * np.pi * (bath.alpha / bath.beta) * np.sin(theta) ** 2
    return gamma_plus, gamma_minus, gamma_zero


def bath_dissipator(omega_z, omega_x, bath):
    """Thermal dissipator for a static Hamiltonian with controls (omega_x, omega_z).

    Jump operators are defined in the instantaneous energy eigenbasis
    (P+ = |e><g|, P- = |g><e|, P0 = |e><e| - |g><g|) and rotated to the lab
    frame; its unique fixed point together with the Hamiltonian commutator
    is the Gibbs state at the bath temperature.
    """
    theta, omega = mixing_angle(omega_x, omega_z)
    ket_e, ket_g = eigenstates(theta)
    p_plus = np.outer(ket_e, ket_g.conj())
    p_minus = np.outer(ket_g, ket_e.conj())
    p_zero = np.outer(ket_e, ket_e.conj()) - np.outer(ket_g, ket_g.conj())
    gamma_plus, gamma_minus, gamma_zero = bath_rates(omega, theta, bath)
    return (
        lindblad_superop(p_plus, gamma_plus)
        + lindblad_superop(p_minus, gamma_minus)
        + lindblad_superop(p_zero, gamma_zero)
    )


_AXIS_SIGMA = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
_AXIS_DOUBLE_COMM = {ax: double_commutator_superop(sig) for ax, sig in _AXIS_SIGMA.items()}


def control_noise_dissipator(amplitudes, noise):
    """Noise-averaged dissipator -sum_j (Omega_j^2 / 4) lambda_j [s_j, [s_j, .]].

    ``amplitudes`` maps axis names ("x", "y", "z") to the instantaneous
    control amplitude Omega_j(t) on that axis.
    """
    out = np.zeros((4, 4), dtype=complex)
    for axis, amp in amplitudes.items():
        lam = getattr(noise, f"lambda_{axis}")
        if lam and amp:
            out -= 0.25 * lam * amp * amp * _AXIS_DOUBLE_COMM[axis]
    return out


def ql_dissipator(theta, ql_strength):
    """Lubricating dephasing -lambda_QL [s_z'(t), [s_z'(t), .]].

    s_z' = cos(theta) sigma_z + sin(theta) sigma_x is sigma_z rotated to the
    instantaneous energy eigenbasis, so the action is diagonal-preserving
    there with off-diagonal decay rate 4 lambda_QL.
    """
    if ql_strength < 0:
        raise ValueError("ql_strength must be non-negative")
    if ql_strength == 0:
        return np.zeros((4, 4), dtype=complex)
    sigma_z_rot = np.cos(theta) * SIGMA_Z + np.sin(theta) * SIGMA_X
    return -ql_strength * double_commutator_superop(sigma_z_rot)
