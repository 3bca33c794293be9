"""Shared fixtures-in-spirit: reference configurations and random states."""
from __future__ import annotations

import math

import numpy as np

from ottoforge.dissipators import NoiseSpec
from ottoforge.engine import CycleConfig

# Figure-caption environment: splittings Omega_C = 100, Omega_H = 200 (the
# hot endpoint is an input; 200 keeps the engine regime), T_C = T_H/5 = 10.
OMEGA_Z_COLD_PAPER = math.sqrt(100.0**2 - 1.0)
OMEGA_Z_HOT_PAPER = math.sqrt(200.0**2 - 1.0)


def paper_config(tau, lam=0.0, mode="NA", ql=0.0, substeps=1024, **overrides):
    """Engine in the figure-caption regime (nearly adiabatic driving)."""
    noise = NoiseSpec.shared(lam, ql_strength=ql if mode == "QL" else 0.0)
    kwargs = dict(
        omega_z_cold=OMEGA_Z_COLD_PAPER,
        omega_z_hot=OMEGA_Z_HOT_PAPER,
        tau_cycle=tau,
        beta_h=1.0 / 50.0,
        beta_c=1.0 / 10.0,
        alpha=0.01,
        noise=noise,
        enhancement=mode,
        substeps=substeps,
    )
    kwargs.update(overrides)
    return CycleConfig(**kwargs)


def quantum_config(tau, lam=0.0, mode="NA", ql=0.0, substeps=512, **overrides):
    """Low-frequency engine where driving is strongly non-adiabatic.

    The control sweeps close to the avoided crossing, so quantum friction,
    STA costs and measurement back-action are all first-order effects.
    """
    noise = NoiseSpec.shared(lam, ql_strength=ql if mode == "QL" else 0.0)
    kwargs = dict(
        omega_z_cold=1.0,
        omega_z_hot=4.0,
        tau_cycle=tau,
        beta_h=0.4,
        beta_c=2.0,
        alpha=0.05,
        noise=noise,
        enhancement=mode,
        substeps=substeps,
    )
    kwargs.update(overrides)
    return CycleConfig(**kwargs)


def random_density_matrix(rng):
    """Haar-ish random 2x2 density matrix."""
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_hermitian(rng, scale=1.0):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return scale * 0.5 * (a + a.conj().T)
