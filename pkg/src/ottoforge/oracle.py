"""Stochastic-trajectory validation of the noise-averaged dissipator.

Individual realizations of the Gaussian white control noise are simulated
by exponentiating the sampled Hamiltonian over each substep, with the noise
value drawn at the step midpoint (Stratonovich-consistent, so the ensemble
average converges to the double-commutator master equation).  Each
trajectory is unitary, hence exactly positivity preserving.

Strength convention: lambda_j parametrizes the averaged dissipator
-(lambda_j Omega_j^2 / 4) [s_j, [s_j, .]].  The Stratonovich average of
multiplicative Hamiltonian white noise produces half the delta-correlation
weight as dissipator coefficient, so the matching correlation is
E[xi(t) xi(s)] = 2 lambda delta(t - s) and the time-averaged noise over a
step of length dt is drawn as N(0, 2 lambda / dt).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .controls import eigenstates, mixing_angle
from .linalg import check_density_matrix, devectorize, hermitize, trace_distance, vectorize
from .propagation import stroke_propagator

__all__ = ["TrajectoryRun", "sample_trajectory", "noise_average"]

DT_WARN_THRESHOLD = 0.1
DT_ERROR_THRESHOLD = 1.0


@dataclass(frozen=True)
class TrajectoryRun:
    """Noise-averaged trajectory ensemble and its master-equation comparison."""

    n_trajectories: int
    dt: float
    seed: int
    mean_state: np.ndarray
    std_error: np.ndarray
    comparison: float
    master_state: np.ndarray

    @property
    def std_error_scalar(self):
        """Frobenius norm of the per-entry standard errors."""
        return float(np.linalg.norm(self.std_error))


def _noise_axes(stroke):
    """Sampled noise channels of a stroke as (name, strength) pairs."""
    axes = []
    noise = stroke.noise
    if noise.lambda_z > 0:
        axes.append(("z", noise.lambda_z))
    if noise.lambda_y > 0 and stroke.enhancement == "STA":
        axes.append(("y", noise.lambda_y))
    if noise.lambda_x > 0:
        axes.append(("x", noise.lambda_x))
    if noise.ql_strength > 0 and stroke.enhancement == "QL":
        axes.append(("ql", noise.ql_strength))
    return axes


def _steps_for(stroke, dt):
    n_steps = int(round(stroke.duration / dt))
    if n_steps < 1 or abs(n_steps * dt - stroke.duration) > 1e-9 * stroke.duration:
        raise ValueError(
            f"dt {dt} does not divide the stroke duration {stroke.duration}")
    return n_steps


def _check_dt_criterion(stroke, dt):
    """Require lambda Omega^2 dt << 1 for every sampled axis."""
    field = stroke.field
    times = np.linspace(0.0, stroke.duration, 65)
    omega_z_max = float(np.max(np.abs(field.omega_z(times))))
    omega_y_max = float(np.max(np.abs(field.omega_y(times))))
    worst = 0.0
    for name, lam in _noise_axes(stroke):
        amp = {"z": omega_z_max, "y": omega_y_max, "x": field.omega_x, "ql": 2.0}[name]
        worst = max(worst, lam * amp * amp * dt)
    if worst > DT_ERROR_THRESHOLD:
        raise ValueError(
            f"step criterion lambda*Omega^2*dt = {worst:.3g} exceeds "
            f"{DT_ERROR_THRESHOLD}; reduce dt")
    if worst > DT_WARN_THRESHOLD:
        warnings.warn(
            f"step criterion lambda*Omega^2*dt = {worst:.3g} above "
            f"{DT_WARN_THRESHOLD}; trajectory averages may be biased",
            stacklevel=3)


def _default_initial_state(stroke):
    theta, _ = mixing_angle(stroke.field.omega_x, float(stroke.field.omega_z(0.0)))
    _, ket_g = eigenstates(theta)
    return np.outer(ket_g, ket_g.conj())


def _simulate_batch(stroke, dt, seed_seqs, rho0):
    """Final states of one batch of noise trajectories, shape (B, 2, 2)."""
    n_steps = _steps_for(stroke, dt)
    axes = _noise_axes(stroke)
    batch = len(seed_seqs)
    stds = np.array([np.sqrt(2.0 * lam / dt) for _, lam in axes])
    noise = np.empty((batch, n_steps, len(axes)))
    for k, seq in enumerate(seed_seqs):
        rng = np.random.Generator(np.random.PCG64(seq))
        noise[k] = rng.normal(size=(n_steps, len(axes))) * stds

    field = stroke.field
    mids = dt * (np.arange(n_steps) + 0.5)
    omega_z = np.broadcast_to(np.asarray(field.omega_z(mids), dtype=float), (n_steps,))
    omega_y = np.broadcast_to(np.asarray(field.omega_y(mids), dtype=float), (n_steps,))
    theta, omega = mixing_angle(field.omega_x, omega_z)

    rho = np.broadcast_to(np.asarray(rho0, dtype=complex), (batch, 2, 2)).copy()
    for i in range(n_steps):
        vx = np.full(batch, 0.5 * field.omega_x)
        vy = np.full(batch, 0.5 * omega_y[i])
        vz = np.full(batch, 0.5 * omega_z[i])
        for a, (name, _) in enumerate(axes):
            xi = noise[:, i, a]
            if name == "z":
                vz = vz + 0.5 * xi * omega_z[i]
            elif name == "y":
                vy = vy + 0.5 * xi * omega_y[i]
            elif name == "x":
                vx = vx + 0.5 * xi * field.omega_x
            else:  # lubricating field along sigma_z'(t)
                vz = vz + xi * np.cos(theta[i])
                vx = vx + xi * np.sin(theta[i])
        norm = np.sqrt(vx * vx + vy * vy + vz * vz)
        cos = np.cos(norm * dt)
        sinc = dt * np.sinc(norm * dt / np.pi)
        phase = np.exp(-0.5j * omega[i] * dt)
        u = np.empty((batch, 2, 2), dtype=complex)
        u[:, 0, 0] = phase * (cos - 1.0j * sinc * vz)
        u[:, 0, 1] = phase * (-1.0j * sinc * (vx - 1.0j * vy))
        u[:, 1, 0] = phase * (-1.0j * sinc * (vx + 1.0j * vy))
        u[:, 1, 1] = phase * (cos + 1.0j * sinc * vz)
        rho = np.einsum("bij,bjk,blk->bil", u, rho, u.conj())
    return rho


def _require_bathless(stroke):
    if stroke.bath is not None:
        raise ValueError(
            "trajectory sampling covers bathless strokes only; bath dynamics "
            "are validated at the master-equation level")


def sample_trajectory(stroke, dt, seed, rho0=None):
    """Evolve one white-noise realization of a bathless stroke.

    Deterministic in ``seed``; with all noise strengths zero this is exactly
    the deterministic unitary evolution on the same time grid.
    """
    _require_bathless(stroke)
    _check_dt_criterion(stroke, dt)
    if rho0 is None:
        rho0 = _default_initial_state(stroke)
    rho0 = check_density_matrix(rho0)
    final = _simulate_batch(stroke, dt, [np.random.SeedSequence(seed)], rho0)[0]
    return hermitize(final)


def noise_average(stroke, n, dt, seed, rho0=None, batch_size=2048):
    """Average ``n`` noise trajectories and compare with the master equation.

    Trajectory k is seeded from (seed, k) via SeedSequence spawn keys, so
    results are reproducible and independent of batching; the reduction runs
    in fixed trajectory order.  ``comparison`` is the trace distance between
    the trajectory average and the noise-averaged master-equation solution
    on the same grid.
    """
    if n < 100:
        raise ValueError("noise averaging needs at least 100 trajectories")
    _require_bathless(stroke)
    _check_dt_criterion(stroke, dt)
    if rho0 is None:
        rho0 = _default_initial_state(stroke)
    rho0 = check_density_matrix(rho0)
    n_steps = _steps_for(stroke, dt)

    total = np.zeros((2, 2), dtype=complex)
    total_sq = np.zeros((2, 2))
    for start in range(0, n, batch_size):
        seqs = [np.random.SeedSequence(entropy=seed, spawn_key=(k,))
                for k in range(start, min(start + batch_size, n))]
        finals = _simulate_batch(stroke, dt, seqs, rho0)
        total += finals.sum(axis=0)
        total_sq += (np.abs(finals) ** 2).sum(axis=0)
    mean = total / n
    var = np.maximum(total_sq / n - np.abs(mean) ** 2, 0.0) * n / max(n - 1, 1)
    std_error = np.sqrt(var / n)

    master = stroke_propagator(stroke, substeps=n_steps).propagator
    master_state = hermitize(devectorize(master @ vectorize(rho0)))
    mean = hermitize(mean)
    return TrajectoryRun(
        n_trajectories=n,
        dt=dt,
        seed=seed,
        mean_state=mean,
        std_error=std_error,
        comparison=trace_distance(mean, master_state),
        master_state=master_state,
    )
