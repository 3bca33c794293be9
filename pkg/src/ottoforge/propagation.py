"""Per-stroke Liouvillians and time-ordered stroke propagators.

Strokes are integrated with a midpoint-frozen piecewise-constant exponential
scheme: the Liouvillian is evaluated at substep midpoints and exponentiated,
which keeps every substep exactly CPTP.  Isochores have a static generator,
so their propagator collapses to a single matrix exponential.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .controls import ControlField, hamiltonian, mixing_angle
from .dissipators import (
    BathParams,
    NoiseSpec,
    bath_dissipator,
    control_noise_dissipator,
)
from .linalg import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_density_matrix,
    cptp_check,
    devectorize,
    expm,
    expm_batch,
    hermitize,
    ordered_product,
    vectorize,
)

__all__ = [
    "STROKE_KINDS",
    "ENHANCEMENTS",
    "StrokeConfig",
    "PropagatorResult",
    "StrokeTrace",
    "IntegrationAccuracyError",
    "liouvillian",
    "stroke_propagator",
    "evolve_state",
]

STROKE_KINDS = ("compression", "hot_isochore", "expansion", "cold_isochore")
ENHANCEMENTS = ("NA", "STA", "QL")

DEFAULT_SUBSTEPS = 1024


class IntegrationAccuracyError(RuntimeError):
    """Raised when a propagator fails its CPTP tolerance; use more substeps."""


@dataclass(frozen=True)
class StrokeConfig:
    """One stroke of the cycle: controls, optional bath, noise, enhancement."""

    kind: str
    duration: float
    field: ControlField
    bath: BathParams | None = None
    noise: NoiseSpec = NoiseSpec()
    enhancement: str = "NA"

    def __post_init__(self):
        if self.kind not in STROKE_KINDS:
            raise ValueError(f"unknown stroke kind {self.kind!r}")
        if self.enhancement not in ENHANCEMENTS:
            raise ValueError(f"unknown enhancement {self.enhancement!r}")
        if self.duration < 0:
            raise ValueError("stroke duration must be non-negative")
        if self.is_isentrope:
            if self.bath is not None:
                raise ValueError("isentropes carry no bath")
            if self.duration > 0 and self.field.ramp is None:
                raise ValueError("isentropes need a ramped control field")
            if (self.enhancement == "STA") != self.field.sta:
                raise ValueError("STA enhancement and field.sta must agree")
        else:
            if self.field.omega_z_const is None:
                raise ValueError("isochores need a constant control field")
            if self.enhancement != "NA":
                raise ValueError("enhancements apply to isentropes only")

    @property
    def is_isentrope(self):
        return self.kind in ("compression", "expansion")

    @property
    def ramp(self):
        return self.field.ramp


@dataclass(frozen=True)
class PropagatorResult:
    """Stroke propagator with the substep count used and an optional error estimate."""

    propagator: np.ndarray
    substeps: int
    max_step_error_estimate: float | None = None


@dataclass(frozen=True)
class StrokeTrace:
    """Uniformly sampled evolution of a state across one stroke."""

    times: np.ndarray
    states: np.ndarray
    energies: np.ndarray


def _kron_batch(a, b):
    """Batched np.kron over the leading axes of a and b."""
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(out.shape[:-4] + (4, 4))


def _liouvillian_batch(stroke, times):
    """Stroke Liouvillian evaluated at an array of times, shape (K, 4, 4)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    k = times.shape[0]
    field = stroke.field
    omega_z = np.broadcast_to(np.asarray(field.omega_z(times), dtype=float), (k,))
    omega_y = np.broadcast_to(np.asarray(field.omega_y(times), dtype=float), (k,))
    theta, omega = mixing_angle(field.omega_x, omega_z)

    ham = 0.5 * (
        omega[:, None, None] * IDENTITY
        + field.omega_x * SIGMA_X
        + omega_y[:, None, None] * SIGMA_Y
        + omega_z[:, None, None] * SIGMA_Z
    )
    eye = np.broadcast_to(IDENTITY, (k, 2, 2))
    liou = -1.0j * (_kron_batch(eye, ham) - _kron_batch(ham.transpose(0, 2, 1), eye))

    noise = stroke.noise
    if noise.lambda_z:
        dc = control_noise_dissipator({"z": 1.0}, NoiseSpec(lambda_z=noise.lambda_z))
        liou += (omega_z**2)[:, None, None] * dc
    if noise.lambda_y and stroke.enhancement == "STA":
        dc = control_noise_dissipator({"y": 1.0}, NoiseSpec(lambda_y=noise.lambda_y))
        liou += (omega_y**2)[:, None, None] * dc
    if noise.lambda_x:
        dc = control_noise_dissipator(
            {"x": field.omega_x}, NoiseSpec(lambda_x=noise.lambda_x))
        liou += np.broadcast_to(dc, (k, 4, 4))

    if stroke.bath is not None:
        liou += bath_dissipator(float(omega_z[0]), field.omega_x, stroke.bath)

    if stroke.enhancement == "QL" and noise.ql_strength:
        sig_rot = (
            np.cos(theta)[:, None, None] * SIGMA_Z
            + np.sin(theta)[:, None, None] * SIGMA_X
        )
        comm = _kron_batch(eye, sig_rot) - _kron_batch(sig_rot.transpose(0, 2, 1), eye)
        liou += -noise.ql_strength * (comm @ comm)
    return liou


def liouvillian(stroke, t):
    """Full generator of the stroke dynamics at time t in [0, duration]."""
    if stroke.duration > 0 and not 0.0 <= t <= stroke.duration * (1 + 1e-12):
        raise ValueError(f"time {t} outside stroke interval [0, {stroke.duration}]")
    return _liouvillian_batch(stroke, [min(t, stroke.duration)])[0]


def _stroke_hamiltonian(stroke, t):
    """Hamiltonian generating the stroke's unitary part (includes any STA drive)."""
    field = stroke.field
    return hamiltonian(field.omega_x, field.omega_z(t), field.omega_y(t))


def _midpoint_factors(stroke, t0, t1, substeps):
    """Midpoint-frozen substep exponentials over [t0, t1], earliest first."""
    dt = (t1 - t0) / substeps
    mids = t0 + dt * (np.arange(substeps) + 0.5)
    return expm_batch(_liouvillian_batch(stroke, mids) * dt)


def _propagator_over(stroke, t0, t1, substeps):
    if t1 <= t0:
        return np.eye(4, dtype=complex)
    return ordered_product(_midpoint_factors(stroke, t0, t1, substeps))


def stroke_propagator(stroke, substeps=DEFAULT_SUBSTEPS, with_error_estimate=False):
    """Time-ordered propagator of one stroke.

    Isentropes use ``substeps`` midpoint-frozen exponentials; isochores are
    static so a single exponential is exact and recorded as one substep.
    When ``with_error_estimate`` is set the propagator is recomputed at
    doubled resolution and the operator-norm difference reported.
    """
    if substeps < 1:
        raise ValueError("substeps must be at least 1")
    if stroke.duration == 0:
        return PropagatorResult(np.eye(4, dtype=complex), 0, 0.0)

    static = stroke.field.ramp is None
    if static:
        prop = expm(_liouvillian_batch(stroke, [0.0])[0] * stroke.duration)
        used = 1
    else:
        prop = _propagator_over(stroke, 0.0, stroke.duration, substeps)
        used = substeps

    estimate = None
    if with_error_estimate:
        if static:
            estimate = 0.0
        else:
            finer = _propagator_over(stroke, 0.0, stroke.duration, 2 * substeps)
            estimate = float(np.linalg.norm(finer - prop, ord=2))

    report = cptp_check(prop)
    if not report.ok:
        raise IntegrationAccuracyError(
            f"stroke propagator failed CPTP check (trace deviation "
            f"{report.trace_deviation:.3e}, Choi min {report.choi_min_eigenvalue:.3e}); "
            f"increase substeps (used {used})"
        )
    return PropagatorResult(prop, used, estimate)


def evolve_state(rho, stroke, samples, substeps=DEFAULT_SUBSTEPS):
    """Evolve a state across a stroke, sampling it at uniform times.

    Returns the trajectory at ``samples + 1`` times including both endpoints,
    with the instantaneous energy expectation Tr[H(t) rho(t)] at each sample.
    The substep count is rounded up so the sample grid lies on substep
    boundaries, making the final state consistent with stroke_propagator.
    """
    rho = check_density_matrix(rho)
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if stroke.duration == 0:
        energy = float(np.real(np.trace(_stroke_hamiltonian(stroke, 0.0) @ rho)))
        return StrokeTrace(
            np.zeros(samples + 1),
            np.broadcast_to(rho, (samples + 1, 2, 2)).copy(),
            np.full(samples + 1, energy),
        )

    per_sample = max(1, -(-substeps // samples))
    total = per_sample * samples
    static = stroke.field.ramp is None
    dt = stroke.duration / total
    if static:
        step = expm(_liouvillian_batch(stroke, [0.0])[0] * dt)
        factors = np.broadcast_to(step, (total, 4, 4))
    else:
        factors = _midpoint_factors(stroke, 0.0, stroke.duration, total)

    times = np.linspace(0.0, stroke.duration, samples + 1)
    states = np.empty((samples + 1, 2, 2), dtype=complex)
    energies = np.empty(samples + 1)
    vec = vectorize(rho)
    states[0] = rho
    for i in range(samples):
        for k in range(i * per_sample, (i + 1) * per_sample):
            vec = factors[k] @ vec
        state = hermitize(devectorize(vec))
        check_density_matrix(state)
        states[i + 1] = state
    for i, t in enumerate(times):
        energies[i] = float(np.real(np.trace(_stroke_hamiltonian(stroke, t) @ states[i])))
    return StrokeTrace(times, states, energies)
