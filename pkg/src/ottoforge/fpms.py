"""Four-point measurement statistics of the cycle.

Projective energy measurements at the four cycle vertices define a joint
distribution over the compression work, hot heat and expansion work of one
cycle.  Transition probabilities between vertex energy eigenstates come
from the noise-averaged stroke propagators; initial probabilities are the
populations of the unmonitored limit-cycle state at vertex 0.

Work and heat values stored on trajectories follow the energy-into-system
convention; the power distribution flips the sign so that engine output is
positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import engine as _engine
from .controls import eigenstates, mixing_angle
from .linalg import dephasing_superop, devectorize, hermitize, vectorize
from .propagation import IntegrationAccuracyError, stroke_propagator

__all__ = [
    "TransitionMatrix",
    "TrajectoryRecord",
    "TrajectoryDistribution",
    "CurrentDistribution",
    "FluctuationReport",
    "MeasuredPerformance",
    "transition_matrix",
    "joint_distribution",
    "current_distribution",
    "moments",
    "fano_and_variance",
    "measured_performance",
]

GROUND, EXCITED = 0, 1

# Transition probabilities outside [0, 1] by more than this are integration
# failures; anything smaller is clipped and renormalized.
CLIP_TOL = 1e-7


@dataclass(frozen=True)
class TransitionMatrix:
    """Column-stochastic matrix of p(i -> j) over (ground, excited) eigenstates.

    ``matrix[j, i]`` is the probability of measuring eigenstate j at the end
    of the stroke given eigenstate i at its start; ``clip_magnitude`` records
    the largest out-of-range deviation removed by clipping.
    """

    matrix: np.ndarray
    clip_magnitude: float


def _endpoint_bases(stroke):
    """Energy eigenkets (ground, excited) at the start and end of a stroke."""
    t_end = stroke.duration
    theta0, _ = mixing_angle(stroke.field.omega_x, float(stroke.field.omega_z(0.0)))
    theta1, _ = mixing_angle(stroke.field.omega_x, float(stroke.field.omega_z(t_end)))
    e0, g0 = eigenstates(theta0)
    e1, g1 = eigenstates(theta1)
    return (g0, e0), (g1, e1)


def _clip_and_normalize(matrix):
    clip = float(np.max(np.maximum(-matrix, matrix - 1.0).clip(min=0.0)))
    if clip > CLIP_TOL:
        raise IntegrationAccuracyError(
            f"transition probabilities out of [0, 1] by {clip:.3e}; "
            f"increase substeps")
    clipped = np.clip(matrix, 0.0, 1.0)
    return clipped / clipped.sum(axis=0, keepdims=True), clip


def transition_matrix(stroke, propagator=None, substeps=None):
    """Transition probabilities between endpoint energy eigenstates of a stroke.

    Computes p(i -> j) = vec(|j><j|)^dag V vec(|i><i|) with the stroke
    propagator V and the noise-averaged eigenbases of the endpoint
    Hamiltonians.
    """
    if propagator is None:
        kwargs = {} if substeps is None else {"substeps": substeps}
        propagator = stroke_propagator(stroke, **kwargs).propagator
    basis0, basis1 = _endpoint_bases(stroke)
    raw = np.empty((2, 2))
    for i, ket_i in enumerate(basis0):
        out = propagator @ vectorize(np.outer(ket_i, ket_i.conj()))
        for j, ket_j in enumerate(basis1):
            raw[j, i] = float(
                np.real(vectorize(np.outer(ket_j, ket_j.conj())).conj() @ out))
    matrix, clip = _clip_and_normalize(raw)
    return TransitionMatrix(matrix, clip)


@dataclass(frozen=True)
class TrajectoryRecord:
    """One measurement trajectory (n, m, s, v) with its probability and energetics."""

    n: int
    m: int
    s: int
    v: int
    probability: float
    w01: float
    q_h: float
    w23: float


@dataclass(frozen=True)
class TrajectoryDistribution:
    """Joint distribution over the 16 vertex-measurement trajectories."""

    records: tuple
    initial_populations: tuple
    omega_cold: float
    omega_hot: float
    tau_cycle: float

    @property
    def total_probability(self):
        return float(sum(r.probability for r in self.records))


def _initial_populations(config, monitored):
    """Vertex-0 populations (ground, excited) in the cold energy eigenbasis."""
    if monitored:
        rho0 = _monitored_limit_state(config)
    else:
        rho0 = _engine.limit_cycle_state(config)
    theta, _ = mixing_angle(config.omega_x, config.omega_z_cold)
    ket_e, ket_g = eigenstates(theta)
    pops = np.array([
        float(np.real(ket_g.conj() @ rho0 @ ket_g)),
        float(np.real(ket_e.conj() @ rho0 @ ket_e)),
    ])
    if pops.min() < -CLIP_TOL:
        raise IntegrationAccuracyError(
            f"limit-cycle populations negative by {-pops.min():.3e}")
    pops = np.clip(pops, 0.0, None)
    return tuple(pops / pops.sum())


def _monitored_limit_state(config):
    """Fixed point of the cycle interleaved with projective vertex dephasing."""
    theta_c, _ = mixing_angle(config.omega_x, config.omega_z_cold)
    theta_h, _ = mixing_angle(config.omega_x, config.omega_z_hot)
    deph = {
        "cold": dephasing_superop(eigenstates(theta_c)),
        "hot": dephasing_superop(eigenstates(theta_h)),
    }
    props = [r.propagator for r in _engine.stroke_propagators(config)]
    cycle = deph["cold"]
    for prop, basis in zip(props, ("hot", "hot", "cold", "cold")):
        cycle = deph[basis] @ prop @ cycle
    evals, evecs = np.linalg.eig(cycle)
    best = int(np.argmin(np.abs(evals - 1.0)))
    if abs(evals[best] - 1.0) > _engine.UNIT_EIGENVALUE_TOL:
        raise _engine.NoLimitCycleError(
            "monitored cycle propagator has no unit eigenvalue")
    rho = hermitize(devectorize(evecs[:, best]))
    return rho / np.trace(rho)


def joint_distribution(config, monitored=False):
    """Joint distribution of (W01, Q_H, W23) from the four-point scheme.

    The 16 trajectory probabilities are the Markov products of the initial
    vertex populations and the three stroke transition matrices; energies
    are eigenvalue differences with the cold/hot splittings at the
    respective vertices.  With ``monitored`` the initial populations come
    from the vertex-dephased limit cycle instead of the unmonitored one.
    """
    strokes = _engine.make_strokes(config)
    props = _engine.stroke_propagators(config)
    t01, t12, t23 = (
        transition_matrix(stroke, propagator=res.propagator).matrix
        for stroke, res in zip(strokes[:3], props[:3])
    )
    p0 = _initial_populations(config, monitored)
    omega_c, omega_h = config.omega_cold, config.omega_hot
    e_cold = (0.0, omega_c)
    e_hot = (0.0, omega_h)
    records = []
    for n, m, s, v in product((GROUND, EXCITED), repeat=4):
        prob = p0[n] * t01[m, n] * t12[s, m] * t23[v, s]
        records.append(TrajectoryRecord(
            n=n, m=m, s=s, v=v, probability=float(prob),
            w01=e_hot[m] - e_cold[n],
            q_h=e_hot[s] - e_hot[m],
            w23=e_cold[v] - e_hot[s],
        ))
    return TrajectoryDistribution(
        records=tuple(records), initial_populations=p0,
        omega_cold=omega_c, omega_hot=omega_h, tau_cycle=config.tau_cycle)


@dataclass(frozen=True)
class CurrentDistribution:
    """Discrete distribution of a thermodynamic current (power or heat rate)."""

    values: np.ndarray
    probabilities: np.ndarray
    kind: str


def current_distribution(joint, kind, tau_cycle=None):
    """Aggregate the joint distribution into a power or heat-rate distribution.

    Trajectories are grouped by their exact energy combination (integer
    multiples of the cold and hot splittings), so support points coincide
    exactly.  Power output is positive in the engine regime:
    P = -(W01 + W23) / tau.
    """
    if kind not in ("power", "heat_rate"):
        raise ValueError(f"unknown current kind {kind!r}")
    tau = joint.tau_cycle if tau_cycle is None else tau_cycle
    if not tau > 0:
        raise ValueError("current distributions need a positive cycle time")
    groups = {}
    for rec in joint.records:
        if kind == "power":
            # -(w01 + w23) = omega_cold (n - v) + omega_hot (s - m); building
            # the value from integer coefficients makes equal combinations
            # equal floats, so aggregation is exact.
            value = ((rec.n - rec.v) * joint.omega_cold
                     + (rec.s - rec.m) * joint.omega_hot) / tau
        else:
            value = (rec.s - rec.m) * joint.omega_hot / tau
        groups[value] = groups.get(value, 0.0) + rec.probability
    values = np.array(sorted(v for v, p in groups.items() if p > 0.0))
    probs = np.array([groups[v] for v in values])
    return CurrentDistribution(values, probs, kind)


def moments(dist, order):
    """Raw moment sum_k p_k v_k^order of a current distribution."""
    if order < 0:
        raise ValueError("moment order must be non-negative")
    return float(np.sum(dist.probabilities * dist.values**order))


@dataclass(frozen=True)
class FluctuationReport:
    """Tau-scaled variance and Fano factor of a current."""

    variance_rate: float
    fano: float | None


def fano_and_variance(dist, tau_cycle):
    """Delta^2 = tau (⟨v^2⟩ - ⟨v⟩^2) and Fano factor F = Delta^2 / ⟨v⟩^2.

    The Fano factor is undefined (None) for a zero-mean current.
    """
    mean = moments(dist, 1)
    var = max(0.0, moments(dist, 2) - mean**2)
    variance_rate = tau_cycle * var
    fano = variance_rate / mean**2 if mean != 0.0 else None
    return FluctuationReport(variance_rate=variance_rate, fano=fano)


@dataclass(frozen=True)
class MeasuredPerformance:
    """Bundled four-point-scheme statistics for one cycle configuration."""

    mean_power: float
    mean_heat_rate: float
    variance_rate_power: float
    fano_power: float | None
    fano_heat: float | None
    power_distribution: CurrentDistribution
    heat_distribution: CurrentDistribution
    joint: TrajectoryDistribution


def measured_performance(config, monitored=False):
    """Mean power, mean heat rate, variance and Fano factors from the 4PMS."""
    joint = joint_distribution(config, monitored=monitored)
    power = current_distribution(joint, "power")
    heat = current_distribution(joint, "heat_rate")
    fluct_p = fano_and_variance(power, config.tau_cycle)
    fluct_q = fano_and_variance(heat, config.tau_cycle)
    return MeasuredPerformance(
        mean_power=moments(power, 1),
        mean_heat_rate=moments(heat, 1),
        variance_rate_power=fluct_p.variance_rate,
        fano_power=fluct_p.fano,
        fano_heat=fluct_q.fano,
        power_distribution=power,
        heat_distribution=heat,
        joint=joint,
    )
