"""Four-stroke cycle assembly, limit cycle, and average thermodynamic performance.

The cycle runs compression (0->1), hot isochore (1->2), expansion (2->3),
cold isochore (3->0), each taking a quarter of the total cycle time.  All
reported energetics refer to the limit cycle, the fixed point of the full
cycle propagator.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import diagnostics
from .controls import ControlField, RampSpec, hamiltonian, mixing_angle
from .dissipators import BathParams, NoiseSpec
from .linalg import (
    check_density_matrix,
    devectorize,
    hermitize,
    trace_distance,
    vectorize,
)
from .propagation import (
    DEFAULT_SUBSTEPS,
    ENHANCEMENTS,
    StrokeConfig,
    stroke_propagator,
)

__all__ = [
    "CycleConfig",
    "CyclePerformance",
    "ClosedFormBenchmarks",
    "SweepRow",
    "NoLimitCycleError",
    "NonUniqueLimitCycleError",
    "make_strokes",
    "stroke_propagators",
    "cycle_propagator",
    "limit_cycle_state",
    "limit_cycle_analysis",
    "transient_cycle_count",
    "energetics",
    "closed_form_benchmarks",
    "sweep",
]

LIMIT_CYCLE_RESIDUAL_TOL = 1e-8
UNIT_EIGENVALUE_TOL = 1e-6
UNIQUENESS_GAP = 1e-10


class NoLimitCycleError(RuntimeError):
    """Raised when the cycle propagator has no eigenvalue close to one."""


class NonUniqueLimitCycleError(RuntimeError):
    """Raised when the unit eigenvalue of the cycle propagator is degenerate."""


@dataclass(frozen=True)
class CycleConfig:
    """Full engine specification in units of the intrinsic tunnelling omega_x.

    ``tau_cycle`` is the total cycle time, split equally over the four
    strokes.  ``omega_cutoff`` defaults to 100x the hot control amplitude,
    which makes the Ohmic bath effectively flat at engine frequencies.
    """

    omega_z_cold: float
    omega_z_hot: float
    tau_cycle: float
    beta_h: float
    beta_c: float
    alpha: float
    omega_x: float = 1.0
    omega_cutoff: float | None = None
    noise: NoiseSpec = NoiseSpec()
    enhancement: str = "NA"
    substeps: int = DEFAULT_SUBSTEPS

    def __post_init__(self):
        if not self.omega_z_hot >= self.omega_z_cold >= 0:
            raise ValueError("need omega_z_hot >= omega_z_cold >= 0")
        if not self.beta_c >= self.beta_h > 0:
            raise ValueError("need beta_c >= beta_h > 0")
        if self.tau_cycle < 0 or self.alpha < 0 or self.omega_x <= 0:
            raise ValueError("invalid cycle parameters")
        if self.enhancement not in ENHANCEMENTS:
            raise ValueError(f"unknown enhancement {self.enhancement!r}")
        if self.substeps < 1:
            raise ValueError("substeps must be at least 1")

    @property
    def tau_stroke(self):
        return self.tau_cycle / 4.0

    @property
    def omega_cold(self):
        """Cold-side energy splitting sqrt(omega_x^2 + omega_z_cold^2)."""
        return float(np.hypot(self.omega_x, self.omega_z_cold))

    @property
    def omega_hot(self):
        return float(np.hypot(self.omega_x, self.omega_z_hot))

    @property
    def effective_cutoff(self):
        if self.omega_cutoff is not None:
            return self.omega_cutoff
        return 100.0 * max(self.omega_z_hot, self.omega_x)

    def bath(self, beta):
        return BathParams(alpha=self.alpha, beta=beta, omega_cutoff=self.effective_cutoff)


def make_strokes(config):
    """The four stroke configurations of a cycle, in execution order."""
    tau = config.tau_stroke
    sta = config.enhancement == "STA"
    up = RampSpec(config.omega_z_cold, config.omega_z_hot, tau) if tau > 0 else None
    down = RampSpec(config.omega_z_hot, config.omega_z_cold, tau) if tau > 0 else None
    if tau == 0:
        # Zero-duration strokes never evaluate their field; use constants.
        f_up = f_down = ControlField(config.omega_x, omega_z_const=config.omega_z_cold)
        enh = "NA"
    else:
        f_up = ControlField(config.omega_x, ramp=up, sta=sta)
        f_down = ControlField(config.omega_x, ramp=down, sta=sta)
        enh = config.enhancement
    compression = StrokeConfig(
        "compression", tau, f_up, noise=config.noise,
        enhancement=enh if tau > 0 else "NA")
    hot = StrokeConfig(
        "hot_isochore", tau,
        ControlField(config.omega_x, omega_z_const=config.omega_z_hot),
        bath=config.bath(config.beta_h), noise=config.noise)
    expansion = StrokeConfig(
        "expansion", tau, f_down, noise=config.noise,
        enhancement=enh if tau > 0 else "NA")
    cold = StrokeConfig(
        "cold_isochore", tau,
        ControlField(config.omega_x, omega_z_const=config.omega_z_cold),
        bath=config.bath(config.beta_c), noise=config.noise)
    return compression, hot, expansion, cold


@lru_cache(maxsize=128)
def _cached_propagators(config):
    return tuple(
        stroke_propagator(stroke, config.substeps) for stroke in make_strokes(config))


def stroke_propagators(config):
    """Propagators of the four strokes (compression, hot, expansion, cold)."""
    return _cached_propagators(config)


def cycle_propagator(config):
    """Ordered cycle propagator V_30 V_23 V_12 V_01 (cold isochore applied last)."""
    v01, v12, v23, v30 = (r.propagator for r in stroke_propagators(config))
    return v30 @ v23 @ v12 @ v01


@dataclass(frozen=True)
class LimitCycleInfo:
    state: np.ndarray
    eigenvalue: complex
    residual: float
    second_eigenvalue_modulus: float


def limit_cycle_analysis(config):
    """Limit-cycle state at vertex 0 with eigenvalue diagnostics."""
    vcyc = cycle_propagator(config)
    evals, evecs = np.linalg.eig(vcyc)
    order = np.argsort(np.abs(evals - 1.0))
    best = order[0]
    if abs(evals[best] - 1.0) > UNIT_EIGENVALUE_TOL:
        raise NoLimitCycleError(
            f"no cycle eigenvalue within {UNIT_EIGENVALUE_TOL} of 1 "
            f"(closest {evals[best]})")
    others = np.delete(np.abs(evals), best)
    second = float(others.max())
    if second >= 1.0 - UNIQUENESS_GAP:
        raise NonUniqueLimitCycleError(
            f"unit eigenvalue of the cycle propagator is degenerate "
            f"(second modulus {second})")
    rho = hermitize(devectorize(evecs[:, best]))
    rho = rho / np.trace(rho)
    residual = trace_distance(devectorize(vcyc @ vectorize(rho)), rho)
    if residual > LIMIT_CYCLE_RESIDUAL_TOL:
        raise NoLimitCycleError(
            f"limit-cycle fixed-point residual {residual:.3e} exceeds tolerance")
    check_density_matrix(rho)
    return LimitCycleInfo(rho, complex(evals[best]), residual, second)


def limit_cycle_state(config):
    """Density matrix at vertex 0 of the limit cycle."""
    return limit_cycle_analysis(config).state


def transient_cycle_count(config, rho_init, tol=LIMIT_CYCLE_RESIDUAL_TOL,
                          max_cycles=100_000):
    """Cycles needed for an initial state to reach the limit cycle by power iteration."""
    target = vectorize(limit_cycle_state(config))
    vcyc = cycle_propagator(config)
    vec = vectorize(check_density_matrix(rho_init))
    for n in range(1, max_cycles + 1):
        vec = vcyc @ vec
        if trace_distance(devectorize(vec), devectorize(target)) <= tol:
            return n
    raise NoLimitCycleError(
        f"power iteration did not converge within {max_cycles} cycles")


def _vertex_hamiltonians(config):
    h_cold = hamiltonian(config.omega_x, config.omega_z_cold)
    h_hot = hamiltonian(config.omega_x, config.omega_z_hot)
    return h_cold, h_hot, h_hot, h_cold


@dataclass(frozen=True)
class CyclePerformance:
    """Limit-cycle energetics; heats and works are energy into the system."""

    w01: float
    q_h: float
    w23: float
    q_c: float
    power: float
    efficiency: float | None
    entropy_rate: float
    regime: str
    vertex_states: tuple
    vertex_energies: tuple


def energetics(config):
    """Work, heat, power, efficiency and entropy production in the limit cycle.

    Vertex energies are Tr[H_m rho_m]; work and heat are vertex energy
    differences, positive into the system.  Power output is
    -(W01 + W23) / tau; efficiency is reported only in the engine regime.
    """
    rho0 = limit_cycle_state(config)
    props = [r.propagator for r in stroke_propagators(config)]
    states = [rho0]
    vec = vectorize(rho0)
    for prop in props[:3]:
        vec = prop @ vec
        states.append(hermitize(devectorize(vec)))
    hams = _vertex_hamiltonians(config)
    energies = tuple(
        float(np.real(np.trace(h @ rho))) for h, rho in zip(hams, states))
    e0, e1, e2, e3 = energies
    w01 = e1 - e0
    q_h = e2 - e1
    w23 = e3 - e2
    q_c = e0 - e3
    if config.tau_cycle > 0:
        power = -(w01 + w23) / config.tau_cycle
        entropy_rate = diagnostics.entropy_production_rate(
            q_h, q_c, config.beta_h, config.beta_c, config.tau_cycle)
    else:
        power = 0.0
        entropy_rate = 0.0
    regime = diagnostics.classify_regime(power, q_h, q_c)
    efficiency = -(w01 + w23) / q_h if regime == "engine" else None
    return CyclePerformance(
        w01=w01, q_h=q_h, w23=w23, q_c=q_c, power=power, efficiency=efficiency,
        entropy_rate=entropy_rate, regime=regime,
        vertex_states=tuple(states), vertex_energies=energies)


@dataclass(frozen=True)
class ClosedFormBenchmarks:
    """Adiabatic, fully-thermalizing closed forms for the noiseless engine."""

    w_max: float
    q_h_max: float
    eta_otto: float
    eta_carnot: float


def closed_form_benchmarks(config):
    """Maximum extractable work and heat, Otto and Carnot efficiencies."""
    omega_c, omega_h = config.omega_cold, config.omega_hot
    bracket = np.tanh(config.beta_c * omega_c / 2.0) - np.tanh(
        config.beta_h * omega_h / 2.0)
    return ClosedFormBenchmarks(
        w_max=0.5 * (omega_h - omega_c) * bracket,
        q_h_max=0.5 * omega_h * bracket,
        eta_otto=1.0 - omega_c / omega_h,
        eta_carnot=1.0 - config.beta_h / config.beta_c,
    )


@dataclass(frozen=True)
class SweepRow:
    config: CycleConfig
    performance: CyclePerformance | None
    error: str | None = None


def _sweep_one(config):
    try:
        return SweepRow(config, energetics(config))
    except Exception as exc:  # per-row failures must not abort the sweep
        return SweepRow(config, None, f"{type(exc).__name__}: {exc}")


def sweep(configs, max_workers=1):
    """Limit-cycle performance for a list of configurations, in input order.

    Rows are independent; with ``max_workers > 1`` they are computed in a
    process pool while the output order stays deterministic.
    """
    configs = list(configs)
    if max_workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(_sweep_one, configs))
    return [_sweep_one(config) for config in configs]
