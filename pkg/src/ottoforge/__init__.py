"""Finite-time noisy quantum Otto engine simulator.

Noise-averaged GKLS dynamics of a driven qubit engine with control-noise
dissipators, counterdiabatic (STA) and quantum-lubrication (QL)
enhancements, limit-cycle energetics, four-point measurement statistics,
thermodynamic uncertainty diagnostics, and a stochastic-trajectory oracle
for the noise-averaged dissipator.  Units: hbar = k_B = 1, energies in
units of the intrinsic tunnelling omega_x.
"""
from .controls import ControlField, RampSpec
from .diagnostics import TurReport, classify_regime, entropy_production_rate, tur_check
from .dissipators import BathParams, NoiseSpec
from .engine import (
    CycleConfig,
    CyclePerformance,
    NoLimitCycleError,
    NonUniqueLimitCycleError,
    closed_form_benchmarks,
    cycle_propagator,
    energetics,
    limit_cycle_state,
    sweep,
)
from .fpms import (
    CurrentDistribution,
    TrajectoryDistribution,
    current_distribution,
    fano_and_variance,
    joint_distribution,
    measured_performance,
    moments,
    transition_matrix,
)
from .oracle import TrajectoryRun, noise_average, sample_trajectory
from .propagation import (
    IntegrationAccuracyError,
    PropagatorResult,
    StrokeConfig,
    evolve_state,
    liouvillian,
    stroke_propagator,
)

__version__ = "0.1.0"

__all__ = [
    "BathParams",
    "ControlField",
    "CurrentDistribution",
    "CycleConfig",
    "CyclePerformance",
    "IntegrationAccuracyError",
    "NoLimitCycleError",
    "NoiseSpec",
    "NonUniqueLimitCycleError",
    "PropagatorResult",
    "RampSpec",
    "StrokeConfig",
    "TrajectoryDistribution",
    "TrajectoryRun",
    "TurReport",
    "classify_regime",
    "closed_form_benchmarks",
    "current_distribution",
    "cycle_propagator",
    "energetics",
    "entropy_production_rate",
    "evolve_state",
    "fano_and_variance",
    "joint_distribution",
    "limit_cycle_state",
    "liouvillian",
    "measured_performance",
    "moments",
    "noise_average",
    "sample_trajectory",
    "stroke_propagator",
    "sweep",
    "transition_matrix",
    "tur_check",
]
