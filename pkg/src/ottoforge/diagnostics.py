"""Entropy production, thermodynamic uncertainty bounds, regime labels.

Sign convention: heats are energy flowing *into* the system, so the
limit-cycle entropy production rate is (-beta_H Q_H - beta_C Q_C) / tau,
which the second law keeps non-negative.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelViolationError",
    "TurReport",
    "entropy_production_rate",
    "tur_check",
    "classify_regime",
]

SECOND_LAW_TOL = -1e-9


class ModelViolationError(RuntimeError):
    """Raised when a quantity violates a model guarantee beyond tolerance."""


def entropy_production_rate(q_h, q_c, beta_h, beta_c, tau_cycle):
    """Limit-cycle entropy production rate from the heats of one cycle.

    The von Neumann entropy change per cycle vanishes in the limit cycle, so
    only the bath entropy fluxes contribute.
    """
    if tau_cycle <= 0:
        raise ValueError("tau_cycle must be positive")
    rate = (-beta_h * q_h - beta_c * q_c) / tau_cycle
    if rate < SECOND_LAW_TOL:
        raise ModelViolationError(
            f"entropy production rate {rate:.3e} below second-law tolerance")
    return rate


def classify_regime(power, q_h, q_c, atol=1e-12):
    """Classify a cycle as engine, heat_pump or dissipator.

    Engine: net power output with heat drawn from the hot bath.  Heat pump
    (inverted): work consumed while heat is transported hot to cold.
    Everything else dissipates.  Currents within ``atol`` of zero count as
    zero so numerically degenerate cycles land in "dissipator".
    """
    power = 0.0 if abs(power) < atol else power
    q_h = 0.0 if abs(q_h) < atol else q_h
    q_c = 0.0 if abs(q_c) < atol else q_c
    if power > 0 and q_h > 0:
        return "engine"
    if power < 0 and q_h > 0 and q_c < 0:
        return "heat_pump"
    return "dissipator"


@dataclass(frozen=True)
class TurReport:
    """Evaluation of Delta_P^2 / P^2 >= 2 / Sigma_dot in both algebraic forms.

    ``lhs`` is the tau-scaled power Fano factor from the measured power
    distribution; the two right-hand sides are 2 / Sigma_dot and the
    efficiency form 2 eta / (beta_C P (eta_C - eta)), identical in the limit
    cycle via Sigma_dot = beta_C P (eta_C - eta) / eta.  ``applicable`` is
    false outside the engine regime, where the bound is not evaluated.
    """

    applicable: bool
    lhs: float = np.nan
    rhs_entropy_form: float = np.nan
    rhs_efficiency_form: float = np.nan
    satisfied: bool | None = None
    slack: float = np.nan


def tur_check(power, efficiency, entropy_rate, eta_carnot, beta_c, fano_power,
              slack_tol=-1e-9):
    """Check the power-fluctuation uncertainty bound for one cycle.

    Mean power, efficiency and entropy production come from the limit-cycle
    energetics; the fluctuation (Fano factor) comes from the measured power
    distribution.
    """
    engine_regime = (
        power > 0
        and efficiency is not None
        and 0.0 < efficiency < eta_carnot
        and entropy_rate > 0
    )
    if not engine_regime:
        return TurReport(applicable=False)
    rhs_entropy = 2.0 / entropy_rate
    rhs_efficiency = 2.0 * efficiency / (beta_c * power * (eta_carnot - efficiency))
    slack = fano_power - rhs_entropy
    return TurReport(
        applicable=True,
        lhs=fano_power,
        rhs_entropy_form=rhs_entropy,
        rhs_efficiency_form=rhs_efficiency,
        satisfied=bool(slack >= slack_tol),
        slack=slack,
    )
