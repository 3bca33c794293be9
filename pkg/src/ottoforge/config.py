"""TOML run configuration for the command-line interface.

The file carries a versioned schema; unknown keys anywhere are rejected.
All energies are in units of the intrinsic tunnelling omega_x and
temperatures are given as T (beta = 1/T).  Control endpoints may be given
either as control amplitudes (omega_z_cold / omega_z_hot) or as total
splittings (omega_cold / omega_hot); exactly one of each pair.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .dissipators import NoiseSpec
from .engine import CycleConfig
from .propagation import DEFAULT_SUBSTEPS, ENHANCEMENTS, STROKE_KINDS

__all__ = ["ConfigError", "RunConfig", "load_config"]

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid or unparseable run configuration."""


def _require(table, section, key, types):
    if key not in table:
        raise ConfigError(f"[{section}] is missing required key {key!r}")
    return _typed(table, section, key, types, None)


def _typed(table, section, key, types, default):
    value = table.get(key, default)
    if value is default and key not in table:
        return default
    if types is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, types if isinstance(types, tuple) else (types,)) or isinstance(value, bool) and types is not bool:
        raise ConfigError(f"[{section}] key {key!r} has wrong type {type(value).__name__}")
    return value


def _float_list(table, section, key, required=True, default=None):
    if key not in table:
        if required:
            raise ConfigError(f"[{section}] is missing required key {key!r}")
        return default
    raw = table[key]
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"[{section}] key {key!r} must be a non-empty list")
    out = []
    for item in raw:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"[{section}] key {key!r} must contain numbers")
        out.append(float(item))
    return out


def _reject_unknown(table, section, allowed):
    unknown = set(table) - set(allowed)
    if unknown:
        raise ConfigError(
            f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")


@dataclass(frozen=True)
class EngineSection:
    omega_x: float
    omega_z_cold: float
    omega_z_hot: float
    t_cold: float
    t_hot: float
    alpha: float
    omega_cutoff: float | None
    substeps: int
    lambda_x: float

    _KEYS = (
        "omega_x", "omega_z_cold", "omega_z_hot", "omega_cold", "omega_hot",
        "t_cold", "t_hot", "alpha", "omega_cutoff", "substeps", "lambda_x",
    )

    @classmethod
    def from_table(cls, table):
        _reject_unknown(table, "engine", cls._KEYS)
        omega_x = _typed(table, "engine", "omega_x", float, 1.0)
        omega_z_cold = _control_amplitude(table, "cold", omega_x)
        omega_z_hot = _control_amplitude(table, "hot", omega_x)
        t_cold = _require(table, "engine", "t_cold", float)
        t_hot = _require(table, "engine", "t_hot", float)
        if not 0 < t_cold < t_hot:
            raise ConfigError("need 0 < t_cold < t_hot")
        return cls(
            omega_x=omega_x,
            omega_z_cold=omega_z_cold,
            omega_z_hot=omega_z_hot,
            t_cold=t_cold,
            t_hot=t_hot,
            alpha=_require(table, "engine", "alpha", float),
            omega_cutoff=_typed(table, "engine", "omega_cutoff", float, None),
            substeps=_typed(table, "engine", "substeps", int, DEFAULT_SUBSTEPS),
            lambda_x=_typed(table, "engine", "lambda_x", float, 0.0),
        )


def _control_amplitude(table, side, omega_x):
    amp_key, split_key = f"omega_z_{side}", f"omega_{side}"
    has_amp, has_split = amp_key in table, split_key in table
    if has_amp == has_split:
        raise ConfigError(
            f"[engine] needs exactly one of {amp_key!r} (control amplitude) "
            f"and {split_key!r} (total splitting)")
    if has_amp:
        return _typed(table, "engine", amp_key, float, None)
    splitting = _typed(table, "engine", split_key, float, None)
    if splitting < omega_x:
        raise ConfigError(f"[engine] {split_key!r} must be >= omega_x")
    return math.sqrt(splitting**2 - omega_x**2)


@dataclass(frozen=True)
class SweepSection:
    taus: tuple
    lambdas: tuple
    lambda_qls: tuple
    modes: tuple

    _KEYS = ("tau", "lambda", "lambda_ql", "modes")

    @classmethod
    def from_table(cls, table):
        _reject_unknown(table, "sweep", cls._KEYS)
        modes = table.get("modes")
        if (not isinstance(modes, list) or not modes
                or any(m not in ENHANCEMENTS for m in modes)):
            raise ConfigError(
                f"[sweep] key 'modes' must be a non-empty list drawn from {ENHANCEMENTS}")
        lambda_qls = _float_list(table, "sweep", "lambda_ql",
                                 required="QL" in modes, default=[0.0])
        return cls(
            taus=tuple(_float_list(table, "sweep", "tau")),
            lambdas=tuple(_float_list(table, "sweep", "lambda")),
            lambda_qls=tuple(lambda_qls),
            modes=tuple(modes),
        )


@dataclass(frozen=True)
class FpmsSection:
    monitored: bool = False
    distributions_out: str | None = None

    _KEYS = ("monitored", "distributions_out")

    @classmethod
    def from_table(cls, table):
        _reject_unknown(table, "fpms", cls._KEYS)
        return cls(
            monitored=_typed(table, "fpms", "monitored", bool, False),
            distributions_out=_typed(table, "fpms", "distributions_out", str, None),
        )


@dataclass(frozen=True)
class OracleSection:
    stroke: str
    tau: float
    lam: float
    lambda_ql: float
    mode: str
    n_trajectories: int
    steps: int
    seed: int
    initial_state: str

    _KEYS = ("stroke", "tau", "lambda", "lambda_ql", "mode", "n_trajectories",
             "steps", "seed", "initial_state")

    @classmethod
    def from_table(cls, table):
        _reject_unknown(table, "oracle", cls._KEYS)
        stroke = _require(table, "oracle", "stroke", str)
        if stroke not in STROKE_KINDS:
            raise ConfigError(f"[oracle] stroke must be one of {STROKE_KINDS}")
        mode = _typed(table, "oracle", "mode", str, "NA")
        if mode not in ENHANCEMENTS:
            raise ConfigError(f"[oracle] mode must be one of {ENHANCEMENTS}")
        initial = _typed(table, "oracle", "initial_state", str, "ground")
        if initial not in ("ground", "superposition"):
            raise ConfigError("[oracle] initial_state must be 'ground' or 'superposition'")
        return cls(
            stroke=stroke,
            tau=_require(table, "oracle", "tau", float),
            lam=_typed(table, "oracle", "lambda", float, 0.0),
            lambda_ql=_typed(table, "oracle", "lambda_ql", float, 0.0),
            mode=mode,
            n_trajectories=_typed(table, "oracle", "n_trajectories", int, 10_000),
            steps=_typed(table, "oracle", "steps", int, 4096),
            seed=_typed(table, "oracle", "seed", int, 20_250_809),
            initial_state=initial,
        )


@dataclass(frozen=True)
class LimitCycleSection:
    tau: float
    lam: float
    lambda_ql: float
    mode: str

    _KEYS = ("tau", "lambda", "lambda_ql", "mode")

    @classmethod
    def from_table(cls, table):
        _reject_unknown(table, "limit_cycle", cls._KEYS)
        mode = _typed(table, "limit_cycle", "mode", str, "NA")
        if mode not in ENHANCEMENTS:
            raise ConfigError(f"[limit_cycle] mode must be one of {ENHANCEMENTS}")
        return cls(
            tau=_require(table, "limit_cycle", "tau", float),
            lam=_typed(table, "limit_cycle", "lambda", float, 0.0),
            lambda_ql=_typed(table, "limit_cycle", "lambda_ql", float, 0.0),
            mode=mode,
        )


@dataclass(frozen=True)
class RunConfig:
    engine: EngineSection
    sweep: SweepSection | None = None
    fpms: FpmsSection = field(default_factory=FpmsSection)
    oracle: OracleSection | None = None
    limit_cycle: LimitCycleSection | None = None

    def cycle_config(self, mode, tau, lam, lambda_ql=0.0):
        eng = self.engine
        noise = NoiseSpec(
            lambda_z=lam,
            lambda_y=lam,
            lambda_x=eng.lambda_x,
            ql_strength=lambda_ql if mode == "QL" else 0.0,
        )
        return CycleConfig(
            omega_z_cold=eng.omega_z_cold,
            omega_z_hot=eng.omega_z_hot,
            tau_cycle=tau,
            beta_h=1.0 / eng.t_hot,
            beta_c=1.0 / eng.t_cold,
            alpha=eng.alpha,
            omega_x=eng.omega_x,
            omega_cutoff=eng.omega_cutoff,
            noise=noise,
            enhancement=mode,
            substeps=eng.substeps,
        )

    def grid(self):
        """Deterministic sweep order: mode, lambda, lambda_ql (QL only), tau."""
        if self.sweep is None:
            raise ConfigError("configuration has no [sweep] section")
        points = []
        for mode in self.sweep.modes:
            qls = self.sweep.lambda_qls if mode == "QL" else (0.0,)
            for lam in self.sweep.lambdas:
                for ql in qls:
                    for tau in self.sweep.taus:
                        points.append((mode, tau, lam, ql))
        return points


def load_config(path):
    """Parse and validate a TOML run configuration."""
    try:
        with open(path, "rb") as fh:
            raw = _toml.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc

    _reject_unknown(
        raw, "root",
        ("schema_version", "engine", "sweep", "fpms", "oracle", "limit_cycle"))
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(
            f"schema_version must be {SCHEMA_VERSION}, got {version!r}")
    if "engine" not in raw:
        raise ConfigError("configuration needs an [engine] section")
    return RunConfig(
        engine=EngineSection.from_table(raw["engine"]),
        sweep=SweepSection.from_table(raw["sweep"]) if "sweep" in raw else None,
        fpms=FpmsSection.from_table(raw.get("fpms", {})),
        oracle=OracleSection.from_table(raw["oracle"]) if "oracle" in raw else None,
        limit_cycle=(LimitCycleSection.from_table(raw["limit_cycle"])
                     if "limit_cycle" in raw else None),
    )
