"""Command-line interface: sweeps, 4PMS statistics, oracle check, limit cycle.

Usage: ottoforge sweep|fpms|oracle|limit-cycle --config <path> --out <path>
[--threads N] [--seed S].  Exit codes: 0 success, 1 runtime failure (oracle
mismatch, no limit cycle, all rows failed), 2 configuration error.

CSV output is RFC-4180 (CRLF line endings) with floats at 17 significant
digits, so identical configurations reproduce byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import diagnostics, engine, fpms
from .config import ConfigError, load_config
from .controls import ControlField, RampSpec, eigenstates, mixing_angle
from .dissipators import NoiseSpec
from .oracle import noise_average
from .propagation import StrokeConfig

__all__ = ["main"]

SWEEP_COLUMNS = (
    "mode", "tau", "lambda", "lambda_ql", "status", "w01", "q_h", "w23",
    "q_c", "power", "efficiency", "entropy_rate", "regime", "eta_otto",
    "eta_carnot",
)
FPMS_COLUMNS = (
    "mode", "tau", "lambda", "lambda_ql", "status", "mean_power_4pms",
    "mean_qh_4pms", "var_power", "fano_power", "fano_qh", "tur_lhs",
    "tur_rhs", "tur_satisfied", "regime",
)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if np.isnan(value):
            return ""
        return format(value, ".17g")
    return str(value)


def _write_csv(path, columns, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _matrix_payload(mat):
    return {
        "re": np.real(mat).tolist(),
        "im": np.imag(mat).tolist(),
    }


def _threads(args):
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("OTTOFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"OTTOFORGE_THREADS must be an integer: {env!r}") from exc
    return 1


def _sweep_point(point_and_run):
    (mode, tau, lam, ql), run = point_and_run
    base = {"mode": mode, "tau": tau, "lambda": lam, "lambda_ql": ql}
    try:
        config = run.cycle_config(mode, tau, lam, ql)
        perf = engine.energetics(config)
        bench = engine.closed_form_benchmarks(config)
    except Exception as exc:
        base["status"] = f"error: {type(exc).__name__}: {exc}"
        return base
    base.update(
        status="ok", w01=perf.w01, q_h=perf.q_h, w23=perf.w23, q_c=perf.q_c,
        power=perf.power, efficiency=perf.efficiency,
        entropy_rate=perf.entropy_rate, regime=perf.regime,
        eta_otto=bench.eta_otto, eta_carnot=bench.eta_carnot)
    return base


def _fpms_point(point_and_run):
    (mode, tau, lam, ql), run = point_and_run
    base = {"mode": mode, "tau": tau, "lambda": lam, "lambda_ql": ql}
    try:
        config = run.cycle_config(mode, tau, lam, ql)
        perf = engine.energetics(config)
        bench = engine.closed_form_benchmarks(config)
        measured = fpms.measured_performance(config, monitored=run.fpms.monitored)
        report = diagnostics.tur_check(
            power=perf.power, efficiency=perf.efficiency,
            entropy_rate=perf.entropy_rate, eta_carnot=bench.eta_carnot,
            beta_c=config.beta_c, fano_power=measured.fano_power)
    except Exception as exc:
        base["status"] = f"error: {type(exc).__name__}: {exc}"
        return base
    base.update(
        status="ok", mean_power_4pms=measured.mean_power,
        mean_qh_4pms=measured.mean_heat_rate,
        var_power=measured.variance_rate_power,
        fano_power=measured.fano_power, fano_qh=measured.fano_heat,
        tur_lhs=report.lhs if report.applicable else None,
        tur_rhs=report.rhs_entropy_form if report.applicable else None,
        tur_satisfied=report.satisfied if report.applicable else None,
        regime=perf.regime)
    base["_distributions"] = {
        "power": {"support": measured.power_distribution.values.tolist(),
                  "probability": measured.power_distribution.probabilities.tolist()},
        "heat_rate": {"support": measured.heat_distribution.values.tolist(),
                      "probability": measured.heat_distribution.probabilities.tolist()},
    }
    return base


def _run_grid(run, worker, threads):
    points = [(point, run) for point in run.grid()]
    if threads > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, points))
    return [worker(p) for p in points]


def cmd_sweep(run, out_path, threads):
    rows = _run_grid(run, _sweep_point, threads)
    _write_csv(out_path, SWEEP_COLUMNS, rows)
    return 0 if any(r["status"] == "ok" for r in rows) else 1


def cmd_fpms(run, out_path, threads):
    rows = _run_grid(run, _fpms_point, threads)
    _write_csv(out_path, FPMS_COLUMNS, rows)
    if run.fpms.distributions_out:
        payload = [
            {
                "mode": r["mode"], "tau": r["tau"], "lambda": r["lambda"],
                "lambda_ql": r["lambda_ql"], "status": r["status"],
                **r.get("_distributions", {}),
            }
            for r in rows
        ]
        _write_json(run.fpms.distributions_out, payload)
    return 0 if any(r["status"] == "ok" for r in rows) else 1


def _oracle_stroke(run, seed_override):
    section = run.oracle
    if section is None:
        raise ConfigError("configuration has no [oracle] section")
    config = run.cycle_config(section.mode, section.tau, section.lam,
                              section.lambda_ql)
    strokes = dict(zip(
        ("compression", "hot_isochore", "expansion", "cold_isochore"),
        engine.make_strokes(config)))
    stroke = strokes[section.stroke]
    if stroke.bath is not None:
        # Trajectories cover bathless dynamics only; drop the bath.
        stroke = StrokeConfig(
            kind=stroke.kind, duration=stroke.duration, field=stroke.field,
            bath=None, noise=stroke.noise, enhancement=stroke.enhancement)
    seed = seed_override if seed_override is not None else section.seed
    return config, stroke, seed


def _oracle_initial_state(stroke, which):
    theta, _ = mixing_angle(stroke.field.omega_x, float(stroke.field.omega_z(0.0)))
    ket_e, ket_g = eigenstates(theta)
    if which == "ground":
        ket = ket_g
    else:
        ket = (ket_e + ket_g) / np.sqrt(2.0)
    return np.outer(ket, ket.conj())


def cmd_oracle(run, out_path, seed_override):
    section = run.oracle
    _, stroke, seed = _oracle_stroke(run, seed_override)
    rho0 = _oracle_initial_state(stroke, section.initial_state)
    dt = stroke.duration / section.steps
    base = noise_average(stroke, section.n_trajectories, dt, seed, rho0=rho0)
    half = noise_average(stroke, section.n_trajectories, dt / 2.0, seed + 1,
                         rho0=rho0)
    # First-order discretization allowance C*dt estimated from the half-step
    # run: its residual bounds C*dt/2 once sampling noise is subtracted out.
    allowance = 2.0 * half.comparison
    threshold = 3.0 * base.std_error_scalar + allowance
    passed = bool(base.comparison <= threshold)
    payload = {
        "schema_version": 1,
        "stroke": section.stroke,
        "mode": section.mode,
        "tau_cycle": section.tau,
        "lambda": section.lam,
        "lambda_ql": section.lambda_ql,
        "initial_state": section.initial_state,
        "n_trajectories": base.n_trajectories,
        "dt": base.dt,
        "seed": seed,
        "comparison": base.comparison,
        "std_error_scalar": base.std_error_scalar,
        "std_error": np.asarray(base.std_error).tolist(),
        "halved_dt_comparison": half.comparison,
        "allowance": allowance,
        "threshold": threshold,
        "passed": passed,
        "mean_state": _matrix_payload(base.mean_state),
        "master_state": _matrix_payload(base.master_state),
    }
    _write_json(out_path, payload)
    print(f"oracle comparison {base.comparison:.3e} vs threshold "
          f"{threshold:.3e} (3 sigma = {3 * base.std_error_scalar:.3e}, "
          f"allowance = {allowance:.3e}): {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def cmd_limit_cycle(run, out_path):
    section = run.limit_cycle
    if section is None:
        raise ConfigError("configuration has no [limit_cycle] section")
    config = run.cycle_config(section.mode, section.tau, section.lam,
                              section.lambda_ql)
    info = engine.limit_cycle_analysis(config)
    perf = engine.energetics(config)
    thermal = engine.transient_cycle_count(
        config, _thermal_start(config), tol=1e-8)
    collapsed = engine.transient_cycle_count(
        config, _collapsed_start(config), tol=1e-8)
    balance = perf.w01 + perf.q_h + perf.w23 + perf.q_c
    payload = {
        "schema_version": 1,
        "mode": section.mode,
        "tau_cycle": section.tau,
        "lambda": section.lam,
        "lambda_ql": section.lambda_ql,
        "eigenvalue": {"re": info.eigenvalue.real, "im": info.eigenvalue.imag},
        "fixed_point_residual": info.residual,
        "second_eigenvalue_modulus": info.second_eigenvalue_modulus,
        "vertex_states": [_matrix_payload(s) for s in perf.vertex_states],
        "vertex_energies": list(perf.vertex_energies),
        "energy_balance": balance,
        "transient_cycles": {"thermal": thermal, "collapsed": collapsed},
        "performance": {
            "w01": perf.w01, "q_h": perf.q_h, "w23": perf.w23, "q_c": perf.q_c,
            "power": perf.power, "efficiency": perf.efficiency,
            "entropy_rate": perf.entropy_rate, "regime": perf.regime,
        },
    }
    _write_json(out_path, payload)
    return 0


def _thermal_start(config):
    from .controls import hamiltonian
    from .linalg import gibbs_state

    return gibbs_state(hamiltonian(config.omega_x, config.omega_z_cold),
                       config.beta_c)


def _collapsed_start(config):
    theta, _ = mixing_angle(config.omega_x, config.omega_z_cold)
    _, ket_g = eigenstates(theta)
    return np.outer(ket_g, ket_g.conj())


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ottoforge",
        description=(
            "Finite-time noisy quantum Otto engine simulator.  All inputs "
            "are in units of the intrinsic tunnelling omega_x (hbar = k_B "
            "= 1); temperatures are given as T, not beta."),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "limit-cycle performance over a parameter grid (CSV)"),
        ("fpms", "four-point measurement statistics and TUR columns (CSV)"),
        ("oracle", "trajectory-average vs master-equation self check (JSON)"),
        ("limit-cycle", "vertex states, energies and convergence info (JSON)"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="TOML run configuration")
        cmd.add_argument("--out", required=True, help="output file path")
        cmd.add_argument("--threads", type=int, default=None,
                         help="worker processes (default: OTTOFORGE_THREADS or 1)")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the oracle random seed")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        run = load_config(args.config)
        threads = _threads(args)
        if args.command == "sweep":
            return cmd_sweep(run, args.out, threads)
        if args.command == "fpms":
            return cmd_fpms(run, args.out, threads)
        if args.command == "oracle":
            return cmd_oracle(run, args.out, args.seed)
        return cmd_limit_cycle(run, args.out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
