import numpy as np
import pytest

from helpers import paper_config, quantum_config
from ottoforge import controls as ct
from ottoforge import engine as en
from ottoforge import fpms
from ottoforge import linalg as la
from ottoforge.propagation import stroke_propagator


def degenerate_config(tau=4.0):
    return en.CycleConfig(
        omega_z_cold=1.0, omega_z_hot=1.0, tau_cycle=tau, beta_h=0.5,
        beta_c=0.5, alpha=0.05, substeps=128)


def test_transition_matrix_zero_duration_identity():
    cfg = degenerate_config(tau=0.0)
    stroke = en.make_strokes(cfg)[0]
    tm = fpms.transition_matrix(stroke)
    assert np.max(np.abs(tm.matrix - np.eye(2))) < 1e-12


def test_transition_matrix_columns_stochastic():
    for cfg in (paper_config(2.0, lam=0.005, mode="STA", substeps=256),
                quantum_config(1.0, lam=0.02, mode="QL", ql=100.0)):
        for stroke, res in zip(en.make_strokes(cfg), en.stroke_propagators(cfg)):
            tm = fpms.transition_matrix(stroke, propagator=res.propagator)
            assert np.all(tm.matrix >= 0.0) and np.all(tm.matrix <= 1.0)
            assert np.max(np.abs(tm.matrix.sum(axis=0) - 1.0)) < 1e-9


def test_transition_matrix_thermalizing_isochore():
    cfg = paper_config(40.0, substeps=128)
    hot = en.make_strokes(cfg)[1]
    tm = fpms.transition_matrix(hot)
    # Both columns collapse onto the hot Gibbs populations (ground, excited).
    z = 1.0 + np.exp(-cfg.beta_h * cfg.omega_hot)
    expected = np.array([1.0 / z, np.exp(-cfg.beta_h * cfg.omega_hot) / z])
    for col in range(2):
        assert np.max(np.abs(tm.matrix[:, col] - expected)) < 1e-8


def test_joint_distribution_normalized_and_markov_consistent():
    cfg = quantum_config(1.0, lam=0.02, mode="STA")
    joint = fpms.joint_distribution(cfg)
    assert abs(joint.total_probability - 1.0) <= 1e-9
    marginal = {0: 0.0, 1: 0.0}
    for rec in joint.records:
        marginal[rec.n] += rec.probability
    assert abs(marginal[0] - joint.initial_populations[0]) < 1e-12
    assert abs(marginal[1] - joint.initial_populations[1]) < 1e-12


def test_joint_distribution_adiabatic_thermal_limit():
    cfg = paper_config(40.0, mode="STA")
    joint = fpms.joint_distribution(cfg)
    mean_extracted = sum(r.probability * -(r.w01 + r.w23) for r in joint.records)
    w_max = en.closed_form_benchmarks(cfg).w_max
    assert abs(mean_extracted - w_max) / w_max < 1e-3


def test_joint_distribution_degenerate_cycle_zero_work():
    joint = fpms.joint_distribution(degenerate_config())
    weight_nonzero_work = sum(
        r.probability for r in joint.records if abs(r.w01) + abs(r.w23) > 0)
    assert weight_nonzero_work < 1e-12


def test_collapse_and_propagate_oracle():
    # Independent re-derivation: collapse onto each eigenstate, push the
    # projector through the stroke propagator, read populations.
    cfg = quantum_config(1.0, lam=0.02, mode="QL", ql=10.0, substeps=256)
    strokes = en.make_strokes(cfg)
    props = [r.propagator for r in en.stroke_propagators(cfg)]
    joint = fpms.joint_distribution(cfg)

    def collapse_matrix(stroke, prop):
        bases0, bases1 = fpms._endpoint_bases(stroke)
        out = np.empty((2, 2))
        for i, ket in enumerate(bases0):
            rho = np.outer(ket, ket.conj())
            evolved = la.devectorize(prop @ la.vectorize(rho))
            for j, ket_j in enumerate(bases1):
                out[j, i] = np.real(ket_j.conj() @ evolved @ ket_j)
        return out

    mats = [collapse_matrix(s, p) for s, p in zip(strokes[:3], props[:3])]
    p0 = joint.initial_populations
    for rec in joint.records:
        expected = (p0[rec.n] * mats[0][rec.m, rec.n] * mats[1][rec.s, rec.m]
                    * mats[2][rec.v, rec.s])
        assert abs(rec.probability - expected) <= 1e-10


def test_current_distribution_support_and_normalization():
    cfg = quantum_config(2.0, lam=0.02)
    joint = fpms.joint_distribution(cfg)
    for kind in ("power", "heat_rate"):
        dist = fpms.current_distribution(joint, kind)
        assert len(dist.values) <= 16
        assert abs(dist.probabilities.sum() - 1.0) <= 1e-9
        assert np.all(np.diff(dist.values) > 0)


def test_current_distribution_degenerate_single_point():
    joint = fpms.joint_distribution(degenerate_config())
    dist = fpms.current_distribution(joint, "power")
    significant = dist.values[dist.probabilities > 1e-12]
    assert list(significant) == [0.0]


def test_current_distribution_rejects_unknown_kind():
    joint = fpms.joint_distribution(degenerate_config())
    with pytest.raises(ValueError):
        fpms.current_distribution(joint, "entropy")


def test_moments_basics_and_independent_sum():
    cfg = quantum_config(2.0, lam=0.02, mode="STA")
    joint = fpms.joint_distribution(cfg)
    dist = fpms.current_distribution(joint, "power")
    assert fpms.moments(dist, 0) == pytest.approx(1.0, abs=1e-12)
    # Independent summation order: directly over the 16 trajectories.
    direct = sum(
        r.probability * (-(r.w01 + r.w23) / cfg.tau_cycle) for r in joint.records)
    assert fpms.moments(dist, 1) == pytest.approx(direct, abs=1e-12)


def test_fano_delta_distribution():
    delta = fpms.CurrentDistribution(
        values=np.array([2.0]), probabilities=np.array([1.0]), kind="power")
    report = fpms.fano_and_variance(delta, tau_cycle=3.0)
    assert report.variance_rate == 0.0 and report.fano == 0.0
    zero_mean = fpms.CurrentDistribution(
        values=np.array([-1.0, 1.0]), probabilities=np.array([0.5, 0.5]),
        kind="power")
    assert fpms.fano_and_variance(zero_mean, 3.0).fano is None


def test_measured_performance_degenerate():
    mp = fpms.measured_performance(degenerate_config())
    assert abs(mp.mean_power) < 1e-12
    assert mp.variance_rate_power < 1e-12


def test_measured_performance_matches_energetics_at_large_tau():
    cfg = paper_config(40.0, mode="STA")
    mp = fpms.measured_performance(cfg)
    perf = en.energetics(cfg)
    assert abs(mp.mean_power - perf.power) / perf.power < 1e-3
    assert mp.fano_power >= mp.fano_heat - 1e-9


def test_measured_power_below_expectation_for_fast_na():
    cfg = quantum_config(0.5)
    mp = fpms.measured_performance(cfg)
    perf = en.energetics(cfg)
    assert mp.mean_power < perf.power


def test_monitored_populations_normalized_and_thermal_limit():
    cfg = paper_config(40.0, mode="STA", substeps=256)
    plain = fpms.joint_distribution(cfg)
    monitored = fpms.joint_distribution(cfg, monitored=True)
    assert abs(sum(monitored.initial_populations) - 1.0) < 1e-9
    # Fully decohered regime: monitoring changes nothing.
    for a, b in zip(plain.initial_populations, monitored.initial_populations):
        assert abs(a - b) < 1e-6
