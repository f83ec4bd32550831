"""Acceptance gate: one test per release criterion, one verdict line each.

Each test prints `ACCEPTANCE PASS|FAIL <criterion>: <detail>` and then
asserts, so the verdicts survive in the captured output of failing tests
and the pytest status line mirrors them for passing ones.

Known state: the four criteria tied to the coupled preset (fig2g,
lambda = 0.2) fail.  The multiplicative secular R-terms of the coupled
drift grow linearly in t and drive the mean field across the X = 0
coupling singularity and out of the bosonic-truncation regime; the run
diverges near t ~ 120 at dt = 0.01 (and still diverges, later, at much
smaller dt), so no 1e4-tau steady state exists to measure.  The criteria
are kept exactly as stated rather than weakened.
"""

import dataclasses
import math
import time

import numpy as np
import pytest
from scipy.spatial import cKDTree

from spinsync import (FTermMode, MeanFieldState, ModelParams,
                      assemble_drift_matrix, integrate_mean_field,
                      mean_field_drift, propagate_covariance,
                      vacuum_covariance)
from spinsync import _kernels
from spinsync.metrics import time_average
from spinsync.model import derive_constants, pack_params
from spinsync.scenario import preset_config, run_scenario, run_thermal_sweep

SEED = 987654321


def _report(name, ok, detail):
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _preset_covariance_run(name, dt=None):
    cfg = preset_config(name)
    if dt is not None:
        cfg = dataclasses.replace(cfg, dt=dt)
    return cfg, propagate_covariance(
        cfg.initial_state(), cfg.initial_covariance(), cfg.params(),
        cfg.horizon, dt=cfg.dt, f_mode=FTermMode.parse(cfg.f_mode),
        output_stride=cfg.output_stride, raise_on_failure=False)


@pytest.fixture(scope="module")
def fig2g_run():
    return _preset_covariance_run("fig2g")


@pytest.fixture(scope="module")
def fig2a_meanfield():
    cfg = preset_config("fig2a")
    return integrate_mean_field(MeanFieldState(0j, 0j), cfg.params(),
                                cfg.horizon, dt=cfg.dt,
                                output_stride=cfg.output_stride,
                                raise_on_failure=False)


def _sq_series(traj):
    C = traj.C
    bracket = (C[:, 0, 0] + C[:, 1, 1] + C[:, 2, 2] + C[:, 3, 3]
               - 2.0 * C[:, 0, 2] - 2.0 * C[:, 1, 3])
    with np.errstate(divide="ignore"):
        return np.where(bracket > 0.0, 2.0 / bracket, np.nan)


def _unwrapped_phase_diff(traj, mask):
    ph1 = np.unwrap(np.arctan2(traj.beta1[mask].imag, traj.beta1[mask].real))
    ph2 = np.unwrap(np.arctan2(traj.beta2[mask].imag, traj.beta2[mask].real))
    return ph2 - ph1


def test_complex_quadrature_oracle():
    """100 frozen coefficient tuples: quadrature drift == complex drift."""
    rng = np.random.default_rng(SEED)
    n, dt, t1 = 100, 1e-3, 10.0
    E = (rng.standard_normal((n, 8)) + 1j * rng.standard_normal((n, 8))) * 0.1
    E[:, 0] -= 0.2  # mild contraction so neither image outruns the other
    E[:, 6] -= 0.2
    M = np.stack([assemble_drift_matrix(*e) for e in E])
    y = rng.standard_normal((n, 4))
    b = np.stack([(y[:, 0] + 1j * y[:, 1]) / math.sqrt(2.0),
                  (y[:, 2] + 1j * y[:, 3]) / math.sqrt(2.0)], axis=1)

    def fy(y):
        return np.einsum("nij,nj->ni", M, y)

    def fb(b):
        b1, b2 = b[:, 0], b[:, 1]
        db1 = E[:, 0] * b1 + E[:, 1] * b1.conj() + E[:, 2] * b2 + E[:, 3] * b2.conj()
        db2 = E[:, 4] * b1 + E[:, 5] * b1.conj() + E[:, 6] * b2 + E[:, 7] * b2.conj()
        return np.stack([db1, db2], axis=1)

    t0 = time.perf_counter()
    for _ in range(int(round(t1 / dt))):
        k1 = fy(y); k2 = fy(y + 0.5 * dt * k1)
        k3 = fy(y + 0.5 * dt * k2); k4 = fy(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        j1 = fb(b); j2 = fb(b + 0.5 * dt * j1)
        j3 = fb(b + 0.5 * dt * j2); j4 = fb(b + dt * j3)
        b = b + (dt / 6.0) * (j1 + 2 * j2 + 2 * j3 + j4)
    elapsed = time.perf_counter() - t0
    mapped = math.sqrt(2.0) * np.stack(
        [b[:, 0].real, b[:, 0].imag, b[:, 1].real, b[:, 1].imag], axis=1)
    dev = float(np.max(np.abs(y - mapped)))
    _report("complex_quadrature_oracle", dev < 1e-8 and elapsed < 10.0,
            f"max deviation {dev:.2e} over t in [0,10], {elapsed:.1f}s")


def test_symmetry_synchronization():
    params = ModelParams(g1=1.5, g2=1.5, omega1=1.0, omega2=1.0, N1=5, N2=5)
    t0 = time.perf_counter()
    traj = integrate_mean_field(MeanFieldState(3.0 + 0j, 3.0 + 0j), params,
                                horizon=1000.0, dt=0.01,
                                raise_on_failure=False)
    elapsed = time.perf_counter() - t0
    dev = float(np.max(np.abs(traj.beta1 - traj.beta2)))
    ok = traj.status == _kernels.OK and dev < 1e-9 and elapsed < 5.0
    _report("symmetry_synchronization",
            ok, f"max |beta1-beta2| = {dev:.2e} over 1e3 tau, {elapsed:.1f}s")


def test_lambda0_reduction():
    rng = np.random.default_rng(SEED)
    params = ModelParams(lam=0.0)
    pv = pack_params(params, derive_constants(params))
    t = rng.uniform(0.0, 100.0, 10000)
    re = rng.uniform(-1.0, 1.0, (10000, 4))
    worst = 0.0
    t0 = time.perf_counter()
    for k in range(10000):
        b1 = complex(re[k, 0], re[k, 1])
        b2 = complex(re[k, 2], re[k, 3])
        full = _kernels.mean_drift(t[k], b1, b2, pv, _kernels.F_MEANFIELD, 0)
        red = _kernels.mean_drift_lambda0(t[k], b1, b2, pv,
                                          _kernels.F_MEANFIELD)
        worst = max(worst, abs(full[0] - red[0]), abs(full[1] - red[1]))
    elapsed = time.perf_counter() - t0
    _report("lambda0_reduction", worst < 1e-12 and elapsed < 1.0,
            f"max deviation {worst:.2e} at 1e4 points, {elapsed:.2f}s")


def test_fixed_point_check():
    params = ModelParams()  # fig2a constants
    d1, d2 = mean_field_drift(0.0, MeanFieldState(0j, 0j), params,
                              f_mode=FTermMode.NEGLECT)
    exact_zero = d1 == 0j and d2 == 0j
    d1, d2 = mean_field_drift(0.0, MeanFieldState(0j, 0j), params,
                              f_mode=FTermMode.MEANFIELD)
    X = -(params.g1 * math.sqrt(5.0) + params.g2 * math.sqrt(5.0))
    dev = max(abs(d1 - (-13j * params.g1 * params.sigma_z_mean / X)),
              abs(d2 - (-13j * params.g2 * params.sigma_z_mean / X)))
    _report("fixed_point_check", exact_zero and dev < 1e-12,
            f"neglect drift exactly zero: {exact_zero}, drive deviation {dev:.2e}")


def test_psd_preservation_fig2g(fig2g_run):
    cfg, traj = fig2g_run
    reached = traj.status == _kernels.OK and traj.t[-1] >= cfg.horizon - cfg.dt
    ok = reached and traj.min_eigenvalue >= -1e-9
    if reached:
        detail = f"min eigenvalue {traj.min_eigenvalue:.2e} over 1e4 tau"
    else:
        detail = (f"run did not reach 1e4 tau: status {traj.status} "
                  f"(non-finite state) at t = {traj.fail_t:.1f}; "
                  "secular coupled drift diverges")
    _report("psd_preservation_fig2g", ok, detail)


def test_fig2a_limit_cycle_overlap(fig2a_meanfield):
    traj = fig2a_meanfield
    assert traj.status == _kernels.OK
    m = traj.t >= 0.9 * traj.t[-1]
    s = math.sqrt(2.0)
    o1 = np.c_[s * traj.beta1[m].real, s * traj.beta1[m].imag]
    o2 = np.c_[s * traj.beta2[m].real, s * traj.beta2[m].imag]
    h = max(cKDTree(o2).query(o1)[0].max(), cKDTree(o1).query(o2)[0].max())
    radius = 0.5 * (np.hypot(*o1.T).mean() + np.hypot(*o2.T).mean())
    ratio = h / radius
    _report("fig2a_limit_cycle_overlap", ratio < 0.05,
            f"orbit distance / mean radius = {ratio:.4f} (limit 0.05)")


def test_fig2d_phase_lock_amplitude_split():
    cfg = preset_config("fig2d")
    traj = integrate_mean_field(MeanFieldState(0j, 0j), cfg.params(),
                                cfg.horizon, dt=cfg.dt,
                                output_stride=cfg.output_stride,
                                raise_on_failure=False)
    assert traj.status == _kernels.OK
    m = traj.t >= 0.9 * traj.t[-1]
    d = _unwrapped_phase_diff(traj, m)
    drift = float(d.max() - d.min())
    a1 = math.sqrt(float((np.abs(traj.beta1[m]) ** 2).mean()))
    a2 = math.sqrt(float((np.abs(traj.beta2[m]) ** 2).mean()))
    split = abs(a1 / a2 - 1.0)
    _report("fig2d_phase_lock_amplitude_split",
            drift < 0.1 and split > 0.05,
            f"phase drift {drift:.2e} rad, amplitude ratio {a1 / a2:.3f}")


def test_fig2g_phase_offset_and_sq(fig2g_run):
    cfg, traj = fig2g_run
    if traj.status != _kernels.OK:
        _report("fig2g_phase_offset_and_sq", False,
                f"no steady state: run diverged at t = {traj.fail_t:.1f} "
                "(secular coupled drift); phase offset and S_q^phi "
                "unmeasurable")
    m = traj.t >= 0.8 * traj.t[-1]
    d = _unwrapped_phase_diff(traj, m)
    phi = float(np.angle(np.exp(1j * d).mean()))
    C = traj.C[m]
    sphi, cphi = math.sin(phi), math.cos(phi)
    bracket = (C[:, 0, 0] + C[:, 1, 1] + C[:, 2, 2] + C[:, 3, 3]
               + 2 * sphi * C[:, 1, 2] - 2 * sphi * C[:, 0, 3]
               - 2 * cphi * C[:, 0, 2] - 2 * cphi * C[:, 1, 3])
    sq_phi = float(np.mean(2.0 / bracket))
    ok = 0.9 <= phi <= 1.2 and sq_phi >= 0.95 and abs(sq_phi - 1.0) <= 0.05
    _report("fig2g_phase_offset_and_sq", ok,
            f"phi = {phi:.3f} (band [0.9, 1.2]), steady S_q^phi = {sq_phi:.3f}")


def test_thermal_sweep_monotonic(tmp_path):
    cfg = preset_config("fig3b")
    path = run_thermal_sweep(cfg, [0.0, 0.5, 1.0, 2.0, 4.0], tmp_path / "sw")
    rows = [ln.split(",") for ln in path.read_text().splitlines()[1:]]
    vals = [float(v) for _, v in rows]
    finite = all(math.isfinite(v) for v in vals)
    decreasing = finite and all(a > b for a, b in zip(vals, vals[1:]))
    _report("thermal_sweep_monotonic", decreasing,
            f"S_q_bar over n_m {{0,0.5,1,2,4}} = "
            f"{['%.4g' % v for v in vals]}"
            + ("" if finite else " (sweep points diverged; no steady state)"))


def test_integrator_convergence():
    sqs = {}
    for dt in (0.02, 0.01):
        cfg, traj = _preset_covariance_run("fig2g", dt=dt)
        if traj.status != _kernels.OK:
            _report("integrator_convergence", False,
                    f"dt = {dt}: run diverged at t = {traj.fail_t:.1f}; "
                    "no steady average to compare")
        sqs[dt] = time_average(traj.t, _sq_series(traj), cfg.avg_window)
    diff = abs(sqs[0.02] - sqs[0.01])
    _report("integrator_convergence", diff < 1e-4,
            f"|S_q_bar(0.02) - S_q_bar(0.01)| = {diff:.2e}")


def test_determinism_fig2a(tmp_path):
    cfg = preset_config("fig2a")
    r1 = run_scenario(cfg, tmp_path / "run1")
    r2 = run_scenario(cfg, tmp_path / "run2")
    same = r1.trajectory_path.read_bytes() == r2.trajectory_path.read_bytes()
    _report("determinism_fig2a", same,
            f"byte-identical trajectory.csv: {same}")
