"""Run orchestration: configuration, figure presets, datasets, selftest.

All file I/O of the simulator lives here.  A scenario run writes three files
into the output directory:

    trajectory.csv   one TrajectoryRecord row per emitted step
    summary.txt      steady-state summary (time averages, phase, orbits)
    manifest.txt     fully resolved configuration + run provenance

Identical configurations produce byte-identical trajectory.csv files.
"""

from __future__ import annotations

import dataclasses
import math
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__ as _version
from . import _kernels
from .errors import (ConfigError, DegenerateOrbit, EmptyWindow,
                     HPBreakdownWarning, NonFinite, PSDViolation,
                     SingularCoupling)
from .fluctuations import (mean_field_view, propagate_covariance,
                           thermal_covariance, vacuum_covariance)
from .meanfield import (FTermMode, MeanFieldState, integrate_mean_field,
                        limit_cycle_extract, mean_field_drift,
                        mean_field_drift_lambda0)
from .metrics import (classical_sync, instantaneous_phase_difference,
                      phase_difference, quantum_sync_phi, time_average)
from .model import ModelParams, derive_constants, validate_params

TRAJECTORY_COLUMNS = [
    "t", "qbar1", "pbar1", "qbar2", "pbar2",
    "C11", "C12", "C13", "C14", "C22", "C23", "C24", "C33", "C34", "C44",
    "Sq", "Sq_phi", "Sc",
]
SC_SENTINEL = "PerfectClassicalSync"


@dataclass
class RunConfig:
    """Flat run configuration; round-trips losslessly through text files."""

    scenario: str = "custom"
    g1: float = 1.5
    g2: float = 2.4
    omega1: float = 1.0
    omega2: float = 0.8
    lam: float = 0.0
    N1: int = 5
    N2: int = 5
    sigma_z_mean: float = -0.1
    gamma_l: float = 0.001
    gamma_nl: float = 0.002
    n_m: float = 0.0
    omega0: float = 0.0
    f_mode: str = "meanfield"
    strict_paper: bool = False
    dt: float = 0.01
    horizon: float = 1e4
    output_stride: int = 10
    c0: str = "vacuum"
    avg_window: float = 0.2
    beta1_re: float = 0.0
    beta1_im: float = 0.0
    beta2_re: float = 0.0
    beta2_im: float = 0.0
    x_eps: float = 1e-9
    hp_fraction: float = 1.0
    hp_policy: str = "warn"

    def params(self) -> ModelParams:
        return ModelParams(
            g1=self.g1, g2=self.g2, omega1=self.omega1, omega2=self.omega2,
            lam=self.lam, N1=self.N1, N2=self.N2,
            sigma_z_mean=self.sigma_z_mean, gamma_l=self.gamma_l,
            gamma_nl=self.gamma_nl, n_m=self.n_m, omega0=self.omega0)

    def initial_state(self) -> MeanFieldState:
        return MeanFieldState(beta1=complex(self.beta1_re, self.beta1_im),
                              beta2=complex(self.beta2_re, self.beta2_im))

    def initial_covariance(self) -> np.ndarray:
        if self.c0 == "vacuum":
            return vacuum_covariance()
        if self.c0 == "thermal":
            return thermal_covariance(self.n_m)
        raise ConfigError(f"unknown c0 choice {self.c0!r}")

    def validate(self):
        problems = validate_params(self.params())
        if self.dt <= 0.0:
            problems.append("dt must be > 0")
        if self.horizon < 0.0:
            problems.append("horizon must be >= 0")
        if self.output_stride < 1:
            problems.append("output_stride must be >= 1")
        if not 0.0 < self.avg_window <= 1.0:
            problems.append("avg_window out of (0,1]")
        if self.f_mode not in ("neglect", "meanfield", "fluctuations"):
            problems.append(f"unknown f_mode {self.f_mode!r}")
        if self.c0 not in ("vacuum", "thermal"):
            problems.append(f"unknown c0 {self.c0!r}")
        if self.hp_policy not in ("warn", "abort"):
            problems.append(f"unknown hp_policy {self.hp_policy!r}")
        if problems:
            raise ConfigError("; ".join(problems))

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    def to_file(self, path):
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        fields = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for ln, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {ln}: expected 'key = value'")
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in fields:
                raise ConfigError(f"line {ln}: unknown key {key!r}")
            ftype = fields[key].type
            try:
                if ftype == "bool":
                    if val not in ("true", "false"):
                        raise ValueError(val)
                    kwargs[key] = val == "true"
                elif ftype == "int":
                    kwargs[key] = int(val)
                elif ftype == "float":
                    kwargs[key] = float(val)
                else:
                    kwargs[key] = val
            except ValueError:
                raise ConfigError(
                    f"line {ln}: bad value {val!r} for {key}") from None
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        return cls.from_text(Path(path).read_text())


# Figure-reproduction presets (shared constants: g1=1.5, g2=2.4,
# sigma_z=-0.1, omega1=1, omega2=0.8, gamma_l=0.001, gamma_nl=0.002).
PRESETS = {
    "fig2a": dict(scenario="fig2a", lam=0.0, N1=5, N2=5),
    "fig2d": dict(scenario="fig2d", lam=0.0, N1=10, N2=5),
    "fig2g": dict(scenario="fig2g", lam=0.2, N1=5, N2=5),
    "fig3a": dict(scenario="fig3a", lam=0.2, N1=5, N2=5),
    "fig3b": dict(scenario="fig3b", lam=0.2, N1=5, N2=5),
}


def preset_config(name: str) -> RunConfig:
    try:
        return RunConfig(**PRESETS[name])
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {sorted(PRESETS)}") from None


def _fmt(x) -> str:
    return f"{x:.17g}"


@dataclass
class RunResult:
    config: RunConfig
    out_dir: Path
    summary: dict
    trajectory_path: Path
    manifest_path: Path
    traj: object = None  # CovarianceTrajectory, None for horizon = 0


def _sync_series(traj):
    """Per-row synchronization columns from a co-integrated trajectory."""
    s = math.sqrt(2.0)
    q1 = s * traj.beta1.real
    p1 = s * traj.beta1.imag
    q2 = s * traj.beta2.real
    p2 = s * traj.beta2.imag
    phi = instantaneous_phase_difference(q1, p1, q2, p2)

    C = traj.C
    diag = C[:, 0, 0] + C[:, 1, 1] + C[:, 2, 2] + C[:, 3, 3]
    b0 = diag - 2.0 * C[:, 0, 2] - 2.0 * C[:, 1, 3]
    sphi = np.sin(phi)
    cphi = np.cos(phi)
    bphi = (diag + 2.0 * sphi * C[:, 1, 2] - 2.0 * sphi * C[:, 0, 3]
            - 2.0 * cphi * C[:, 0, 2] - 2.0 * cphi * C[:, 1, 3])
    with np.errstate(divide="ignore", invalid="ignore"):
        Sq = np.where(b0 > 0.0, 2.0 / b0, np.nan)
        Sq_phi = np.where(bphi > 0.0, 2.0 / bphi, np.nan)
    return q1, p1, q2, p2, phi, Sq, Sq_phi


def _write_trajectory_csv(path, traj):
    rows = [",".join(TRAJECTORY_COLUMNS)]
    if traj is not None and len(traj.t):
        q1, p1, q2, p2, _, Sq, Sq_phi = _sync_series(traj)
        C = traj.C
        upper = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3),
                 (2, 2), (2, 3), (3, 3)]
        for k in range(len(traj.t)):
            sc = classical_sync(q1[k], p1[k], q2[k], p2[k])
            cells = [_fmt(traj.t[k]), _fmt(q1[k]), _fmt(p1[k]),
                     _fmt(q2[k]), _fmt(p2[k])]
            cells += [_fmt(C[k, i, j]) for i, j in upper]
            cells += [_fmt(Sq[k]), _fmt(Sq_phi[k]),
                      SC_SENTINEL if sc.perfect else _fmt(sc.value)]
            rows.append(",".join(cells))
    Path(path).write_text("\n".join(rows) + "\n", newline="\n")


def _write_kv(path, mapping):
    lines = [f"{k} = {v}" for k, v in mapping.items()]
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def _summarize(config, traj):
    """Steady-state summary over the final averaging window."""
    summary = {}
    q1, p1, q2, p2, phi_inst, Sq, Sq_phi = _sync_series(traj)
    t = traj.t
    summary["Sq_bar"] = time_average(t, Sq, config.avg_window)
    summary["Sq_phi_bar"] = time_average(t, Sq_phi, config.avg_window)
    t_a = t[-1] - config.avg_window * (t[-1] - t[0])
    try:
        o1, o2 = limit_cycle_extract(mean_field_view(traj), (t_a, t[-1]))
        summary["phi"] = phase_difference(o1, o2)
        summary["amplitude1"] = o1.amplitude
        summary["amplitude2"] = o2.amplitude
        summary["period1"] = o1.period
        summary["period2"] = o2.period
    except (DegenerateOrbit, EmptyWindow) as exc:
        summary["orbit_note"] = f"orbit summary unavailable: {exc}"
    return summary


def run_scenario(config: RunConfig, out_dir) -> RunResult:
    """Execute one scenario and write trajectory.csv / summary.txt / manifest.txt.

    Numerical failures (singular coupling, non-finite state, covariance PSD
    loss) still flush the partial dataset and a manifest recording the
    failing timestamp, then propagate.
    """
    config.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    traj_path = out_dir / "trajectory.csv"
    manifest_path = out_dir / "manifest.txt"
    summary_path = out_dir / "summary.txt"

    manifest = {"spinsync_version": _version, "scenario": config.scenario}
    for f in dataclasses.fields(config):
        v = getattr(config, f.name)
        manifest[f.name] = ("true" if v else "false") if isinstance(v, bool) \
            else (repr(v) if isinstance(v, float) else v)

    t0 = time.perf_counter()
    if config.horizon == 0.0:
        _write_trajectory_csv(traj_path, None)
        manifest["status"] = "ok"
        manifest["rows"] = 0
        manifest["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"
        _write_kv(manifest_path, manifest)
        _write_kv(summary_path, {})
        return RunResult(config, out_dir, {}, traj_path, manifest_path, None)

    hp_notes = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HPBreakdownWarning)
        try:
            traj = propagate_covariance(
                config.initial_state(), config.initial_covariance(),
                config.params(), config.horizon, dt=config.dt,
                f_mode=FTermMode.parse(config.f_mode),
                strict_paper=config.strict_paper,
                output_stride=config.output_stride, x_eps=config.x_eps,
                hp_fraction=config.hp_fraction, hp_policy=config.hp_policy,
                raise_on_failure=False)
        finally:
            hp_notes = [str(w.message) for w in caught
                        if issubclass(w.category, HPBreakdownWarning)]
    for i, note in enumerate(hp_notes):
        manifest[f"hp_warning_{i}"] = note
    manifest["hp_max_ratio"] = repr(traj.hp_max_ratio)

    _write_trajectory_csv(traj_path, traj)

    failure = None
    if traj.status == _kernels.SINGULAR:
        failure = SingularCoupling(traj.fail_t, complex(traj.beta1[-1]),
                                   complex(traj.beta2[-1]), 0.0)
        manifest["status"] = "singular_coupling"
    elif traj.status == _kernels.NONFINITE:
        failure = NonFinite(traj.fail_t, "scenario run")
        manifest["status"] = "non_finite"
    elif traj.min_eigenvalue < -1e-9:
        failure = PSDViolation(float(traj.t[-1]), traj.min_eigenvalue)
        manifest["status"] = "psd_violation"
    else:
        manifest["status"] = "ok"
    if failure is not None and traj.fail_t is not None:
        manifest["failure_t"] = repr(float(traj.fail_t))
    manifest["rows"] = len(traj.t)
    manifest["min_covariance_eigenvalue"] = repr(traj.min_eigenvalue)

    summary = {}
    if failure is None:
        summary = _summarize(config, traj)
        _write_kv(summary_path, {k: (repr(v) if isinstance(v, float) else v)
                                 for k, v in summary.items()})
    manifest["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"
    _write_kv(manifest_path, manifest)
    if failure is not None:
        raise failure
    return RunResult(config, out_dir, summary, traj_path, manifest_path, traj)


def run_thermal_sweep(config: RunConfig, nm_values, out_dir) -> Path:
    """One scenario per thermal occupation; rows in input order.

    Per-point failures become NaN rows with a manifest note; the other
    points are unaffected.
    """
    if not len(list(nm_values)):
        raise ConfigError("n_m list must be non-empty")
    if any(v < 0 for v in nm_values):
        raise ConfigError("all n_m values must be >= 0")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sweep_path = out_dir / "sweep.csv"
    manifest = {"spinsync_version": _version,
                "base_scenario": config.scenario,
                "n_m_values": ",".join(repr(float(v)) for v in nm_values)}

    rows = ["n_m,Sq_bar"]
    t0 = time.perf_counter()
    for i, nm in enumerate(nm_values):
        point_cfg = dataclasses.replace(config, n_m=float(nm),
                                        scenario=f"{config.scenario}_nm{i}")
        try:
            result = run_scenario(point_cfg, out_dir / f"point_{i}")
            sq_bar = result.summary["Sq_phi_bar"]
            rows.append(f"{_fmt(float(nm))},{_fmt(sq_bar)}")
        except (SingularCoupling, NonFinite, PSDViolation) as exc:
            manifest[f"point_{i}_failure"] = str(exc)
            rows.append(f"{_fmt(float(nm))},nan")
    manifest["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"
    sweep_path.write_text("\n".join(rows) + "\n", newline="\n")
    _write_kv(out_dir / "manifest.txt", manifest)
    return sweep_path


# ---------------------------------------------------------------------------
# selftest

def _check_complex_quadrature_oracle(rng, n_tuples=20, assemble_override=None):
    """M-evolved quadratures must match the complex-plane evolution."""
    from .fluctuations import assemble_drift_matrix
    assemble = assemble_override or assemble_drift_matrix
    worst = 0.0
    dt = 1e-3
    for _ in range(n_tuples):
        E = (rng.standard_normal(8) + 1j * rng.standard_normal(8)) * 0.1
        E[0] -= 0.2
        E[6] -= 0.2
        M = assemble(*E)
        y = rng.standard_normal(4)
        b = np.array([complex(y[0], y[1]) / math.sqrt(2),
                      complex(y[2], y[3]) / math.sqrt(2)])

        def fy(y):
            return M @ y

        def fb(b):
            db1 = E[0] * b[0] + E[1] * b[0].conjugate() \
                + E[2] * b[1] + E[3] * b[1].conjugate()
            db2 = E[4] * b[0] + E[5] * b[0].conjugate() \
                + E[6] * b[1] + E[7] * b[1].conjugate()
            return np.array([db1, db2])

        for _step in range(2000):
            k1 = fy(y)
            k2 = fy(y + 0.5 * dt * k1)
            k3 = fy(y + 0.5 * dt * k2)
            k4 = fy(y + dt * k3)
            y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            j1 = fb(b)
            j2 = fb(b + 0.5 * dt * j1)
            j3 = fb(b + 0.5 * dt * j2)
            j4 = fb(b + dt * j3)
            b = b + (dt / 6.0) * (j1 + 2 * j2 + 2 * j3 + j4)
        mapped = math.sqrt(2.0) * np.array([b[0].real, b[0].imag,
                                            b[1].real, b[1].imag])
        worst = max(worst, float(np.max(np.abs(y - mapped))))
    return worst < 1e-8, f"max deviation {worst:.2e}"


def _check_symmetry_run():
    params = ModelParams(g1=1.5, g2=1.5, omega1=1.0, omega2=1.0,
                         N1=5, N2=5)
    # start outside the X = 0 shell (|beta|^2 = N): a fully symmetric
    # trajectory started inside rides straight into the singular coupling
    traj = integrate_mean_field(MeanFieldState(3.0 + 0.0j, 3.0 + 0.0j),
                                params, horizon=100.0, dt=0.01)
    dev = float(np.max(np.abs(traj.beta1 - traj.beta2)))
    return dev < 1e-9, f"max |beta1-beta2| = {dev:.2e}"


def _check_lambda0_reduction(rng, n_points=1000):
    params = ModelParams(lam=0.0)
    derived = derive_constants(params)
    worst = 0.0
    for _ in range(n_points):
        t = rng.uniform(0.0, 100.0)
        b1 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        b2 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        st = MeanFieldState(b1, b2)
        d_full = mean_field_drift(t, st, params, derived)
        d_red = mean_field_drift_lambda0(t, st, params, derived)
        worst = max(worst, abs(d_full[0] - d_red[0]), abs(d_full[1] - d_red[1]))
    return worst < 1e-12, f"max deviation {worst:.2e}"


def _check_psd_batch(rng, n_systems=20):
    from .fluctuations import lyapunov_rk4
    worst = np.inf
    for _ in range(n_systems):
        A = rng.standard_normal((4, 4))
        C0 = A @ A.T + 0.1 * np.eye(4)
        Ms = rng.standard_normal((5, 4, 4)) * 0.5
        B = rng.standard_normal((4, 4)) * 0.3
        D = B @ B.T

        def M_of_t(t):
            return Ms[min(int(t), 4)]

        C = lyapunov_rk4(M_of_t, lambda t: D, C0, 0.0, 1.0, 0.01)
        worst = min(worst, float(np.linalg.eigvalsh(C).min()))
    return worst >= -1e-9, f"min eigenvalue {worst:.2e}"


def _check_sync_identities(rng):
    from .metrics import quantum_sync
    for _ in range(50):
        A = rng.standard_normal((4, 4))
        C = A @ A.T + 0.1 * np.eye(4)
        if quantum_sync_phi(C, 0.0) != quantum_sync(C):
            return False, "phi=0 identity failed"
        Cb = C.copy()
        Cb[0, 2] = Cb[2, 0] = 0.0
        Cb[0, 3] = Cb[3, 0] = 0.0
        Cb[1, 2] = Cb[2, 1] = 0.0
        Cb[1, 3] = Cb[3, 1] = 0.0
        vals = [quantum_sync_phi(Cb, phi) for phi in (0.0, 0.7, 2.0, -1.3)]
        if max(vals) - min(vals) > 1e-12:
            return False, "block-diagonal phi independence failed"
    return True, "ok"


def _check_fixed_point():
    params = ModelParams()  # fig2a constants
    derived = derive_constants(params)
    st = MeanFieldState(0j, 0j)
    d1, d2 = mean_field_drift(0.0, st, params, derived, FTermMode.NEGLECT)
    if d1 != 0 or d2 != 0:
        return False, "beta=0 not a fixed point with F neglected"
    d1, d2 = mean_field_drift(0.0, st, params, derived, FTermMode.MEANFIELD)
    X = -(params.g1 * math.sqrt(params.N1) + params.g2 * math.sqrt(params.N2))
    exp1 = -13j * params.g1 * params.sigma_z_mean / X
    exp2 = -13j * params.g2 * params.sigma_z_mean / X
    dev = max(abs(d1 - exp1), abs(d2 - exp2))
    return dev < 1e-12, f"F(0) deviation {dev:.2e}"


def _check_strict_paper_divergence():
    """The literal printed second-oscillator equation breaks 1<->2 symmetry.

    Flagged 'expected-different': passing means the strict form does differ.
    """
    params = ModelParams(g1=1.5, g2=1.5, omega1=1.0, omega2=1.0, N1=5, N2=5)
    derived = derive_constants(params)
    st = MeanFieldState(0.3 + 0.2j, 0.3 + 0.2j)
    d_corr = mean_field_drift(1.0, st, params, derived, strict_paper=False)
    d_strict = mean_field_drift(1.0, st, params, derived, strict_paper=True)
    sym_corr = abs(d_corr[0] - d_corr[1])
    sym_strict = abs(d_strict[0] - d_strict[1])
    ok = sym_corr < 1e-12 and sym_strict > 1e-12
    return ok, (f"expected-different: corrected asym {sym_corr:.2e}, "
                f"strict asym {sym_strict:.2e}")


def selftest(seed=12345, assemble_override=None):
    """Run the fast invariant suite; returns a list of (name, ok, detail)."""
    rng = np.random.default_rng(seed)
    checks = [
        ("complex_quadrature_oracle",
         lambda: _check_complex_quadrature_oracle(rng, assemble_override=assemble_override)),
        ("symmetry_run", _check_symmetry_run),
        ("lambda0_reduction", lambda: _check_lambda0_reduction(rng)),
        ("psd_batch", lambda: _check_psd_batch(rng)),
        ("sync_identities", lambda: _check_sync_identities(rng)),
        ("fixed_point", _check_fixed_point),
        ("strict_paper_b2_divergence", _check_strict_paper_divergence),
    ]
    report = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"exception: {exc}"
        report.append((name, ok, detail))
    return report
