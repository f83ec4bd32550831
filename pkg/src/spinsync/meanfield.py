"""Mean-field drift evaluation and long-horizon integration.

The rotating-frame amplitudes beta_1, beta_2 are advanced with a classical
fixed-step 4th-order Runge-Kutta scheme (global error O(dt^4) on smooth
intervals).  Mean quadratures follow the convention
qbar_j = sqrt(2) Re beta_j, pbar_j = sqrt(2) Im beta_j.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (DegenerateOrbit, EmptyWindow, HPBreakdownWarning,
                     NonFinite, SingularCoupling)
from .model import (DEFAULT_HP_FRACTION, DEFAULT_X_EPS, ModelParams,
                    derive_constants, pack_params)


class FTermMode(enum.Enum):
    """Placement of the c-number F drive terms.

    MEANFIELD adds them to the mean-field drift (default: this is the only
    placement that lets trajectories leave the beta=0 fixed point from the
    stated zero initial condition), NEGLECT drops them entirely, and
    FLUCTUATIONS routes them into the mean of the fluctuation vector for
    sensitivity studies.
    """

    NEGLECT = _kernels.F_NEGLECT
    MEANFIELD = _kernels.F_MEANFIELD
    FLUCTUATIONS = _kernels.F_FLUCTUATIONS

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown f_mode {name!r}") from None


@dataclass(frozen=True)
class MeanFieldState:
    beta1: complex
    beta2: complex
    t: float = 0.0

    @property
    def quadratures(self):
        """(qbar1, pbar1, qbar2, pbar2)."""
        s = math.sqrt(2.0)
        return (s * self.beta1.real, s * self.beta1.imag,
                s * self.beta2.real, s * self.beta2.imag)


@dataclass
class MeanFieldTrajectory:
    t: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray
    status: int = _kernels.OK
    fail_t: float | None = None
    hp_first_t: float | None = None
    hp_max_ratio: float = 0.0

    @property
    def qbar1(self):
        return math.sqrt(2.0) * self.beta1.real

    @property
    def pbar1(self):
        return math.sqrt(2.0) * self.beta1.imag

    @property
    def qbar2(self):
        return math.sqrt(2.0) * self.beta2.real

    @property
    def pbar2(self):
        return math.sqrt(2.0) * self.beta2.imag


@dataclass
class OrbitSummary:
    """Per-oscillator steady-orbit summary over an extraction window."""

    amplitude: float
    period: float
    t: np.ndarray
    phi: np.ndarray  # continuously unwrapped atan2(pbar, qbar)


def mean_field_drift(t, state: MeanFieldState, params: ModelParams,
                     derived=None, f_mode=FTermMode.MEANFIELD,
                     strict_paper=False, x_eps=DEFAULT_X_EPS):
    """Right-hand side (dbeta1/dt, dbeta2/dt) of the mean-field equations."""
    f_mode = FTermMode.parse(f_mode)
    pv = pack_params(params, derived, x_eps=x_eps)
    b1 = complex(state.beta1)
    b2 = complex(state.beta2)
    _, _, _, _, _, _, _, _, X = _kernels.scalar_block(t, b1, b2, pv)
    if abs(X) < x_eps:
        raise SingularCoupling(t, b1, b2, X)
    db1, db2 = _kernels.mean_drift(t, b1, b2, pv, f_mode.value,
                                   1 if strict_paper else 0)
    if not (np.isfinite(db1.real) and np.isfinite(db1.imag)
            and np.isfinite(db2.real) and np.isfinite(db2.imag)):
        raise NonFinite(t, f"drift at beta1={b1}, beta2={b2}")
    return db1, db2


def mean_field_drift_lambda0(t, state: MeanFieldState, params: ModelParams,
                             derived=None, f_mode=FTermMode.MEANFIELD,
                             x_eps=DEFAULT_X_EPS):
    """Independent hand-simplified drift valid only for lambda = 0."""
    if params.lam != 0.0:
        raise ValueError("lambda-zero drift requested with lam != 0")
    f_mode = FTermMode.parse(f_mode)
    pv = pack_params(params, derived, x_eps=x_eps)
    return _kernels.mean_drift_lambda0(t, complex(state.beta1),
                                       complex(state.beta2), pv, f_mode.value)


def _raise_for_status(status, fail_t, beta1=0j, beta2=0j, partial_desc=""):
    if status == _kernels.SINGULAR:
        raise SingularCoupling(fail_t, beta1, beta2, 0.0)
    if status == _kernels.NONFINITE:
        raise NonFinite(fail_t, partial_desc)


def integrate_mean_field(initial: MeanFieldState, params: ModelParams,
                         horizon: float, dt: float = 0.01,
                         f_mode=FTermMode.MEANFIELD, strict_paper=False,
                         output_stride: int = 10, x_eps=DEFAULT_X_EPS,
                         hp_fraction=DEFAULT_HP_FRACTION, hp_policy="warn",
                         raise_on_failure=True) -> MeanFieldTrajectory:
    """Integrate beta_1(t), beta_2(t) from `initial` over `horizon`.

    Emits every `output_stride`-th step plus the initial state.  On a
    numerical failure, raises (default) or returns the partial trajectory
    with the failing status and timestamp recorded.
    """
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    if horizon < dt and horizon != 0.0:
        raise ValueError("horizon must be >= dt (or exactly 0)")
    f_mode = FTermMode.parse(f_mode)
    derived = derive_constants(params)
    pv = pack_params(params, derived, x_eps=x_eps)

    n_steps = int(round(horizon / dt))
    n_emit_max = n_steps // output_stride + 1
    t_out = np.empty(n_emit_max)
    y_out = np.empty((n_emit_max, _kernels.STATE_LEN))
    y0 = np.zeros(_kernels.STATE_LEN)
    y0[0] = initial.beta1.real
    y0[1] = initial.beta1.imag
    y0[2] = initial.beta2.real
    y0[3] = initial.beta2.imag

    status, fail_t, n_emit, hp_first_t, hp_max = _kernels.rk4_integrate(
        y0, initial.t, dt, n_steps, output_stride, pv, f_mode.value,
        1 if strict_paper else 0, 0, hp_fraction, t_out, y_out)

    traj = MeanFieldTrajectory(
        t=t_out[:n_emit].copy(),
        beta1=y_out[:n_emit, 0] + 1j * y_out[:n_emit, 1],
        beta2=y_out[:n_emit, 2] + 1j * y_out[:n_emit, 3],
        status=status,
        fail_t=fail_t if status != _kernels.OK else None,
        hp_first_t=hp_first_t if hp_first_t >= 0.0 else None,
        hp_max_ratio=hp_max,
    )
    if traj.hp_first_t is not None:
        msg = (f"|beta|^2 reached {hp_max:.3f} x 2N "
               f"(first at t={traj.hp_first_t:.6g})")
        if hp_policy == "abort":
            raise ValueError("bosonic truncation breakdown: " + msg)
        warnings.warn(msg, HPBreakdownWarning, stacklevel=2)
    if raise_on_failure and status != _kernels.OK:
        b1 = complex(traj.beta1[-1]) if n_emit else initial.beta1
        b2 = complex(traj.beta2[-1]) if n_emit else initial.beta2
        _raise_for_status(status, fail_t, b1, b2, "mean-field integration")
    return traj


def limit_cycle_extract(traj: MeanFieldTrajectory, window: tuple[float, float],
                        radius_eps: float = 1e-9) -> tuple[OrbitSummary, OrbitSummary]:
    """Summarize both steady orbits over [t_a, t_b].

    Amplitude is the RMS radius in the (qbar, pbar) plane, period comes from
    rising zero-crossing intervals of qbar, and phi is the continuously
    unwrapped two-argument arctangent.
    """
    t_a, t_b = window
    mask = (traj.t >= t_a) & (traj.t <= t_b)
    if not mask.any():
        raise EmptyWindow(f"window [{t_a}, {t_b}] outside trajectory")
    tw = traj.t[mask]
    out = []
    for q, p in ((traj.qbar1[mask], traj.pbar1[mask]),
                 (traj.qbar2[mask], traj.pbar2[mask])):
        r2 = q * q + p * p
        amplitude = math.sqrt(float(np.mean(r2)))
        if amplitude < radius_eps:
            raise DegenerateOrbit(
                f"RMS radius {amplitude:.3e} below {radius_eps:.0e}; phase undefined")
        crossings = _rising_crossings(tw, q)
        if len(crossings) < 4:
            raise DegenerateOrbit(
                "window spans fewer than 3 oscillation periods of qbar")
        period = float(np.mean(np.diff(crossings)))
        phi = np.unwrap(np.arctan2(p, q))
        out.append(OrbitSummary(amplitude, period, tw, phi))
    return out[0], out[1]


def _rising_crossings(t, x):
    """Linearly interpolated times where x crosses zero from below."""
    idx = np.nonzero((x[:-1] < 0.0) & (x[1:] >= 0.0))[0]
    frac = -x[idx] / (x[idx + 1] - x[idx])
    return t[idx] + frac * (t[idx + 1] - t[idx])
