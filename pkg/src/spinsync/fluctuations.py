"""Linearized fluctuation dynamics and covariance propagation.

The complex fluctuation system d(db_j)/dt = sum E_k db/db^dag + U_j b_in is
re-expressed on the real quadrature vector Y = (dq1, dp1, dq2, dp2) through
the fixed map db_j = (dq_j + i dp_j)/sqrt(2), giving the 4x4 drift M(t).  The
symmetrized covariance C then obeys dC/dt = M C + C M^T + D with
D = diag(V1, V1, V2, V2).

Covariance propagation is co-integrated with the mean field on one time grid
(a single combined RK4 state), so M(t) is never interpolated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (HPBreakdownWarning, NonFinite, PSDViolation,
                     SingularCoupling)
from .meanfield import FTermMode, MeanFieldState, MeanFieldTrajectory
from .model import (DEFAULT_HP_FRACTION, DEFAULT_X_EPS, ModelParams,
                    derive_constants, pack_params)

DEFAULT_PSD_TOL = 1e-9
DEFAULT_EIG_STRIDE = 100  # in integrator steps


@dataclass
class DriftAssembly:
    """Snapshot of all linearization coefficients at one instant."""

    E: tuple  # E1..E8, complex
    F1: complex
    F2: complex
    U1: complex
    U2: complex
    M: np.ndarray  # 4x4 real
    D: np.ndarray  # 4x4 diagonal non-negative


@dataclass
class CovarianceTrajectory:
    t: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray
    mu: np.ndarray  # (n, 4) mean fluctuation vector
    C: np.ndarray  # (n, 4, 4) symmetric covariance
    status: int = _kernels.OK
    fail_t: float | None = None
    hp_first_t: float | None = None
    hp_max_ratio: float = 0.0
    min_eigenvalue: float = np.inf


def fluct_coeffs(t, state: MeanFieldState, params: ModelParams, derived=None,
                 strict_paper=False, x_eps=DEFAULT_X_EPS):
    """Evaluate (E1..E8, F1, F2, U1, U2) along a mean-field point."""
    pv = pack_params(params, derived, x_eps=x_eps)
    b1 = complex(state.beta1)
    b2 = complex(state.beta2)
    _, _, _, _, _, _, _, _, X = _kernels.scalar_block(t, b1, b2, pv)
    if abs(X) < x_eps:
        raise SingularCoupling(t, b1, b2, X)
    strict = 1 if strict_paper else 0
    E = _kernels.fluct_coeffs8(t, b1, b2, pv, strict)
    names = ("E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8")
    for name, val in zip(names, E):
        if not (np.isfinite(val.real) and np.isfinite(val.imag)):
            raise NonFinite(t, f"{name} at beta1={b1}, beta2={b2}")
    F1, F2 = _kernels.f_terms(t, b1, b2, pv)
    U1, U2, _, _ = _kernels.noise_scalars(b1, b2, pv)
    return E, F1, F2, U1, U2


def assemble_drift_matrix(E1, E2, E3, E4, E5, E6, E7, E8) -> np.ndarray:
    """Real 4x4 drift matrix M from the complex coefficients E1..E8."""
    M = np.empty((4, 4))
    _kernels.fill_drift_matrix(complex(E1), complex(E2), complex(E3),
                               complex(E4), complex(E5), complex(E6),
                               complex(E7), complex(E8), M)
    return M


def diffusion_matrix(U1, U2, n_m) -> np.ndarray:
    """D = diag(V1, V1, V2, V2) with V_j = |U_j|^2 (n_m + 1/2)."""
    if n_m < 0.0:
        raise ValueError("n_m must be >= 0")
    half = n_m + 0.5
    V1 = abs(U1) ** 2 * half
    V2 = abs(U2) ** 2 * half
    return np.diag([V1, V1, V2, V2])


def drift_assembly(t, state: MeanFieldState, params: ModelParams,
                   derived=None, strict_paper=False,
                   x_eps=DEFAULT_X_EPS) -> DriftAssembly:
    E, F1, F2, U1, U2 = fluct_coeffs(t, state, params, derived,
                                     strict_paper, x_eps)
    return DriftAssembly(E=E, F1=F1, F2=F2, U1=U1, U2=U2,
                         M=assemble_drift_matrix(*E),
                         D=diffusion_matrix(U1, U2, params.n_m))


def vacuum_covariance() -> np.ndarray:
    return 0.5 * np.eye(4)


def thermal_covariance(n_m) -> np.ndarray:
    return (n_m + 0.5) * np.eye(4)


def propagate_covariance(initial: MeanFieldState, C0: np.ndarray,
                         params: ModelParams, horizon: float, dt: float = 0.01,
                         f_mode=FTermMode.MEANFIELD, strict_paper=False,
                         output_stride: int = 10, x_eps=DEFAULT_X_EPS,
                         hp_fraction=DEFAULT_HP_FRACTION, hp_policy="warn",
                         psd_tol=DEFAULT_PSD_TOL, eig_stride=DEFAULT_EIG_STRIDE,
                         raise_on_failure=True) -> CovarianceTrajectory:
    """Co-integrate (beta1, beta2, C) on one grid and return the full record.

    C is explicitly symmetrized after every step; its minimum eigenvalue is
    monitored on emitted samples roughly every `eig_stride` steps.
    """
    if dt <= 0.0:
        raise ValueError("dt must be > 0")
    C0 = np.asarray(C0, dtype=float)
    if C0.shape != (4, 4) or not np.allclose(C0, C0.T):
        raise ValueError("C0 must be a symmetric 4x4 matrix")
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
    y0[8:24] = C0.reshape(16)

    status, fail_t, n_emit, hp_first_t, hp_max = _kernels.rk4_integrate(
        y0, initial.t, dt, n_steps, output_stride, pv, f_mode.value,
        1 if strict_paper else 0, 1, hp_fraction, t_out, y_out)

    traj = CovarianceTrajectory(
        t=t_out[:n_emit].copy(),
        beta1=y_out[:n_emit, 0] + 1j * y_out[:n_emit, 1],
        beta2=y_out[:n_emit, 2] + 1j * y_out[:n_emit, 3],
        mu=y_out[:n_emit, 4:8].copy(),
        C=y_out[:n_emit, 8:24].reshape(n_emit, 4, 4).copy(),
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

    check_every = max(1, eig_stride // max(output_stride, 1))
    checked = traj.C[::check_every]
    if len(checked):
        eigs = np.linalg.eigvalsh(checked)
        traj.min_eigenvalue = float(eigs.min())
        if traj.min_eigenvalue < -psd_tol and raise_on_failure:
            idx = int(np.argmin(eigs.min(axis=1)))
            raise PSDViolation(float(traj.t[::check_every][idx]),
                               traj.min_eigenvalue)

    if raise_on_failure and status != _kernels.OK:
        if status == _kernels.SINGULAR:
            b1 = complex(traj.beta1[-1])
            b2 = complex(traj.beta2[-1])
            raise SingularCoupling(fail_t, b1, b2, 0.0)
        raise NonFinite(fail_t, "covariance co-integration")
    return traj


def mean_field_view(traj: CovarianceTrajectory) -> MeanFieldTrajectory:
    """The mean-field slice of a co-integrated run."""
    return MeanFieldTrajectory(t=traj.t, beta1=traj.beta1, beta2=traj.beta2,
                               status=traj.status, fail_t=traj.fail_t,
                               hp_first_t=traj.hp_first_t,
                               hp_max_ratio=traj.hp_max_ratio)


def lyapunov_rk4(M_of_t, D_of_t, C0, t0, t1, dt):
    """Generic fixed-step RK4 for dC/dt = M(t) C + C M(t)^T + D(t).

    Utility for property tests and externally supplied drift histories; the
    production path co-integrates with the mean field instead.
    """
    C = np.array(C0, dtype=float)
    n = int(round((t1 - t0) / dt))

    def rhs(t, C):
        M = M_of_t(t)
        return M @ C + C @ M.T + D_of_t(t)

    t = t0
    for _ in range(n):
        k1 = rhs(t, C)
        k2 = rhs(t + 0.5 * dt, C + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, C + 0.5 * dt * k2)
        k4 = rhs(t + dt, C + dt * k3)
        C = C + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        C = 0.5 * (C + C.T)
        t += dt
    return C
