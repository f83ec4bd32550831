"""Model parameters, derived constants, and the shared scalar functions.

All rates and frequencies are expressed in units of omega1, time in units of
tau = 1/omega1.  The scalar kit collects the closed-form quantities that every
downstream drift/coefficient expression reuses: the truncation factors
A_j = 1 - |beta_j|^2/(4 N_j), a_j = 1 + 2|beta_j|^2, the purely imaginary
secular phase R_j(t) = i omega_j (lambda^2 / 2N_j) t, the real coupling
denominator X, and the noise amplitudes U_j with V_j = |U_j|^2 (n_m + 1/2).

Note: R_j grows linearly in t, so for lambda != 0 the multiplicative R-terms
in the drift grow without bound; the expansion behind them is a
short-to-moderate-time approximation even though the runs of interest remain
bounded at t ~ 1e4 tau.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import HPBreakdownWarning, SingularCoupling
from . import _kernels

DEFAULT_X_EPS = 1e-9
DEFAULT_HP_FRACTION = 1.0


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the reduced two-mode model.

    omega0 (the central-spin frequency) is accepted for completeness but is
    unused by the reduced dynamics: it cancels when the cross product of the
    interaction terms is formed.
    """

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
    omega0: float = 0.0  # documentation only, see module docstring

    def violations(self) -> list[str]:
        return validate_params(self)


class DerivedConstants(NamedTuple):
    B1: float
    B2: float
    theta: float


class ScalarKit(NamedTuple):
    A1: float
    A2: float
    a1: float
    a2: float
    R1: complex
    R2: complex
    X: float
    U1: complex
    U2: complex
    V1: float
    V2: float


def validate_params(params: ModelParams) -> list[str]:
    """Return a list of invariant violations (empty list means valid)."""
    out = []
    if not 0.0 <= params.lam <= 1.0:
        out.append("lambda out of [0,1]")
    if params.N1 < 1:
        out.append("N1 must be >= 1")
    if params.N2 < 1:
        out.append("N2 must be >= 1")
    if abs(params.sigma_z_mean) > 1.0:
        out.append("sigma_z_mean out of [-1,1]")
    if params.gamma_l < 0.0:
        out.append("gamma_l must be >= 0")
    if params.gamma_nl < 0.0:
        out.append("gamma_nl must be >= 0")
    if params.n_m < 0.0:
        out.append("n_m must be >= 0")
    for name in ("g1", "g2", "omega1", "omega2"):
        if not math.isfinite(getattr(params, name)):
            out.append(f"{name} must be finite")
    return out


def derive_constants(params: ModelParams) -> DerivedConstants:
    """B_j = lambda^2 (1 - 1/(2 N_j)) + 1/N_j and the frame detuning theta."""
    lam2 = params.lam * params.lam
    B1 = lam2 * (1.0 - 1.0 / (2.0 * params.N1)) + 1.0 / params.N1
    B2 = lam2 * (1.0 - 1.0 / (2.0 * params.N2)) + 1.0 / params.N2
    theta = 0.5 * params.omega2 * B2 - 0.5 * params.omega1 * B1
    return DerivedConstants(B1, B2, theta)


def pack_params(params: ModelParams, derived: DerivedConstants | None = None,
                x_eps: float = DEFAULT_X_EPS) -> np.ndarray:
    """Flatten parameters into the float vector consumed by the jit kernels."""
    if derived is None:
        derived = derive_constants(params)
    pv = np.empty(_kernels.PV_LEN, dtype=np.float64)
    pv[_kernels.PV_G1] = params.g1
    pv[_kernels.PV_G2] = params.g2
    pv[_kernels.PV_W1] = params.omega1
    pv[_kernels.PV_W2] = params.omega2
    pv[_kernels.PV_LAM] = params.lam
    pv[_kernels.PV_N1] = float(params.N1)
    pv[_kernels.PV_N2] = float(params.N2)
    pv[_kernels.PV_SZ] = params.sigma_z_mean
    pv[_kernels.PV_GL] = params.gamma_l
    pv[_kernels.PV_GNL] = params.gamma_nl
    pv[_kernels.PV_NM] = params.n_m
    pv[_kernels.PV_THETA] = derived.theta
    pv[_kernels.PV_XEPS] = x_eps
    return pv


def check_hp_validity(params: ModelParams, beta1: complex, beta2: complex,
                      hp_fraction: float = DEFAULT_HP_FRACTION,
                      policy: str = "warn", t: float | None = None) -> bool:
    """Check |beta_j|^2 against the truncation bound hp_fraction * 2 N_j.

    Returns True when inside validity.  Outside it, emits an
    HPBreakdownWarning (policy="warn") or raises NonFinite-free hard error
    via ValueError (policy="abort").
    """
    n1 = abs(beta1) ** 2
    n2 = abs(beta2) ** 2
    ratio = max(n1 / (2.0 * params.N1), n2 / (2.0 * params.N2))
    if ratio < hp_fraction:
        return True
    msg = (f"|beta|^2 reached {ratio:.3f} x 2N"
           + (f" at t={t:.6g}" if t is not None else ""))
    if policy == "abort":
        raise ValueError("bosonic truncation breakdown: " + msg)
    warnings.warn(msg, HPBreakdownWarning, stacklevel=2)
    return False


def scalar_kit_eval(params: ModelParams, t: float, beta1: complex, beta2: complex,
                    x_eps: float = DEFAULT_X_EPS,
                    hp_fraction: float = DEFAULT_HP_FRACTION,
                    hp_policy: str = "warn") -> ScalarKit:
    """Evaluate all shared scalars at (t, beta1, beta2).

    Raises SingularCoupling when |X| < x_eps; applies the truncation-validity
    policy when |beta_j|^2 >= hp_fraction * 2 N_j.
    """
    if t < 0.0:
        raise ValueError("t must be >= 0")
    check_hp_validity(params, beta1, beta2, hp_fraction, hp_policy, t)
    pv = pack_params(params, x_eps=x_eps)
    n1, n2, A1, A2, a1, a2, R1, R2, X = _kernels.scalar_block(
        t, complex(beta1), complex(beta2), pv)
    if abs(X) < x_eps:
        raise SingularCoupling(t, complex(beta1), complex(beta2), X)
    U1, U2, V1, V2 = _kernels.noise_scalars(complex(beta1), complex(beta2), pv)
    return ScalarKit(A1, A2, a1, a2, R1, R2, X, U1, U2, V1, V2)
