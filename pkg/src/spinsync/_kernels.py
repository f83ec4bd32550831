"""Numba-compiled numerical core.

Everything here operates on plain floats/complex and a flat parameter vector
so the long-horizon runs (1e6 fixed steps) stay cheap.  The same functions
are callable from interpreted code, which is how the public modules and the
test oracles reach the single authoritative implementation of each formula.

Combined integration state layout (length 24, float64):
    y[0:4]   Re b1, Im b1, Re b2, Im b2      (mean-field amplitudes)
    y[4:8]   mean fluctuation vector mu = <Y>  (driven only in f_mode=2)
    y[8:24]  covariance matrix C, row-major 4x4
"""

import cmath
import math

import numpy as np
from numba import njit

# parameter-vector layout
(PV_G1, PV_G2, PV_W1, PV_W2, PV_LAM, PV_N1, PV_N2, PV_SZ,
 PV_GL, PV_GNL, PV_NM, PV_THETA, PV_XEPS) = range(13)
PV_LEN = 13

# F-term placement modes
F_NEGLECT = 0
F_MEANFIELD = 1
F_FLUCTUATIONS = 2

# integration status codes
OK = 0
SINGULAR = 1
NONFINITE = 2

STATE_LEN = 24


@njit(cache=True)
def _abs2(z):
    return z.real * z.real + z.imag * z.imag


@njit(cache=True)
def scalar_block(t, b1, b2, pv):
    """Occupations, truncation factors, secular phases, coupling denominator."""
    N1 = pv[PV_N1]
    N2 = pv[PV_N2]
    n1 = _abs2(b1)
    n2 = _abs2(b2)
    A1 = 1.0 - n1 / (4.0 * N1)
    A2 = 1.0 - n2 / (4.0 * N2)
    a1 = 1.0 + 2.0 * n1
    a2 = 1.0 + 2.0 * n2
    lam2 = pv[PV_LAM] * pv[PV_LAM]
    R1 = 1j * pv[PV_W1] * (lam2 / (2.0 * N1)) * t
    R2 = 1j * pv[PV_W2] * (lam2 / (2.0 * N2)) * t
    X = (pv[PV_G1] * (n1 - N1) / math.sqrt(N1)
         + pv[PV_G2] * (n2 - N2) / math.sqrt(N2))
    return n1, n2, A1, A2, a1, a2, R1, R2, X


@njit(cache=True)
def noise_scalars(b1, b2, pv):
    """Input-noise amplitudes U_j and diffusion strengths V_j."""
    sgl = math.sqrt(pv[PV_GL])
    sgnl = math.sqrt(pv[PV_GNL])
    n1 = _abs2(b1)
    n2 = _abs2(b2)
    U1 = sgl + (sgnl / pv[PV_N1]) * (2.0 * n1 - b1 * b1)
    U2 = sgl + (sgnl / pv[PV_N2]) * (2.0 * n2 - b2 * b2)
    half = pv[PV_NM] + 0.5
    V1 = _abs2(U1) * half
    V2 = _abs2(U2) * half
    return U1, U2, V1, V2


@njit(cache=True)
def f_terms(t, b1, b2, pv):
    """Constant (c-number) drive terms of the linearized system.

    The second term carries g2 in its prefactor, mirroring the g1 of the
    first; this makes the pair symmetric under 1<->2 exchange.
    """
    n1, n2, A1, A2, a1, a2, R1, R2, X = scalar_block(t, b1, b2, pv)
    g1 = pv[PV_G1]
    g2 = pv[PV_G2]
    sz = pv[PV_SZ]
    N1 = pv[PV_N1]
    N2 = pv[PV_N2]

    e1m2 = cmath.exp(R1 * a1 - R2 * a2)
    e2m1 = cmath.exp(R2 * a2 - R1 * a1)

    F1 = (1j * g1 * sz / X) * (
        -2.0 * A1 * b1 + 3.0 * b1 * n1 / (2.0 * N1) - 2.0 * b1
        + b1 * b1 * b2.conjugate() * e1m2
        * ((3.0 * A2 + 1.0) / (2.0 * N1) - 4.0 * R1 * (A1 + A2) - 10.0 * R1 * A1 * A2)
        + e2m1 * ((5.0 * n1 / (2.0 * N1) + 20.0 * n1 * R1 * A1 + 4.0 * n1 * R1
                   - 12.0 * A1 - 1.0)
                  + 2.0 * b2 * (n1 / (4.0 * N1) + 4.0 * n1 * R1 * A1 - A1))
    )
    F2 = (1j * g2 * sz / X) * (
        -2.0 * A2 * b2 + 3.0 * b2 * n2 / (2.0 * N2) - 2.0 * b2
        + b2 * b2 * b1.conjugate() * e2m1
        * ((3.0 * A1 + 1.0) / (2.0 * N2) - 4.0 * R2 * (A1 + A2) - 10.0 * R2 * A1 * A2)
        + e1m2 * ((5.0 * n2 / (2.0 * N2) + 20.0 * n2 * R2 * A2 + 4.0 * n2 * R2
                   - 12.0 * A2 - 1.0)
                  + 2.0 * b1 * (n2 / (4.0 * N2) + 4.0 * n2 * R2 * A2 - A2))
    )
    return F1, F2


@njit(cache=True)
def mean_drift(t, b1, b2, pv, f_mode, strict):
    """Rotating-frame mean-field drift (db1/dt, db2/dt).

    strict=1 reproduces the literal printed form of the second oscillator's
    equation (self-term acting on b1, conjugate nonlinear cross-damping);
    strict=0 applies the symmetry-restoring corrections used by default.
    """
    n1, n2, A1, A2, a1, a2, R1, R2, X = scalar_block(t, b1, b2, pv)
    g1 = pv[PV_G1]
    g2 = pv[PV_G2]
    sz = pv[PV_SZ]
    N1 = pv[PV_N1]
    N2 = pv[PV_N2]
    gl = pv[PV_GL]
    gnl = pv[PV_GNL]
    sglnl = math.sqrt(gl * gnl)
    theta = pv[PV_THETA]
    pref = 1j * sz / X

    e21 = cmath.exp(-R2 * a2 + R1 * a1)
    e12 = cmath.exp(R2 * a2 - R1 * a1)

    db1 = (1j * theta * b1 - 0.5 * gl * b1
           - (gnl / (N1 * N1)) * n1 * n1 * b1
           - 2.0 * (gnl / (N1 * N1)) * n1 * b1
           - (2.0 / N1) * sglnl * n1 * b1)
    br1 = (g1 * g1 * n1 * b1 / N1
           - 3.0 * g1 * g1 * n1 * n1 * b1 / (16.0 * N1 * N1)
           - g1 * g1 * b1
           + g1 * g2 * b2.conjugate() * e21 * A2
           * (b1 * b1 / (4.0 * N1) - 2.0 * R1 * A1 * b1 * b1)
           + g1 * g2 * A2 * e12 * b2
           * (n1 * b1 / (4.0 * N1) + 2.0 * R1 * A1 * n1 - A1))
    db1 = db1 + pref * br1

    db2 = (-1j * theta * b2 - 0.5 * gl * b2
           - (gnl / (N2 * N2)) * n2 * n2 * b2
           - 2.0 * (gnl / (N2 * N2)) * n2 * b2)
    if strict == 0:
        db2 = db2 - (2.0 / N2) * sglnl * n2 * b2
        self2 = (g2 * g2 * n2 * b2 / N2
                 - 3.0 * g2 * g2 * n2 * n2 * b2 / (16.0 * N2 * N2)
                 - g2 * g2 * b2)
    else:
        # literal printed forms: conjugate cross-damping and b1 self-term
        db2 = db2 - (2.0 / N2) * sglnl * b2.conjugate()
        self2 = (g2 * g2 * (n2 / (2.0 * N2) - 1.0) * (1.0 - n2 / (4.0 * N2)) * b1
                 + g2 * g2 * (1.0 - n2 / (4.0 * N2)) * n2 * b2 / (4.0 * N2))
    br2 = (self2
           + g1 * g2 * b1.conjugate() * cmath.exp(-R1 * a1 + R2 * a2) * A1
           * (b2 * b2 / (4.0 * N2) - 2.0 * R2 * A2 * b2 * b2)
           + g1 * g2 * A1 * cmath.exp(R1 * a1 - R2 * a2) * b1
           * (n2 * b2 / (4.0 * N2) + 2.0 * R2 * A2 * n2 - A2))
    db2 = db2 + pref * br2

    if f_mode == F_MEANFIELD:
        F1, F2 = f_terms(t, b1, b2, pv)
        db1 = db1 + F1
        db2 = db2 + F2
    return db1, db2


@njit(cache=True)
def mean_drift_lambda0(t, b1, b2, pv, f_mode):
    """Hand-simplified drift for lambda = 0 (all R terms zero, phases unity).

    Kept deliberately independent of mean_drift as a cross-check path.
    """
    N1 = pv[PV_N1]
    N2 = pv[PV_N2]
    g1 = pv[PV_G1]
    g2 = pv[PV_G2]
    sz = pv[PV_SZ]
    gl = pv[PV_GL]
    gnl = pv[PV_GNL]
    sglnl = math.sqrt(gl * gnl)
    theta = pv[PV_THETA]
    n1 = _abs2(b1)
    n2 = _abs2(b2)
    A1 = 1.0 - n1 / (4.0 * N1)
    A2 = 1.0 - n2 / (4.0 * N2)
    X = (g1 * (n1 - N1) / math.sqrt(N1) + g2 * (n2 - N2) / math.sqrt(N2))
    pref = 1j * sz / X

    db1 = (1j * theta * b1 - 0.5 * gl * b1
           - (gnl / (N1 * N1)) * (n1 * n1 + 2.0 * n1) * b1
           - (2.0 / N1) * sglnl * n1 * b1
           + pref * (g1 * g1 * (n1 / N1 - 3.0 * n1 * n1 / (16.0 * N1 * N1) - 1.0) * b1
                     + g1 * g2 * A2 * (b2.conjugate() * b1 * b1 / (4.0 * N1)
                                       + b2 * (n1 * b1 / (4.0 * N1) - A1))))
    db2 = (-1j * theta * b2 - 0.5 * gl * b2
           - (gnl / (N2 * N2)) * (n2 * n2 + 2.0 * n2) * b2
           - (2.0 / N2) * sglnl * n2 * b2
           + pref * (g2 * g2 * (n2 / N2 - 3.0 * n2 * n2 / (16.0 * N2 * N2) - 1.0) * b2
                     + g1 * g2 * A1 * (b1.conjugate() * b2 * b2 / (4.0 * N2)
                                       + b1 * (n2 * b2 / (4.0 * N2) - A2))))
    if f_mode == F_MEANFIELD:
        F1 = (1j * g1 * sz / X) * (
            -2.0 * A1 * b1 + 3.0 * b1 * n1 / (2.0 * N1) - 2.0 * b1
            + b1 * b1 * b2.conjugate() * (3.0 * A2 + 1.0) / (2.0 * N1)
            + (5.0 * n1 / (2.0 * N1) - 12.0 * A1 - 1.0)
            + 2.0 * b2 * (n1 / (4.0 * N1) - A1))
        F2 = (1j * g2 * sz / X) * (
            -2.0 * A2 * b2 + 3.0 * b2 * n2 / (2.0 * N2) - 2.0 * b2
            + b2 * b2 * b1.conjugate() * (3.0 * A1 + 1.0) / (2.0 * N2)
            + (5.0 * n2 / (2.0 * N2) - 12.0 * A2 - 1.0)
            + 2.0 * b1 * (n2 / (4.0 * N2) - A2))
        db1 = db1 + F1
        db2 = db2 + F2
    return db1, db2


@njit(cache=True)
def fluct_coeffs8(t, b1, b2, pv, strict):
    """Linearization coefficients E1..E8 of the fluctuation system.

    strict=1 keeps the literal printed g_j prefactor on the self-terms of
    E1/E2/E7/E8; strict=0 uses g_j^2, consistent with the mean-field drift.
    """
    n1, n2, A1, A2, a1, a2, R1, R2, X = scalar_block(t, b1, b2, pv)
    g1 = pv[PV_G1]
    g2 = pv[PV_G2]
    G = g1 * g2
    sz = pv[PV_SZ]
    N1 = pv[PV_N1]
    N2 = pv[PV_N2]
    gl = pv[PV_GL]
    gnl = pv[PV_GNL]
    sglnl = math.sqrt(gl * gnl)
    theta = pv[PV_THETA]
    s = 1j * sz / X

    ep1 = cmath.exp(R1 * a1)
    em1 = cmath.exp(-R1 * a1)
    ep2 = cmath.exp(R2 * a2)
    em2 = cmath.exp(-R2 * a2)

    gs1 = g1 if strict == 1 else g1 * g1
    gs2 = g2 if strict == 1 else g2 * g2
    self1 = gs1 * (3.0 * n1 / (2.0 * N1) - 9.0 * n1 * n1 / (16.0 * N1 * N1) - 1.0)
    self2 = gs2 * (3.0 * n2 / (2.0 * N2) - 9.0 * n2 * n2 / (16.0 * N2 * N2) - 1.0)

    E1 = (1j * theta - 0.5 * gl
          - (3.0 / N1) * gnl * n1 * n1
          - (4.0 / (N1 * N1)) * gnl * n1
          - (4.0 / N1) * sglnl * n1
          + s * (self1
                 + G * A2 * b1 * b2.conjugate() * em2
                 * ((1.0 / (2.0 * N1)) * ep1
                    + R1 * (b1.conjugate() / (2.0 * N1))
                    + R1 * n1 * ep1 / (2.0 * N1)
                    - 4.0 * R1 * R1 * A1 * n1
                    - 4.0 * R1 * A1 * ep1)
                 + G * A2 * b1.conjugate() * b2 * ep2
                 * (-R1 * (n1 / (2.0 * N1))
                    + (1.0 / N1) * em1
                    - 4.0 * R1 * R1 * n1 * A1
                    + 2.0 * R1 * em1 * A1
                    + 2.0 * R1 * A1
                    - R1 * em1 * n1 / (2.0 * N1))))

    E2 = (-(2.0 / (N1 * N1)) * gnl * n1 * b1 * b1
          - (2.0 / (N1 * N1)) * gnl * b1 * b1
          - (2.0 / N1) * sglnl * b1 * b1
          + s * (self1
                 + G * R1 * A2 * b1 * b1 * b2.conjugate() * em2
                 * (1.0 / (2.0 * N1)
                    + (b1 / (2.0 * N1)) * ep1
                    - 4.0 * R1 * A1 * b1)
                 + G * A2 * b1 * b2 * ep2
                 * ((1.0 / (2.0 * N1)) * em1
                    - R1 * (n1 / (2.0 * N1))
                    + 2.0 * R1 * A1 * em1
                    - 4.0 * A1 * R1 * R1 * n1
                    - R1 * (n1 / (2.0 * N1)) * em1
                    + 2.0 * R1 * A1)))

    E3 = s * G * (
        b1 * b1 * b2.conjugate() * b2.conjugate() * ep1
        * (2.0 * R2 * A2 + em2 / (4.0 * N2))
        * (2.0 * R1 * A1 - 1.0 / (4.0 * N1))
        + em1 * (2.0 * A2 * R2 * n2 - ep2 * n2 / (4.0 * N2) + A2 * ep2)
        * (n1 / (4.0 * N1) + 2.0 * R1 * A1 * n1 - A1))

    E4 = s * G * (
        ep1 * b1 * b1
        * (-2.0 * R2 * A2 * n2 + A2 * em2 - em2 * n2 / (4.0 * N2))
        * (1.0 / (4.0 * N1) - 2.0 * R1 * A1)
        + em1 * b2 * b2 * (2.0 * R2 * A2 - ep2 / (4.0 * N2))
        * (n1 / (4.0 * N1) + 2.0 * R1 * A1 * n1 - A1))

    E5 = s * G * (
        ep2 * b2 * b2 * b1.conjugate() * b1.conjugate()
        * (2.0 * R1 * A1 + em1 / (4.0 * N1))
        * (2.0 * R2 * A2 - 1.0 / (4.0 * N2))
        + em2 * (2.0 * A1 * R1 * n1 - ep1 * n1 / (4.0 * N1) + A1 * ep1)
        * (n2 / (4.0 * N2) + 2.0 * A2 * R2 * n2 - A2))

    E6 = s * G * (
        ep2 * b2 * b2
        * (-2.0 * R1 * A1 * n1 + A1 * em1 - em1 * n1 / (4.0 * N1))
        * (1.0 / (4.0 * N2) - 2.0 * R2 * A2)
        + em2 * b1 * b1 * (2.0 * R1 * A1 - ep1 / (4.0 * N1))
        * (n2 / (4.0 * N2) + 2.0 * R2 * A2 * n2 - A2))

    E7 = (-1j * theta - 0.5 * gl
          - (3.0 / N2) * gnl * n2 * n2
          - (4.0 / (N2 * N2)) * gnl * n2
          - (4.0 / N2) * sglnl * n2
          + s * (self2
                 + G * A1 * b1.conjugate() * b2 * em1
                 * ((1.0 / (2.0 * N2)) * ep2
                    + R2 * (b2.conjugate() / (2.0 * N2))
                    + R2 * n2 * ep2 / (2.0 * N2)
                    - 4.0 * R2 * R2 * A2 * n2
                    - 4.0 * R2 * A2 * ep2)
                 + G * A1 * b1 * b2.conjugate() * ep1
                 * (-R2 * (n2 / (2.0 * N2))
                    + (1.0 / (2.0 * N2)) * em2
                    - 4.0 * R2 * R2 * n2 * A2
                    + 2.0 * R2 * em2 * A2
                    + 2.0 * R2 * A2
                    - R2 * em2 * n2 / (2.0 * N2))))

    E8 = (-(2.0 / (N2 * N2)) * gnl * n2 * b2 * b2
          - (2.0 / (N2 * N2)) * gnl * b2 * b2
          - (2.0 / N2) * sglnl * b2 * b2
          + s * (self2
                 + G * R2 * A1 * b1.conjugate() * b2 * b2 * em1
                 * (1.0 / (2.0 * N2)
                    + (b2 / (2.0 * N2)) * ep2
                    - 4.0 * R2 * A2 * b2)
                 + G * A1 * b1 * b2 * ep1
                 * ((1.0 / (2.0 * N2)) * em2
                    - R2 * (n2 / (2.0 * N2))
                    + 2.0 * R2 * A2 * em2
                    - 4.0 * A2 * R2 * R2 * n2
                    - R2 * (n2 / (2.0 * N2)) * em2
                    + 2.0 * R2 * A2)))

    return E1, E2, E3, E4, E5, E6, E7, E8


@njit(cache=True)
def fill_drift_matrix(E1, E2, E3, E4, E5, E6, E7, E8, M):
    """Real 4x4 drift matrix of Y = (dq1, dp1, dq2, dp2) from E1..E8.

    Follows from db_j = (dq_j + i dp_j)/sqrt(2) applied to the complex
    linear system.
    """
    M[0, 0] = (E1 + E2).real
    M[0, 1] = -(E1 - E2).imag
    M[0, 2] = (E3 + E4).real
    M[0, 3] = -(E3 - E4).imag
    M[1, 0] = (E1 + E2).imag
    M[1, 1] = (E1 - E2).real
    M[1, 2] = (E3 + E4).imag
    M[1, 3] = (E3 - E4).real
    M[2, 0] = (E5 + E6).real
    M[2, 1] = -(E5 - E6).imag
    M[2, 2] = (E7 + E8).real
    M[2, 3] = -(E7 - E8).imag
    M[3, 0] = (E5 + E6).imag
    M[3, 1] = (E5 - E6).real
    M[3, 2] = (E7 + E8).imag
    M[3, 3] = (E7 - E8).real


@njit(cache=True)
def _combined_rhs(t, y, pv, f_mode, strict, with_cov, dy):
    """Fill dy with the combined (mean field + fluctuation moments) drift.

    Returns the coupling denominator X so callers can detect singularity.
    """
    b1 = complex(y[0], y[1])
    b2 = complex(y[2], y[3])
    n1, n2, A1, A2, a1, a2, R1, R2, X = scalar_block(t, b1, b2, pv)
    if abs(X) < pv[PV_XEPS]:
        return X

    db1, db2 = mean_drift(t, b1, b2, pv, f_mode, strict)
    dy[0] = db1.real
    dy[1] = db1.imag
    dy[2] = db2.real
    dy[3] = db2.imag

    if with_cov == 0:
        for i in range(4, STATE_LEN):
            dy[i] = 0.0
        return X

    E1, E2, E3, E4, E5, E6, E7, E8 = fluct_coeffs8(t, b1, b2, pv, strict)
    M = np.empty((4, 4))
    fill_drift_matrix(E1, E2, E3, E4, E5, E6, E7, E8, M)
    _, _, V1, V2 = noise_scalars(b1, b2, pv)

    # mean fluctuation vector (nonzero drive only when F rides the
    # fluctuation system); does not feed back into C, which stays central
    mu = y[4:8]
    dmu = dy[4:8]
    for i in range(4):
        acc = 0.0
        for j in range(4):
            acc += M[i, j] * mu[j]
        dmu[i] = acc
    if f_mode == F_FLUCTUATIONS:
        F1, F2 = f_terms(t, b1, b2, pv)
        sq2 = math.sqrt(2.0)
        dmu[0] += sq2 * F1.real
        dmu[1] += sq2 * F1.imag
        dmu[2] += sq2 * F2.real
        dmu[3] += sq2 * F2.imag

    # dC = M C + C M^T + D
    for i in range(4):
        for j in range(4):
            acc = 0.0
            for k in range(4):
                acc += M[i, k] * y[8 + 4 * k + j] + y[8 + 4 * i + k] * M[j, k]
            dy[8 + 4 * i + j] = acc
    dy[8 + 0] += V1
    dy[8 + 5] += V1
    dy[8 + 10] += V2
    dy[8 + 15] += V2
    return X


@njit(cache=True)
def rk4_integrate(y0, t0, dt, n_steps, stride, pv, f_mode, strict, with_cov,
                  hp_frac, t_out, y_out):
    """Classical fixed-step 4th-order Runge-Kutta over the combined state.

    Emits the state every `stride` steps (plus the initial state) into the
    preallocated t_out / y_out buffers.  Returns
    (status, fail_t, n_emitted, hp_first_t, hp_max_ratio).
    """
    y = y0.copy()
    k1 = np.empty(STATE_LEN)
    k2 = np.empty(STATE_LEN)
    k3 = np.empty(STATE_LEN)
    k4 = np.empty(STATE_LEN)
    ytmp = np.empty(STATE_LEN)

    N1 = pv[PV_N1]
    N2 = pv[PV_N2]
    hp_first_t = -1.0
    hp_max = 0.0

    t = t0
    t_out[0] = t
    y_out[0, :] = y
    n_emit = 1

    for step in range(n_steps):
        X = _combined_rhs(t, y, pv, f_mode, strict, with_cov, k1)
        if abs(X) < pv[PV_XEPS]:
            return SINGULAR, t, n_emit, hp_first_t, hp_max
        for i in range(STATE_LEN):
            ytmp[i] = y[i] + 0.5 * dt * k1[i]
        X = _combined_rhs(t + 0.5 * dt, ytmp, pv, f_mode, strict, with_cov, k2)
        if abs(X) < pv[PV_XEPS]:
            return SINGULAR, t, n_emit, hp_first_t, hp_max
        for i in range(STATE_LEN):
            ytmp[i] = y[i] + 0.5 * dt * k2[i]
        X = _combined_rhs(t + 0.5 * dt, ytmp, pv, f_mode, strict, with_cov, k3)
        if abs(X) < pv[PV_XEPS]:
            return SINGULAR, t, n_emit, hp_first_t, hp_max
        for i in range(STATE_LEN):
            ytmp[i] = y[i] + dt * k3[i]
        X = _combined_rhs(t + dt, ytmp, pv, f_mode, strict, with_cov, k4)
        if abs(X) < pv[PV_XEPS]:
            return SINGULAR, t, n_emit, hp_first_t, hp_max

        ok = True
        for i in range(STATE_LEN):
            y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if not np.isfinite(y[i]):
                ok = False
        t = t0 + (step + 1) * dt
        if not ok:
            return NONFINITE, t, n_emit, hp_first_t, hp_max

        if with_cov == 1:
            # enforce exact symmetry of C after every step
            for i in range(4):
                for j in range(i + 1, 4):
                    v = 0.5 * (y[8 + 4 * i + j] + y[8 + 4 * j + i])
                    y[8 + 4 * i + j] = v
                    y[8 + 4 * j + i] = v

        r1 = (y[0] * y[0] + y[1] * y[1]) / (2.0 * N1)
        r2 = (y[2] * y[2] + y[3] * y[3]) / (2.0 * N2)
        r = r1 if r1 > r2 else r2
        if r > hp_max:
            hp_max = r
        if r >= hp_frac and hp_first_t < 0.0:
            hp_first_t = t

        if (step + 1) % stride == 0:
            t_out[n_emit] = t
            y_out[n_emit, :] = y
            n_emit += 1

    return OK, t, n_emit, hp_first_t, hp_max
