"""Classical, quantum, and phase-offset synchronization measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCovariance, DegenerateOrbit, EmptyWindow

PERFECT_SYNC_EPS = 1e-12


@dataclass(frozen=True)
class ClassicalSync:
    """Value of the mean-field (Mari-style) measure with its raw error.

    When the error q_-^2 + p_-^2 underflows PERFECT_SYNC_EPS the measure
    diverges; `perfect` is set and `value` is +inf as a sentinel, with the
    raw error still reported.
    """

    value: float
    error: float
    perfect: bool


def classical_sync(qbar1, pbar1, qbar2, pbar2) -> ClassicalSync:
    """S_c = 1 / (q_-^2 + p_-^2) on mean quadratures."""
    qm = (qbar1 - qbar2) / math.sqrt(2.0)
    pm = (pbar1 - pbar2) / math.sqrt(2.0)
    err = qm * qm + pm * pm
    if err < PERFECT_SYNC_EPS:
        return ClassicalSync(math.inf, err, True)
    return ClassicalSync(1.0 / err, err, False)


def quantum_sync_phi(C: np.ndarray, phi: float) -> float:
    """Phase-offset quantum measure from the covariance matrix.

    S_q^phi = 2 [C11 + C22 + C33 + C44 + 2 sin(phi) C23 - 2 sin(phi) C14
                 - 2 cos(phi) C13 - 2 cos(phi) C24]^-1
    (1-based indices).
    """
    C = np.asarray(C)
    s = math.sin(phi)
    c = math.cos(phi)
    bracket = (C[..., 0, 0] + C[..., 1, 1] + C[..., 2, 2] + C[..., 3, 3]
               + 2.0 * s * C[..., 1, 2] - 2.0 * s * C[..., 0, 3]
               - 2.0 * c * C[..., 0, 2] - 2.0 * c * C[..., 1, 3])
    if np.ndim(bracket) == 0:
        if bracket <= 0.0:
            raise DegenerateCovariance(f"bracket {float(bracket):.3e} <= 0")
        return 2.0 / float(bracket)
    if (bracket <= 0.0).any():
        raise DegenerateCovariance("bracket <= 0 at some samples")
    return 2.0 / bracket


def quantum_sync(C: np.ndarray) -> float:
    """Complete quantum synchronization (phi = 0)."""
    return quantum_sync_phi(C, 0.0)


def phase_difference(orbit1, orbit2) -> float:
    """Circular mean of phi_2(t) - phi_1(t) over the shared window, in (-pi, pi]."""
    if len(orbit1.phi) == 0 or len(orbit2.phi) == 0:
        raise DegenerateOrbit("empty phase series")
    d = orbit2.phi - orbit1.phi
    z = np.exp(1j * d).mean()
    if abs(z) < 1e-12:
        raise DegenerateOrbit("phase difference has no circular mean")
    ang = float(np.angle(z))
    if ang <= -math.pi:
        ang += 2.0 * math.pi
    return ang


def time_average(t: np.ndarray, series: np.ndarray, window_fraction: float = 0.2) -> float:
    """Arithmetic mean of the series over the final `window_fraction` of time."""
    if not 0.0 < window_fraction <= 1.0:
        raise ValueError("window fraction must be in (0, 1]")
    t = np.asarray(t)
    series = np.asarray(series)
    if len(t) == 0:
        raise EmptyWindow("empty series")
    t_start = t[-1] - window_fraction * (t[-1] - t[0])
    mask = t >= t_start
    if not mask.any():
        raise EmptyWindow("no samples in averaging window")
    return float(np.mean(series[mask]))


def instantaneous_phase_difference(qbar1, pbar1, qbar2, pbar2,
                                   radius_eps: float = 1e-9) -> np.ndarray:
    """Pointwise unwrapped phi_2 - phi_1; zero where either radius vanishes.

    Used for the per-row phase column of trajectory datasets, where early
    samples sit at the origin and carry no defined phase.
    """
    q1 = np.asarray(qbar1)
    p1 = np.asarray(pbar1)
    q2 = np.asarray(qbar2)
    p2 = np.asarray(pbar2)
    r1 = np.hypot(q1, p1)
    r2 = np.hypot(q2, p2)
    good = (r1 >= radius_eps) & (r2 >= radius_eps)
    phi = np.zeros_like(r1)
    if good.any():
        phi1 = np.unwrap(np.arctan2(p1[good], q1[good]))
        phi2 = np.unwrap(np.arctan2(p2[good], q2[good]))
        d = phi2 - phi1
        # fold to (-pi, pi] without breaking continuity within the run
        d = d - 2.0 * math.pi * np.round(np.median(d) / (2.0 * math.pi))
        phi[good] = d
    return phi
