import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsync import (DegenerateCovariance, DegenerateOrbit, EmptyWindow,
                      classical_sync, instantaneous_phase_difference,
                      phase_difference, quantum_sync, quantum_sync_phi,
                      time_average)
from spinsync.meanfield import OrbitSummary
from spinsync.metrics import PERFECT_SYNC_EPS


def test_classical_sync_value():
    # q_- = (q1-q2)/sqrt(2), p_- likewise; S_c = 1/(q_-^2 + p_-^2)
    s = classical_sync(2.0, 1.0, 0.0, 0.0)
    assert s.error == pytest.approx((4.0 + 1.0) / 2.0, abs=1e-15)
    assert s.value == pytest.approx(2.0 / 5.0, abs=1e-15)
    assert not s.perfect


def test_classical_sync_perfect_sentinel():
    s = classical_sync(1.234, -0.5, 1.234, -0.5)
    assert s.perfect
    assert s.value == math.inf
    assert s.error < PERFECT_SYNC_EPS


@given(st.floats(-10, 10), st.floats(-10, 10),
       st.floats(-10, 10), st.floats(-10, 10))
@settings(max_examples=100, deadline=None)
def test_classical_sync_scale_free_property(q1, p1, q2, p2):
    s = classical_sync(q1, p1, q2, p2)
    if s.perfect:
        assert s.value == math.inf
    else:
        assert s.value > 0.0
        assert s.value == pytest.approx(1.0 / s.error, rel=1e-12)


def test_quantum_sync_vacuum_is_unity():
    assert quantum_sync(0.5 * np.eye(4)) == pytest.approx(1.0, abs=1e-15)


def test_quantum_sync_thermal():
    for n in (0.0, 0.5, 2.0):
        C = (n + 0.5) * np.eye(4)
        assert quantum_sync(C) == pytest.approx(1.0 / (2.0 * n + 1.0),
                                                abs=1e-14)


def test_quantum_sync_phi_zero_identity(rng):
    for _ in range(50):
        A = rng.standard_normal((4, 4))
        C = A @ A.T + 0.1 * np.eye(4)
        assert quantum_sync_phi(C, 0.0) == quantum_sync(C)


def test_quantum_sync_phi_formula_direct():
    C = np.arange(16, dtype=float).reshape(4, 4)
    C = 0.5 * (C + C.T) + 8.0 * np.eye(4)
    phi = 0.7
    s, c = math.sin(phi), math.cos(phi)
    bracket = (C[0, 0] + C[1, 1] + C[2, 2] + C[3, 3]
               + 2 * s * C[1, 2] - 2 * s * C[0, 3]
               - 2 * c * C[0, 2] - 2 * c * C[1, 3])
    assert quantum_sync_phi(C, phi) == pytest.approx(2.0 / bracket, rel=1e-14)


def test_quantum_sync_phi_finds_rotation_offset(rng):
    """If mode 2 is mode 1 rotated by phi0, S_q^phi peaks at phi0."""
    phi0 = 0.9
    n = 200000
    y1 = rng.standard_normal((2, n))
    R = np.array([[math.cos(phi0), -math.sin(phi0)],
                  [math.sin(phi0), math.cos(phi0)]])
    y2 = R @ y1 + 0.05 * rng.standard_normal((2, n))
    Y = np.vstack([y1, y2])
    C = np.cov(Y)
    grid = np.linspace(-math.pi, math.pi, 721)
    vals = [quantum_sync_phi(C, g) for g in grid]
    assert grid[int(np.argmax(vals))] == pytest.approx(phi0, abs=0.02)
    assert max(vals) > quantum_sync_phi(C, 0.0)


def test_quantum_sync_degenerate_raises():
    with pytest.raises(DegenerateCovariance):
        quantum_sync(np.zeros((4, 4)))
    # perfectly correlated error mode: bracket is exactly zero
    C = 0.5 * np.eye(4)
    C[0, 2] = C[2, 0] = 0.5
    C[1, 3] = C[3, 1] = 0.5
    with pytest.raises(DegenerateCovariance):
        quantum_sync(C)


def test_quantum_sync_vectorized():
    C = np.stack([0.5 * np.eye(4), 1.5 * np.eye(4)])
    out = quantum_sync_phi(C, 0.0)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(1.0)
    assert out[1] == pytest.approx(1.0 / 3.0)


def _orbit(phis):
    phis = np.asarray(phis, dtype=float)
    return OrbitSummary(amplitude=1.0, period=1.0,
                        t=np.arange(len(phis), dtype=float), phi=phis)


def test_phase_difference_constant_offset():
    base = np.linspace(0.0, 40.0, 500)
    assert phase_difference(_orbit(base), _orbit(base + 0.6)) == \
        pytest.approx(0.6, abs=1e-12)
    # offsets live on the circle: 2 pi wraps away
    assert phase_difference(_orbit(base), _orbit(base + 0.6 + 2 * math.pi)) == \
        pytest.approx(0.6, abs=1e-10)


def test_phase_difference_range_convention():
    base = np.zeros(10)
    val = phase_difference(_orbit(base), _orbit(base + math.pi))
    assert val == pytest.approx(math.pi, abs=1e-12)  # (-pi, pi]: +pi, not -pi
    val = phase_difference(_orbit(base), _orbit(base - 0.4))
    assert val == pytest.approx(-0.4, abs=1e-12)


def test_phase_difference_degenerate():
    with pytest.raises(DegenerateOrbit):
        phase_difference(_orbit([]), _orbit([]))
    # antipodal mass cancels: no circular mean
    d = np.array([0.0, math.pi, 0.0, math.pi])
    with pytest.raises(DegenerateOrbit):
        phase_difference(_orbit(np.zeros(4)), _orbit(d))


def test_time_average_window():
    t = np.linspace(0.0, 100.0, 1001)
    series = np.where(t < 80.0, 5.0, 1.0)
    # final 20% of the span is exactly the value-1 plateau
    assert time_average(t, series, 0.2) == pytest.approx(1.0, abs=1e-12)
    assert time_average(t, series, 1.0) == pytest.approx(np.mean(series))
    with pytest.raises(ValueError):
        time_average(t, series, 0.0)
    with pytest.raises(ValueError):
        time_average(t, series, 1.5)
    with pytest.raises(EmptyWindow):
        time_average(np.array([]), np.array([]))


def test_instantaneous_phase_difference_basics():
    t = np.linspace(0.0, 50.0, 2000)
    q1, p1 = np.cos(t), np.sin(t)
    q2, p2 = np.cos(t + 0.8), np.sin(t + 0.8)
    d = instantaneous_phase_difference(q1, p1, q2, p2)
    assert np.allclose(d, 0.8, atol=1e-10)


def test_instantaneous_phase_difference_origin_rows():
    q1 = np.array([0.0, 1.0, 1.0])
    p1 = np.array([0.0, 0.0, 0.0])
    q2 = np.array([0.0, 0.0, 0.0])
    p2 = np.array([0.0, 1.0, 1.0])
    d = instantaneous_phase_difference(q1, p1, q2, p2)
    assert d[0] == 0.0  # undefined phase at the origin reports 0
    assert d[1] == pytest.approx(math.pi / 2.0, abs=1e-12)


@given(st.floats(-math.pi + 1e-6, math.pi - 1e-6))
@settings(max_examples=60, deadline=None)
def test_phase_difference_roundtrip_property(offset):
    base = np.linspace(0.0, 30.0, 300)
    val = phase_difference(_orbit(base), _orbit(base + offset))
    assert val == pytest.approx(offset, abs=1e-9)
