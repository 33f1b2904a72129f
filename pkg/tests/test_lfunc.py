import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from critline.errors import DomainError
from critline.forms import build_delta
from critline.lfunc import (
    CutoffKernel, DyadicPartition, afe_l_value, afe_l_values, afe_zeta_squared, afe_zeta_squared_values,
    collapse_identity_residual, l_value_direct, l_values_direct, w_cutoff, zeta, zeta_line,
)

DELTA = build_delta(500_000)


def _zeta_mp(s):
    with mpmath.workdps(30):
        return complex(mpmath.zeta(mpmath.mpc(s.real, s.imag)))


def test_zeta_examples():
    assert zeta(2) == pytest.approx(math.pi**2 / 6, abs=1e-14)
    assert zeta(0.5) == pytest.approx(-1.4603545088095868, abs=1e-13)
    with pytest.raises(DomainError):
        zeta(1)


@given(st.floats(-0.5, 3.0), st.floats(-3000, 3000))
def test_zeta_mpmath_and_conjugate(x, y):
    s = complex(x, y)
    if abs(s - 1) < 1e-3:
        return
    v = zeta(s)
    assert zeta(s.conjugate()) == pytest.approx(v.conjugate(), abs=1e-12 * max(1, abs(v)))
    assert abs(v - _zeta_mp(s)) <= 1e-10 * max(1.0, abs(v))


def test_zeta_line_matches_scalar():
    t = np.array([-1234.5, 14.134725141734693, 100.0, 5000.25])
    z = zeta_line(t)
    for a, b in zip(z, t):
        assert a == pytest.approx(zeta(0.5 + 1j * b), abs=1e-12)
    assert abs(z[1]) < 1e-10  # first zero


@pytest.mark.parametrize("t", [100.0, 1000.0])
def test_w_cutoff_transition(t):
    k = CutoffKernel(width=3.0)
    s = 0.5 + 1j * t
    # d = 2, so the transition sits at x = t
    assert abs(w_cutoff(k, DELTA, s, t / 100) - 1) <= 1e-3
    assert abs(w_cutoff(k, DELTA, s, 100 * t)) <= 1e-6


def test_w_cutoff_contour_independent():
    s = 0.5 + 300j
    a = w_cutoff(CutoffKernel(width=3.0, contour_re=1.0), DELTA, s, 300.0)
    b = w_cutoff(CutoffKernel(width=3.0, contour_re=0.5), DELTA, s, 300.0)
    assert abs(a - b) <= 1e-6


def test_w_cutoff_rejects_off_line():
    with pytest.raises(DomainError):
        w_cutoff(CutoffKernel(), DELTA, 0.7 + 100j, 1.0)


def test_direct_independent_of_width():
    t = np.array([150.0, 700.0])
    a = l_values_direct(DELTA, t, width=3.0)
    b = l_values_direct(DELTA, t, width=5.0)
    assert np.max(np.abs(a - b)) <= 1e-9


def test_direct_reflection():
    assert l_value_direct(DELTA, -321.0) == pytest.approx(l_value_direct(DELTA, 321.0).conjugate(), abs=1e-10)


def test_partition_of_unity():
    assert DyadicPartition().identity_defect(100_000) <= 1e-10


@given(st.floats(0.81, 2.19))
def test_partition_support(x):
    p = DyadicPartition()
    assert p.v1(np.array([x]))[0] >= 0
    assert p.v1(np.array([0.79]))[0] == 0 and p.v1(np.array([2.21]))[0] == 0


def test_afe_reflection():
    a = afe_l_value(DELTA, 250.0)
    b = afe_l_value(DELTA, -250.0)
    assert abs(a.conjugate() - b) <= 1e-6
    z = afe_zeta_squared(250.0)
    assert abs(afe_zeta_squared(-250.0) - z.conjugate()) <= 1e-6
    assert abs(afe_zeta_squared(-250.0) - zeta(0.5 + 250j) ** 2) <= 5 / math.sqrt(250)


def test_afe_deterministic():
    t = np.linspace(100, 200, 7)
    a = afe_l_values(DELTA, t)
    b = afe_l_values(DELTA, t)
    assert np.array_equal(a, b)


def test_afe_envelopes_t100():
    assert abs(afe_l_value(DELTA, 100.0) - l_value_direct(DELTA, 100.0)) <= 5 / math.sqrt(100)
    assert abs(afe_zeta_squared(100.0) - zeta(0.5 - 100j) ** 2) <= 5 / math.sqrt(100)


def _rms_defect(T, which):
    t = np.linspace(T, 2 * T, 64)
    if which == "L":
        d = afe_l_values(DELTA, t) - l_values_direct(DELTA, t)
    else:
        d = afe_zeta_squared_values(t) - zeta_line(-t) ** 2
    return float(np.sqrt(np.mean(np.abs(d) ** 2)))


@pytest.mark.parametrize("which", ["L", "zeta2"])
def test_afe_defect_shrinks(which):
    a, b = _rms_defect(100.0, which), _rms_defect(400.0, which)
    assert b * 1.5 <= a


def test_afe_needs_height():
    with pytest.raises(DomainError):
        afe_l_value(DELTA, 10.0)


def test_collapse_identity():
    assert collapse_identity_residual(DELTA, 1.5, 100_000) <= 1e-2
    assert collapse_identity_residual(DELTA, 1.5, 25_000) > collapse_identity_residual(DELTA, 1.5, 100_000)
    assert collapse_identity_residual(DELTA, 2.0, 10_000) <= 1e-3
