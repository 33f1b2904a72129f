import math

import numpy as np
import pytest
from scipy import integrate

from critline.errors import DomainError
from critline.forms import build_delta, load_maass_table
from critline.oscillatory import Window
from critline.voronoi import (
    MELLIN_SPLIT, VoronoiKernel, _mellin_small_x, default_test_function, mellin_cutoff, mellin_phi,
    mellin_phi_exact, mellin_slope, phi_minus, phi_plus, phi_plus_asymptotic, voronoi_sides,
)

MAASS = load_maass_table()
K1 = VoronoiKernel(mu=1.0)


def test_phi_plus_small_x_finite():
    v = phi_plus(K1, 1e-3)
    assert math.isfinite(v) and abs(v) <= 10


def test_phi_plus_matches_asymptotic_at_25():
    assert abs(phi_plus(K1, 25.0) - phi_plus_asymptotic(K1, 25.0)) <= 25.0 ** -1.5


@pytest.mark.parametrize("x", [10.0, 30.0, 100.0])
@pytest.mark.parametrize("J", [0, 1, 2])
def test_asymptotic_envelopes(x, J):
    k = VoronoiKernel(mu=1.0, J=J)
    assert abs(phi_plus(k, x) - phi_plus_asymptotic(k, x)) <= x ** (-J / 2 - 0.75)


def test_asymptotic_higher_order_better():
    p = phi_plus(K1, 100.0)
    d0 = abs(p - phi_plus_asymptotic(VoronoiKernel(mu=1.0, J=0), 100.0))
    d1 = abs(p - phi_plus_asymptotic(VoronoiKernel(mu=1.0, J=1), 100.0))
    assert d1 < d0


def test_asymptotic_leading_scaling():
    k = VoronoiKernel(mu=1.0, J=0)
    for x in (10.0, 30.0):
        assert abs(phi_plus_asymptotic(k, 16 * x)) <= 2 * 16 ** -0.25 * abs(phi_plus_asymptotic(k, x))


def test_asymptotic_threshold():
    with pytest.raises(DomainError):
        phi_plus_asymptotic(K1, 2.0)


def test_phi_linear_in_F():
    F1 = default_test_function(1.2, 0.1)
    F2 = default_test_function(1.9, 0.15)
    both = Window(lambda y: F1(y) + F2(y), F1.lo, F1.hi)
    x = np.array([0.5, 3.0, 17.0])
    s = phi_plus(K1.with_F(both), x)
    assert np.max(np.abs(s - phi_plus(K1.with_F(F1), x) - phi_plus(K1.with_F(F2), x))) <= 1e-9


def test_phi_minus_decay():
    assert abs(phi_minus(K1, 30.0)) <= 30.0 ** -10
    v = np.abs(phi_minus(K1, np.array([10.0, 20.0, 40.0, 80.0])))
    assert np.all(np.diff(v) < 0)


def test_phi_minus_decay_exponent_maass():
    k = VoronoiKernel(mu=MAASS.mu)
    x = np.geomspace(30.0, 60.0, 12)
    slope = np.polyfit(np.log(x), np.log(np.abs(phi_minus(k, x))), 1)[0]
    assert slope <= -10


def test_mu_continuity_and_floor():
    a = phi_minus(VoronoiKernel(mu=1e-3), 5.0)
    b = phi_minus(VoronoiKernel(mu=2e-3), 5.0)
    assert abs(a - b) <= 1e-4
    with pytest.raises(DomainError):
        VoronoiKernel(mu=1e-4)


def test_support_enforced():
    with pytest.raises(DomainError):
        VoronoiKernel(F=default_test_function().__class__(lambda y: y, 0.1, 3.0))


def test_mellin_matches_closed_form():
    t = np.array([0.0, 7.0, 25.0, 60.0])
    for sign in (1, -1):
        m = mellin_phi(K1, sign, t)
        e = mellin_phi_exact(K1, sign, t)
        assert np.max(np.abs(m - e)) <= 1e-9


def test_mellin_real_point_is_definition():
    X, bound = mellin_cutoff(K1, 1)
    assert bound <= 1e-6
    head = _mellin_small_x(K1, 1, np.array([0.05 + 0j]), MELLIN_SPLIT)[0]
    body = 0.0
    edges = np.geomspace(MELLIN_SPLIT, X, 40)
    for a, b in zip(edges[:-1], edges[1:]):
        body += integrate.quad(lambda x: phi_plus(K1, x) * x ** -0.95, a, b, epsabs=1e-13, limit=200)[0]
    assert abs(mellin_phi(K1, 1, 0.0)[0] - (head + body)) <= 1e-8


def test_mellin_decays():
    v = np.abs(mellin_phi(K1, 1, np.array([10.0, 40.0])))
    assert v[1] <= v[0] / 4


def test_mellin_slope_and_stability():
    a = mellin_slope(K1, "plus")
    b = mellin_slope(K1, "plus", refine=2)
    assert a <= -2
    assert abs(a - b) <= 0.1


@pytest.mark.parametrize("q,a,N", [(1, 1, 10.0), (5, 2, 20.0), (7, 3, 20.0)])
def test_voronoi_identity(q, a, N):
    assert voronoi_sides(MAASS, a, q, N).residual <= 1e-4


def test_voronoi_shift_invariant():
    r1 = voronoi_sides(MAASS, 2, 5, 20.0)
    r2 = voronoi_sides(MAASS, 7, 5, 20.0)
    assert r1.lhs == pytest.approx(r2.lhs, abs=1e-12)
    assert r1.residual == pytest.approx(r2.residual, abs=1e-12)


def test_voronoi_bilinear_in_F():
    k = VoronoiKernel(mu=MAASS.mu)
    F = k.F
    k2 = k.with_F(Window(lambda y: 2 * F(y), F.lo, F.hi))
    a = voronoi_sides(MAASS, 1, 1, 10.0, k)
    b = voronoi_sides(MAASS, 1, 1, 10.0, k2)
    assert b.lhs == pytest.approx(2 * a.lhs, abs=1e-12)
    assert b.rhs == pytest.approx(2 * a.rhs, abs=1e-10)


def test_voronoi_maass_only():
    with pytest.raises(DomainError):
        voronoi_sides(build_delta(100), 1, 1, 10.0)
    with pytest.raises(DomainError):
        voronoi_sides(MAASS, 2, 4, 10.0)
