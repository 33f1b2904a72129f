import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from critline.arith import (
    KloostermanQuery, divisor_count, divisor_counts, euler_phi, kloosterman_matrix, kloosterman_residues,
    kloosterman_sum, mod_inverse, primes_up_to, ramanujan_tau, tau_normalized,
)
from critline.errors import DomainError


def _tau_bruteforce(n_max):
    # q prod (1 - q^k)^24 by repeated schoolbook multiplication
    poly = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for _ in range(24):
            for i in range(n_max, k - 1, -1):
                poly[i] -= poly[i - k]
    return poly[:n_max]


def test_divisor_examples():
    assert divisor_count(1) == 1
    assert divisor_count(97) == 2
    assert divisor_count(12) == 6
    with pytest.raises(DomainError):
        divisor_count(0)


def test_divisor_sieve_matches_trial_division():
    d = divisor_counts(2000)
    assert all(d[n - 1] == divisor_count(n) for n in range(1, 2001))


@given(st.integers(1, 100), st.integers(1, 100))
def test_divisor_multiplicative(m, n):
    if math.gcd(m, n) == 1:
        assert divisor_count(m * n) == divisor_count(m) * divisor_count(n)


def test_tau_examples():
    assert ramanujan_tau(1) == [1]
    t = ramanujan_tau(3)
    assert t[1] == -24 and t[2] == 252


def test_tau_matches_bruteforce_expansion():
    assert ramanujan_tau(60) == _tau_bruteforce(60)


def test_tau_hecke_relations_exact():
    N = 10_000
    tau = ramanujan_tau(N)
    T = lambda n: tau[n - 1]
    for m in range(2, 101):
        for n in range(m + 1, N // m + 1):
            if math.gcd(m, n) == 1:
                assert T(m) * T(n) == T(m * n)
    for p in primes_up_to(100).tolist():
        pr = p
        while pr * p <= N:
            prev = T(pr // p) if pr > p else 1
            assert T(p) * T(pr) == T(pr * p) + p**11 * prev
            pr *= p


def test_tau_normalized_deligne():
    lam = tau_normalized(5000)
    p = primes_up_to(5000)
    assert np.max(np.abs(lam[p - 1])) <= 2.0
    assert lam[1] == pytest.approx(-24 / 2**5.5, rel=1e-15)


def test_mod_inverse_examples():
    assert mod_inverse(1, 5) == 1
    assert mod_inverse(3, 7) == 5
    with pytest.raises(DomainError):
        mod_inverse(2, 4)


@given(st.integers(2, 10**6), st.integers(1, 10**6))
def test_mod_inverse_involution(c, a):
    if math.gcd(a, c) == 1:
        b = mod_inverse(a, c)
        assert 1 <= b <= c - 1 or c == 2
        assert mod_inverse(b, c) == a % c
        assert a * b % c == 1


def test_kloosterman_examples():
    for c in (1, 2, 12, 30, 97):
        assert kloosterman_sum((0, 0, c)) == pytest.approx(euler_phi(c), abs=1e-9)
    assert kloosterman_sum((1, 1, 2)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DomainError):
        KloostermanQuery(1, 1, 0)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 60))
def test_kloosterman_symmetric(a, b, c):
    assert kloosterman_sum((a, b, c)) == pytest.approx(kloosterman_sum((b, a, c)), abs=1e-9)


@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(1, 25), st.integers(1, 25))
def test_kloosterman_twisted_multiplicativity(a, b, c1, c2):
    if math.gcd(c1, c2) != 1:
        return
    c1b, c2b = mod_inverse(c1, c2), mod_inverse(c2, c1)
    lhs = kloosterman_sum((a, b, c1 * c2))
    rhs = kloosterman_sum((a * c2b * c2b, b, c1)) * kloosterman_sum((a * c1b * c1b, b, c2))
    assert lhs == pytest.approx(rhs, abs=1e-8)


def test_kloosterman_matrix_matches_enumeration():
    M = kloosterman_matrix(range(-3, 4), range(0, 5), 15)
    for i, m in enumerate(range(-3, 4)):
        for j, n in enumerate(range(0, 5)):
            assert M[i, j] == pytest.approx(kloosterman_sum((m, n, 15)), abs=1e-10)


def test_weil_bound_exhaustive_small():
    # every S(a,b;p) with p not dividing ab equals some S(1,r;p)
    for p in primes_up_to(300).tolist():
        assert np.max(np.abs(kloosterman_residues(p))) <= 2 * math.sqrt(p) + 1e-9
