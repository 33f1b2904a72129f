import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from critline.arith import primes_up_to
from critline.errors import DomainError, TableTooShort
from critline.forms import (
    FormKind, IngestError, build_delta, hecke_defect, ingest_eigenvalues, l_at_one, l_one_smoothed_identity,
    load_maass_table, rankin_selberg_ratios,
)
from critline.lfunc import CutoffKernel, l_value_real

DELTA = build_delta(10_000)


def _prime_rows(f, n_max):
    return "".join(f"{p}\t{float(f.eigenvalues[p - 1])!r}\n" for p in primes_up_to(n_max).tolist())


def test_delta_examples():
    lam = DELTA.eigenvalues
    assert lam[0] == 1.0
    assert lam[1] == pytest.approx(-0.530330085889911, abs=1e-12)
    assert lam[1] ** 2 - lam[3] == pytest.approx(1.0, abs=1e-14)
    assert lam[1] < 0 < lam[2]


def test_delta_hecke_exact():
    assert hecke_defect(DELTA.eigenvalues, 10_000) <= 1e-12


@given(st.integers(1, 100), st.integers(1, 100))
def test_hecke_relation_sampled(m, n):
    lam = DELTA.eigenvalues
    rhs = sum(lam[m * n // (e * e) - 1] for e in range(1, math.gcd(m, n) + 1) if m % e == 0 and n % e == 0)
    assert lam[m - 1] * lam[n - 1] == pytest.approx(rhs, abs=1e-12)


def test_rankin_selberg():
    r = rankin_selberg_ratios(DELTA.eigenvalues)
    assert r.min() >= 0.05 and r.max() <= 20
    big = r[10:]  # dyadic x from 2^10
    assert big.max() / big.min() < 2


def test_descriptor_immutable():
    with pytest.raises(ValueError):
        DELTA.eigenvalues[0] = 2.0
    with pytest.raises(Exception):
        DELTA.mu = 3.0


def test_table_too_short():
    with pytest.raises(TableTooShort):
        build_delta(10).require(11)


def test_ingest_single_row():
    f = ingest_eigenvalues("1\t1\n", None, 1)
    assert f.n_max == 1


def test_ingest_primes_reproduce_delta():
    f = ingest_eigenvalues(io.StringIO(_prime_rows(DELTA, 5000)), None, 5000)
    assert np.max(np.abs(f.eigenvalues - DELTA.eigenvalues[:5000])) <= 1e-12


def test_ingest_rejects_non_multiplicative():
    rows = "".join(f"{n}\t{float(DELTA.eigenvalues[n - 1])!r}\n" for n in range(1, 13))
    bad = rows.replace(f"6\t{float(DELTA.eigenvalues[5])!r}", "6\t0.123")
    with pytest.raises(IngestError):
        ingest_eigenvalues(bad, None, 12)


def test_ingest_rejects_garbage():
    with pytest.raises(IngestError):
        ingest_eigenvalues("1\t1\n2\tfoo\n", None, 2)
    with pytest.raises(IngestError):
        ingest_eigenvalues("1\t1\n", None, 5)  # primes 2, 3, 5 missing


def test_deligne_guard():
    with pytest.raises(DomainError):
        ingest_eigenvalues("1\t1\n2\t2.5\n3\t0.1\n", None, 3)


def test_maass_table():
    f = load_maass_table()
    assert f.kind is FormKind.MAASS
    assert f.mu == pytest.approx(13.779751351890738, abs=1e-12)
    assert f.n_max == 449
    assert hecke_defect(f.eigenvalues, f.n_max) <= 1e-12
    assert f.eigenvalues[1] == pytest.approx(1.54930447794174, abs=1e-8)


def test_l_at_one_delta():
    v = l_at_one(DELTA)
    assert v > 0
    assert v == pytest.approx(0.8393455120319386, abs=1e-10)
    # l_value_real already checks contour refinement; a different test function must agree too
    assert abs(l_at_one(DELTA, CutoffKernel(width=2.5)) - v) <= 1e-8


def test_l_at_one_real():
    assert abs(l_value_real(DELTA, 1.0).imag) <= 1e-10
    assert abs(l_value_real(load_maass_table(), 1.0).imag) <= 1e-10


def test_l_at_one_identity_oracle():
    f = build_delta(130_000)
    assert l_one_smoothed_identity(f, 2.0e4) == pytest.approx(l_at_one(DELTA), rel=1e-3)
