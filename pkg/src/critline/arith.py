"""Exact integer arithmetic: divisor counts, Ramanujan tau, Kloosterman sums, inverses."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None
    _mpz = int

# Largest tau table we agree to build; beyond this the packed integers get too big.
TAU_LIMIT = 4_000_000
_SLOT_BITS = 128  # |tau(n)| < 2^127 for n <= TAU_LIMIT by Deligne's bound


@dataclass(frozen=True)
class KloostermanQuery:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if int(self.c) < 1:
            raise DomainError("Kloosterman modulus c must be >= 1")


def divisor_count(n: int) -> int:
    """Number of positive divisors of n (trial division)."""
    n = int(n)
    if n < 1:
        raise DomainError("divisor_count needs n >= 1")
    count = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        count *= e + 1
        p += 1 if p == 2 else 2
    if n > 1:
        count *= 2
    return count


def divisor_counts(n_max: int) -> np.ndarray:
    """d(1..n_max) by a sieve; index 0 holds d(1)."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    d = np.zeros(n_max + 1, dtype=np.int64)
    for k in range(1, n_max + 1):
        d[k::k] += 1
    return d[1:]


def _tau_slots(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed 128-bit coefficients of prod(1-q^k)^24 for q^0..q^(n_max-1).

    Uses Jacobi's identity prod(1-q^k)^3 = sum (-1)^j (2j+1) q^{j(j+1)/2}, then
    three exact squarings of the Kronecker-packed integer.  Returns (hi, lo) with
    the value hi * 2^64 + lo, hi signed.
    """
    m = n_max
    nb = _SLOT_BITS // 8
    j = np.arange(int(math.isqrt(2 * m)) + 2)
    pos = j * (j + 1) // 2
    keep = pos < m
    j, pos = j[keep], pos[keep]
    vals = (2 * j + 1) * np.where(j % 2 == 0, 1, -1)

    def pack(sel):
        buf = bytearray(m * nb)
        for p, v in zip(pos[sel].tolist(), np.abs(vals[sel]).tolist()):
            buf[p * nb:p * nb + 8] = int(v).to_bytes(8, "little")
        return _mpz(int.from_bytes(bytes(buf), "little"))

    x = pack(vals > 0) - pack(vals < 0)
    mask = (_mpz(1) << (_SLOT_BITS * m)) - 1
    for _ in range(3):
        x = (x * x) & mask  # two's complement truncation keeps the low slots exact
    raw = int(x).to_bytes(m * nb, "little")
    words = np.frombuffer(raw, dtype="<u8").reshape(m, 2)
    lo = words[:, 0].copy()
    hi = words[:, 1].view(np.int64).copy()
    # a negative slot borrowed one unit from the next slot; give it back
    borrow = np.concatenate([[0], (hi[:-1] < 0).astype(np.int64)])
    lo_sum = lo + borrow.astype(np.uint64)
    carry = (lo_sum < lo).astype(np.int64)
    return hi + carry, lo_sum


def _check_tau_size(n_max: int) -> None:
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > TAU_LIMIT:
        raise MemoryError(f"tau table of length {n_max} exceeds the configured limit {TAU_LIMIT}")


def ramanujan_tau(n_max: int) -> list[int]:
    """Exact tau(1..n_max) from q * prod(1-q^n)^24."""
    _check_tau_size(n_max)
    hi, lo = _tau_slots(n_max)
    return [(int(h) << 64) + int(l) for h, l in zip(hi.tolist(), lo.tolist())]


@lru_cache(maxsize=4)
def _tau_normalized(n_max: int) -> np.ndarray:
    hi, lo = _tau_slots(n_max)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    # negative values: hi*2^64 + lo = (hi+1)*2^64 - (2^64 - lo), avoiding cancellation
    neg = (hi < 0) & (lo != 0)
    comp = (np.uint64(0) - lo).astype(np.float64)
    val = np.where(neg, (hi + 1).astype(np.float64) * 2.0**64 - comp,
                   hi.astype(np.float64) * 2.0**64 + lo.astype(np.float64))
    out = val / n**5.5
    out.setflags(write=False)
    return out


def tau_normalized(n_max: int) -> np.ndarray:
    """tau(n) / n^{11/2} for n = 1..n_max as float64 (read-only, cached)."""
    _check_tau_size(n_max)
    return _tau_normalized(int(n_max))


def mod_inverse(a: int, c: int) -> int:
    """Inverse of a modulo c by extended Euclid, normalized to [1, c-1] (0 when c = 1)."""
    a, c = int(a), int(c)
    if c < 1:
        raise DomainError("modulus must be >= 1")
    if c == 1:
        return 0
    r0, r1 = c, a % c
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise DomainError(f"gcd({a}, {c}) = {r0} != 1, no inverse")
    return s0 % c


def units(c: int) -> np.ndarray:
    c = int(c)
    x = np.arange(c, dtype=np.int64)
    return x[np.gcd(x, c) == 1] if c > 1 else np.array([0], dtype=np.int64)


def inverses(x: np.ndarray, c: int) -> np.ndarray:
    if c == 1:
        return np.zeros_like(x)
    return np.array([pow(int(v), -1, c) for v in x.tolist()], dtype=np.int64)


def kloosterman_sum(q: KloostermanQuery | tuple) -> float:
    """S(a,b;c) by direct enumeration over units with exactly rounded accumulation."""
    if not isinstance(q, KloostermanQuery):
        q = KloostermanQuery(*q)
    a, b, c = int(q.a), int(q.b), int(q.c)
    x = units(c)
    xb = inverses(x, c)
    r = ((a % c) * x + (b % c) * xb) % c
    ang = 2.0 * np.pi * r / c
    re = math.fsum(np.cos(ang).tolist())
    im = math.fsum(np.sin(ang).tolist())
    if abs(im) > 1e-9:
        raise ArithmeticError(f"imaginary part {im:.3e} of S({a},{b};{c}) exceeds 1e-9")
    return re


def kloosterman_matrix(ms, ns, c: int) -> np.ndarray:
    """S(m, n; c) for all pairs, as exponential-sum matrix products over the units."""
    c = int(c)
    x = units(c)
    xb = inverses(x, c)
    ms = np.asarray(ms, dtype=np.int64) % c
    ns = np.asarray(ns, dtype=np.int64) % c
    em = np.exp(2j * np.pi * ((ms[:, None] * x[None, :]) % c) / c)
    en = np.exp(2j * np.pi * ((ns[:, None] * xb[None, :]) % c) / c)
    return (em @ en.T).real


def kloosterman_residues(p: int) -> np.ndarray:
    """S(1, r; p) for r = 1..p-1; every S(a,b;p) with p not dividing ab is one of these."""
    return kloosterman_matrix([1], np.arange(1, p), p)[0]


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def euler_phi(c: int) -> int:
    c = int(c)
    result, n, p = c, c, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result
