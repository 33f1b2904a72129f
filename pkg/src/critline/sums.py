"""Finite exponential sums: Wilton sums, the Kloosterman completion identity, bilinear Kloosterman averages."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import inverses, kloosterman_matrix, units
from .errors import ConvergenceError, DomainError
from .forms import FormDescriptor
from .kernels import worker_count
from .oscillatory import PhaseProblem, Window, bump_window, derivatives, oracle_integral


def _fsum_complex(z) -> complex:
    z = np.asarray(z, dtype=np.complex128)
    return complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist()))


def wilton_sum(f: FormDescriptor, alpha: float, x: int) -> complex:
    """sum_{n <= x} lambda(n) e(alpha n), compensated accumulation."""
    x = int(x)
    if x < 1:
        raise DomainError("x must be >= 1")
    f.require(x)
    n = np.arange(1, x + 1, dtype=np.float64)
    # reduce alpha n mod 1 exactly enough: alpha*n loses nothing for x < 2^20
    ph = np.exp(2j * np.pi * np.mod(float(alpha) * n, 1.0))
    return _fsum_complex(np.asarray(f.eigenvalues[:x]) * ph)


def wilton_sup(f: FormDescriptor, q: int, x: int) -> tuple[float, int]:
    """max_k |sum_{n<=x} lambda(n) e(kn/q)| over 0 <= k < q, via residue buckets and a q-point DFT.

    Returns (maximum, argmax k).
    """
    x, q = int(x), int(q)
    f.require(x)
    lam = np.asarray(f.eigenvalues[:x], dtype=np.complex128)
    r = np.arange(1, x + 1) % q
    buckets = np.zeros(q, dtype=np.complex128)
    np.add.at(buckets, r, lam)
    k = np.arange(q)
    dft = np.exp(2j * np.pi * ((np.outer(k, np.arange(q))) % q) / q) @ buckets
    i = int(np.argmax(np.abs(dft)))
    return float(abs(dft[i])), i


# completion identity

COMPLETION_FLOOR = 1e-10
DEFAULT_COMPLETION_WINDOW = bump_window(1.0, 2.0)


@lru_cache(maxsize=8192)
def _w_hat_cached(window: Window, y: float) -> complex:
    return w_hat(window, y)


def w_hat(window: Window, y: float) -> complex:
    """int W(u) e(-u y) du by the oscillatory oracle."""
    Z = window.lo
    lam = -2.0 * math.pi * float(y)
    p = PhaseProblem(window, lambda u: lam * u, Z, 1.0, max(abs(lam) * Z, 1.0))
    return oracle_integral(p)


def completion_sides(n: int, r: int, K: float, W: Window = DEFAULT_COMPLETION_WINDOW,
                     floor: float = COMPLETION_FLOOR, max_terms: int = 100_000):
    """(LHS, RHS, terms) of the completion identity.

    LHS = sum_{(k,r)=1} e(n kbar/r) W(k/K); RHS = (K/r) sum_m S(m,n;r) What(mK/r),
    truncated once |What| stays below ``floor`` over a block of consecutive m.
    """
    n, r = int(n), int(r)
    if r < 1 or K <= 0:
        raise DomainError("need r >= 1 and K > 0")
    if W.lo <= 0:
        raise DomainError("window must live on positive reals")
    k = np.arange(int(math.floor(W.lo * K)), int(math.ceil(W.hi * K)) + 1)
    k = k[(k > 0) & (np.gcd(k, r) == 1)]
    kb = inverses(k % r, r) if r > 1 else np.zeros_like(k)
    lhs = _fsum_complex(np.exp(2j * np.pi * ((n * kb) % r) / r) * W(k / K))

    # truncation: scan blocks of m until What is below the floor on a whole block
    block = max(8, int(math.ceil(r / K)) * 4)
    m_hi = 0
    while True:
        vals = [abs(_w_hat_cached(W, m * K / r)) for m in range(m_hi + 1, m_hi + block + 1)]
        m_hi += block
        if max(vals) <= floor:
            break
        if m_hi > max_terms:
            raise ConvergenceError("completion truncation budget unreachable")
    ms = np.arange(-m_hi, m_hi + 1)
    what = np.array([_w_hat_cached(W, float(m * K / r)) for m in ms])
    S = kloosterman_matrix(ms, [n], r)[:, 0] if r > 1 else np.ones(ms.size)
    rhs = (K / r) * _fsum_complex(S * what)
    return lhs, rhs, int(ms.size)


def completion_residual(n: int, r: int, K: float, W: Window = DEFAULT_COMPLETION_WINDOW,
                        floor: float = COMPLETION_FLOOR) -> float:
    lhs, rhs, _ = completion_sides(n, r, K, W, floor)
    return abs(lhs - rhs)


# bilinear Kloosterman averages


def unit_profile(lo: float = 1.0, hi: float = 3.0) -> Window:
    """Bump on [lo, hi] scaled so that it and its first two derivatives are bounded by 1."""
    w = bump_window(lo, hi)
    x = np.linspace(lo, hi, 4003)[1:-1]
    d = np.abs(derivatives(w, x, 2)).max(axis=1)
    return bump_window(lo, hi, height=1.0 / max(1.0, float(d.max())))


@dataclass(frozen=True)
class BilinearConfig:
    """a on [M, 3M), b on [N, 3N), g(m, n, c) = gm(m/M) gn(n/N) gc(c/C)."""

    a_seq: np.ndarray
    b_seq: np.ndarray
    M: int
    N: int
    C: int
    sign: int = 1
    profiles: tuple = field(default_factory=lambda: (unit_profile(),) * 3)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if len(self.a_seq) != 2 * self.M or len(self.b_seq) != 2 * self.N:
            raise DomainError("a must have length 2M and b length 2N")
        if self.C < 1:
            raise DomainError("C must be >= 1")

    def g(self, m, n, c):
        gm, gn, gc = self.profiles
        return gm(np.asarray(m) / self.M) * gn(np.asarray(n) / self.N) * gc(np.asarray(c) / self.C)

    def derivative_defect(self, samples: int = 401) -> float:
        """max over j,k,l <= 2 of sampled |d^{j+k+l} g| M^j N^k C^l; must be <= 1."""
        u = np.linspace(1.0, 3.0, samples)
        sup = [np.abs(derivatives(p, u, 2)).max(axis=1) for p in self.profiles]
        return float(max(sup[0][j] * sup[1][k] * sup[2][l]
                         for j in range(3) for k in range(3) for l in range(3)))


def random_unimodular(n: int, seed: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.random.default_rng(seed).random(n))


def _bilinear_c(cfg: BilinearConfig, c: int) -> complex:
    m = np.arange(cfg.M, 3 * cfg.M)
    n = np.arange(cfg.N, 3 * cfg.N)
    x = units(c)
    xb = inverses(x, c)
    am = np.asarray(cfg.a_seq) * cfg.profiles[0](m / cfg.M)
    bn = np.asarray(cfg.b_seq) * cfg.profiles[1](n / cfg.N)
    A = np.exp(2j * np.pi * ((np.outer(x, m % c)) % c) / c) @ am
    B = np.exp(2j * np.pi * ((np.outer(xb, (cfg.sign * n) % c)) % c) / c) @ bn
    return complex(cfg.profiles[2](np.array([c / cfg.C]))[0] * np.sum(A * B))


def bilinear_sum(cfg: BilinearConfig, workers: int | None = None) -> complex:
    """sum_c sum_m sum_n a_m b_n g(m,n,c) S(m, sign n; c), merged in increasing c."""
    cs = list(range(cfg.C, 3 * cfg.C))
    workers = workers or worker_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda c: _bilinear_c(cfg, c), cs))
    else:
        parts = [_bilinear_c(cfg, c) for c in cs]
    return _fsum_complex(parts)


def bilinear_average_ratio(cfg: BilinearConfig, C: int | None = None, workers: int | None = None) -> float:
    """|bilinear sum| / (C sqrt(MN) ||a|| ||b||)."""
    if C is not None and int(C) != cfg.C:
        cfg = BilinearConfig(cfg.a_seq, cfg.b_seq, cfg.M, cfg.N, int(C), cfg.sign, cfg.profiles)
    if cfg.derivative_defect() > 1 + 1e-9:
        raise DomainError("weight derivatives exceed the unit scaling")
    s = bilinear_sum(cfg, workers)
    na = float(np.linalg.norm(cfg.a_seq))
    nb = float(np.linalg.norm(cfg.b_seq))
    return abs(s) / (cfg.C * math.sqrt(cfg.M * cfg.N) * na * nb)


def random_config(M: int, N: int, C: int, seed: int = 0, sign: int = 1) -> BilinearConfig:
    return BilinearConfig(random_unimodular(2 * M, seed), random_unimodular(2 * N, seed + 1), M, N, C, sign)


__all__ = [
    "wilton_sum", "wilton_sup", "w_hat", "completion_sides", "completion_residual", "unit_profile",
    "BilinearConfig", "bilinear_sum", "bilinear_average_ratio", "random_config", "random_unimodular",
]
