"""Cusp-form descriptors: the weight-12 form Delta, ingested Maass tables, L(1, f).

Eigenvalues are Hecke-normalized (lambda(1) = 1, Deligne-scale values).  The
gamma factor is gamma(s) = pi^{-s} Gamma((s - k1)/2) Gamma((s - k2)/2).
For Delta the completed L-function (2 pi)^{-s} Gamma(s + 11/2) L(s) splits by
the duplication formula into that shape with k = -11/2, -13/2.
"""
from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import divisor_counts, primes_up_to, tau_normalized
from .errors import DomainError, TableTooShort

DELTA_KAPPA = (-5.5 + 0j, -6.5 + 0j)
HECKE_TOL = 1e-6


class FormKind(enum.Enum):
    HOLOMORPHIC = "holomorphic"
    MAASS = "maass"


class IngestError(DomainError):
    """An eigenvalue table is malformed, incomplete or violates the Hecke relations."""


def smallest_prime_factor(n_max: int) -> np.ndarray:
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in primes_up_to(n_max).tolist():
        block = spf[p::p]
        block[block == 0] = p
    return spf


def _split_prime_power(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For n = 2..n_max: (p, p^e, n / p^e) with p the smallest prime factor."""
    spf = smallest_prime_factor(n_max)
    n = np.arange(2, n_max + 1, dtype=np.int64)
    p = spf[2:]
    pe = p.copy()
    rest = n // p
    while True:
        more = rest % p == 0
        if not more.any():
            break
        pe[more] *= p[more]
        rest[more] //= p[more]
    return p, pe, rest


def complete_from_primes(prime_values: dict[int, float], n_max: int) -> np.ndarray:
    """lambda(1..n_max) from lambda(p): prime-power recurrence, then multiplicativity."""
    lam = np.zeros(n_max + 1)
    lam[1] = 1.0
    if n_max == 1:
        return lam[1:]
    for p in primes_up_to(n_max).tolist():
        lp = float(prime_values[p])
        prev, cur, q = 1.0, lp, p
        lam[p] = lp
        while q * p <= n_max:
            prev, cur = cur, lp * cur - prev
            q *= p
            lam[q] = cur
    _, pe, rest = _split_prime_power(n_max)
    todo = rest > 1
    n = np.arange(2, n_max + 1)
    # rest < n, so sweeping by number of distinct prime factors fills everything
    while todo.any():
        ready = todo & ~np.isin(rest, n[todo])
        idx = np.nonzero(ready)[0]
        lam[idx + 2] = lam[pe[idx]] * lam[rest[idx]]
        todo[idx] = False
    return lam[1:]


def multiplicative_defect(lam: np.ndarray) -> float:
    """max |lambda(n) - lambda(p^e) lambda(n/p^e)| and prime-power recurrence defects."""
    n_max = lam.shape[0]
    if n_max < 2:
        return 0.0
    full = np.concatenate([[0.0], lam])
    p, pe, rest = _split_prime_power(n_max)
    worst = 0.0
    comp = rest > 1
    if comp.any():
        n = np.arange(2, n_max + 1)[comp]
        d = np.abs(full[n] - full[pe[comp]] * full[rest[comp]])
        worst = float(np.max(d / np.maximum(1.0, np.abs(full[n]))))
    power = (rest == 1) & (pe != p)
    if power.any():
        q = pe[power]
        pp = p[power]
        d = np.abs(full[q] - (full[pp] * full[q // pp] - full[q // pp // pp]))
        worst = max(worst, float(np.max(d / np.maximum(1.0, np.abs(full[q])))))
    return worst


def hecke_defect(lam: np.ndarray, limit: int) -> float:
    """max over m, n with mn <= limit of |lambda(m)lambda(n) - sum_{e|(m,n)} lambda(mn/e^2)|."""
    full = np.concatenate([[0.0], np.asarray(lam, dtype=np.float64)])
    limit = min(int(limit), lam.shape[0])
    worst = 0.0
    for m in range(1, limit + 1):
        ns = np.arange(m, limit // m + 1)
        if ns.size == 0:
            break
        g = np.gcd(ns, m)
        rhs = np.zeros(ns.size)
        for e in range(1, m + 1):
            if m % e:
                continue
            hit = g % e == 0
            rhs[hit] += full[m * ns[hit] // (e * e)]
        worst = max(worst, float(np.max(np.abs(full[m] * full[ns] - rhs))))
    return worst


@dataclass(frozen=True)
class FormDescriptor:
    kind: FormKind
    kappa: tuple
    eigenvalues: np.ndarray = field(repr=False)
    degree: int = 2
    conductor: int = 1
    root_number: complex = 1.0
    mu: float | None = None
    name: str = ""

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=np.float64)
        lam.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "kind", FormKind(self.kind))
        object.__setattr__(self, "kappa", tuple(complex(k) for k in self.kappa))
        if self.degree != len(self.kappa):
            raise DomainError("need one gamma shift per degree")
        if any(k.real >= 0.5 for k in self.kappa):
            raise DomainError("gamma shifts need Re kappa < 1/2")
        if self.conductor != 1:
            raise DomainError("only level 1 is supported")
        if abs(abs(complex(self.root_number)) - 1.0) > 1e-12:
            raise DomainError("root number must have modulus 1")
        if lam.size < 1 or lam[0] != 1.0:
            raise DomainError("lambda(1) must equal 1")
        defect = multiplicative_defect(lam)
        if defect > HECKE_TOL:
            raise DomainError(f"Hecke relations violated (defect {defect:.3e})")
        if self.kind is FormKind.HOLOMORPHIC:
            pr = primes_up_to(lam.size)
            if pr.size and np.max(np.abs(lam[pr - 1])) > 2.0 + 1e-9:
                raise DomainError("Deligne bound |lambda(p)| <= 2 violated")
        ratios = rankin_selberg_ratios(lam)
        if ratios.size and (ratios.min() < 0.05 or ratios.max() > 20.0):
            raise DomainError("Rankin-Selberg partial sums out of range")

    @property
    def n_max(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def self_dual(self) -> bool:
        ks = sorted(self.kappa, key=lambda z: (z.real, z.imag))
        kc = sorted((k.conjugate() for k in self.kappa), key=lambda z: (z.real, z.imag))
        return all(abs(a - b) < 1e-14 for a, b in zip(ks, kc))

    def require(self, n: int) -> np.ndarray:
        """The first n eigenvalues, or TableTooShort."""
        if n > self.n_max:
            raise TableTooShort(f"need lambda(n) for n <= {n}, table has {self.n_max}")
        return self.eigenvalues[:n]

    def log_gamma_factor(self, s):
        """log gamma(s, f) = -d s/2 log pi + sum log Gamma((s - k_j)/2)."""
        from .special import log_gamma

        s = np.asarray(s, dtype=np.complex128)
        out = -self.degree * s / 2.0 * math.log(math.pi)
        for k in self.kappa:
            out = out + log_gamma((s - k) / 2.0)
        return out


def rankin_selberg_ratios(lam: np.ndarray) -> np.ndarray:
    """(sum_{n<=x} lambda(n)^2)/x for x = 1, 2, 4, ... <= len(lam)."""
    cs = np.cumsum(np.asarray(lam, dtype=np.float64) ** 2)
    xs = 2 ** np.arange(int(math.log2(lam.size)) + 1)
    return cs[xs - 1] / xs


def build_delta(n_max: int) -> FormDescriptor:
    """Delta, the weight-12 level-1 cusp form, with lambda(n) = tau(n)/n^{11/2}."""
    return FormDescriptor(FormKind.HOLOMORPHIC, DELTA_KAPPA, tau_normalized(int(n_max)), name="delta")


def _read_rows(source) -> list[tuple[int, float]]:
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
    rows = []
    for lineno, line in enumerate(io.StringIO(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise IngestError(f"line {lineno}: expected 'n<TAB>value', got {line!r}")
        try:
            n = int(parts[0])
            v = float(parts[1])
        except ValueError as exc:
            raise IngestError(f"line {lineno}: {exc}") from None
        if n < 1 or not math.isfinite(v):
            raise IngestError(f"line {lineno}: bad row {line!r}")
        rows.append((n, v))
    return rows


def ingest_eigenvalues(source, mu: float | None, n_max: int) -> FormDescriptor:
    """Descriptor from a table of (n, lambda(n)) rows.

    The rows may cover all of 1..n_max or only the primes; missing values are
    completed with the Hecke relations.  Any supplied composite value must agree
    with the completion to 1e-6.  ``mu=None`` means the weight-12 holomorphic form.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise IngestError("n_max must be >= 1")
    rows = _read_rows(source)
    given: dict[int, float] = {}
    for n, v in rows:
        if n in given and given[n] != v:
            raise IngestError(f"conflicting rows for n={n}")
        given[n] = v
    if 1 in given and abs(given[1] - 1.0) > 1e-12:
        raise IngestError("lambda(1) must be 1")
    if all(n in given for n in range(1, n_max + 1)):
        lam = np.array([given[n] for n in range(1, n_max + 1)])
        lam[0] = 1.0
    else:
        missing = [p for p in primes_up_to(n_max).tolist() if p not in given]
        if missing:
            raise IngestError(f"missing prime row p={missing[0]} below n_max={n_max}")
        lam = complete_from_primes(given, n_max)
    for n, v in given.items():
        if n <= n_max and abs(lam[n - 1] - v) > HECKE_TOL * max(1.0, abs(v)):
            raise IngestError(f"row n={n} violates the Hecke relations (|diff| = {abs(lam[n - 1] - v):.3e})")
    defect = multiplicative_defect(lam)
    if defect > HECKE_TOL:
        raise IngestError(f"Hecke relations violated (defect {defect:.3e})")
    try:
        if mu is None:
            return FormDescriptor(FormKind.HOLOMORPHIC, DELTA_KAPPA, lam, name="ingested")
        mu = float(mu)
        return FormDescriptor(FormKind.MAASS, (-1j * mu, 1j * mu), lam, mu=mu, name="ingested")
    except DomainError as exc:
        raise IngestError(str(exc)) from None


def load_maass_table(n_max: int | None = None) -> FormDescriptor:
    """The bundled first even Maass form for SL(2, Z), completed from its prime eigenvalues."""
    from importlib.resources import files

    text = files("critline").joinpath("data/maass_even_first.tsv").read_text()
    mu = None
    primes = []
    for line in text.splitlines():
        if line.startswith("# mu"):
            mu = float(line.split("=")[1])
        elif line and not line.startswith("#"):
            primes.append(int(line.split()[0]))
    top = max(primes)
    return ingest_eigenvalues(text, mu, top if n_max is None else int(n_max))


def l_at_one(f: FormDescriptor, kernel=None) -> float:
    """L(1, f) from the smoothed cutoff sums at s = 1.

    Evaluated at two contour resolutions; they must agree to 1e-8.
    """
    from .lfunc import l_value_real

    return float(l_value_real(f, 1.0, kernel).real)


def l_one_smoothed_identity(f: FormDescriptor, X: float = 2.0e5) -> float:
    """Independent estimate of L(1, f): sqrt(zeta(2) sum lambda(n) d(n)/n e^{-(n/X)^2})."""
    n = int(6 * X)
    lam = f.require(n)
    d = divisor_counts(n)
    k = np.arange(1, n + 1, dtype=np.float64)
    total = math.fsum((lam * d / k * np.exp(-((k / X) ** 2))).tolist())
    return math.sqrt(math.pi**2 / 6.0 * total)
