"""Oscillatory integrals int w(xi) e^{i h(xi)} dxi: quadrature oracle and stationary phase.

Windows and phases are plain functions of one variable written with the
functions in this module (``exp``, ``log``, ``sqrt``, ``sin``, ``cos``), so the
same code evaluates on numpy arrays and on truncated Taylor series (``Jet``).
Derivatives of any order come from the jets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError


class NoStationaryPoint(DomainError):
    pass


class MultipleStationaryPoints(DomainError):
    pass


class OracleDisagreement(ConvergenceError):
    pass


class Jet:
    """Truncated Taylor series c[k] = f^(k)(x0)/k!, vectorized over trailing axes."""

    __slots__ = ("c",)
    __array_priority__ = 100

    def __init__(self, c):
        self.c = np.asarray(c)

    @classmethod
    def variable(cls, x0, order: int) -> "Jet":
        x0 = np.asarray(x0, dtype=np.float64)
        c = np.zeros((order + 1,) + x0.shape)
        c[0] = x0
        if order:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    def derivative(self, k: int):
        return self.c[k] * math.factorial(k)

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        c = np.zeros_like(self.c, dtype=np.result_type(self.c, np.asarray(other)))
        c[0] = other
        return Jet(c)

    def __add__(self, other):
        o = self._lift(other)
        return Jet(self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        a, b = self.c, other.c
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.result_type(a, b))
        for k in range(out.shape[0]):
            for i in range(k + 1):
                out[k] = out[k] + a[i] * b[k - i]
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / other)
        a, b = self._lift(self).c, other.c
        q = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.result_type(a, b, np.float64))
        for k in range(q.shape[0]):
            acc = a[k] + 0 * q[k]
            for i in range(1, k + 1):
                acc = acc - b[i] * q[k - i]
            q[k] = acc / b[0]
        return Jet(q)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = self._lift(1.0)
            for _ in range(int(p)):
                out = out * self
            return out
        return exp(log(self) * p)

    def exp(self):
        a = self.c
        e = np.zeros_like(a, dtype=np.result_type(a, np.float64))
        e[0] = np.exp(a[0])
        for k in range(1, a.shape[0]):
            e[k] = sum(j * a[j] * e[k - j] for j in range(1, k + 1)) / k
        return Jet(e)

    def log(self):
        a = self.c
        out = np.zeros_like(a, dtype=np.result_type(a, np.float64))
        out[0] = np.log(a[0])
        for k in range(1, a.shape[0]):
            acc = a[k] - sum(j * out[j] * a[k - j] for j in range(1, k)) / k
            out[k] = acc / a[0]
        return Jet(out)

    def sincos(self):
        a = self.c
        s = np.zeros_like(a, dtype=np.result_type(a, np.float64))
        c = np.zeros_like(s)
        s[0], c[0] = np.sin(a[0]), np.cos(a[0])
        for k in range(1, a.shape[0]):
            s[k] = sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k
            c[k] = -sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
        return Jet(s), Jet(c)


def exp(x):
    return x.exp() if isinstance(x, Jet) else np.exp(x)


def log(x):
    return x.log() if isinstance(x, Jet) else np.log(x)


def sqrt(x):
    return x ** 0.5 if isinstance(x, Jet) else np.sqrt(x)


def sin(x):
    return x.sincos()[0] if isinstance(x, Jet) else np.sin(x)


def cos(x):
    return x.sincos()[1] if isinstance(x, Jet) else np.cos(x)


def derivatives(fn: Callable, x, order: int):
    """fn^(k)(x) for k = 0..order, shape (order+1, *x.shape)."""
    j = fn(Jet.variable(x, order))
    if not isinstance(j, Jet):
        return np.concatenate([np.broadcast_to(j, np.shape(x))[None], np.zeros((order,) + np.shape(x))])
    return np.stack([j.derivative(k) for k in range(order + 1)])


@dataclass(frozen=True)
class Window:
    """A smooth window supported on [lo, hi]; ``profile`` is evaluated inside only."""

    profile: Callable
    lo: float
    hi: float

    def __call__(self, x):
        if isinstance(x, Jet):
            x0 = x.c[0]
            on = (x0 > self.lo) & (x0 < self.hi)
            if np.all(on):
                return self.profile(x)
            # points outside the open support: evaluate at the centre, then zero them
            safe = x.c.copy()
            safe[0] = np.where(on, x0, 0.5 * (self.lo + self.hi))
            val = self.profile(Jet(safe))
            return Jet(val.c * on)
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros(x.shape)
        on = (x > self.lo) & (x < self.hi)
        if np.any(on):
            out[on] = self.profile(x[on])
        return out

    def __add__(self, other: "Window") -> "Window":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return Window(lambda x: self(x) + other(x), lo, hi)

    def scale(self, Z: float, samples: int = 2001) -> float:
        """Smallest X with sup|w^(j)| <= (X/Z)^j max(1, sup|w|) for j <= 4 (sampled)."""
        x = np.linspace(self.lo, self.hi, samples + 2)[1:-1]
        d = np.abs(derivatives(self, x, 4))
        base = max(1.0, float(d[0].max()))
        return max(Z * (float(d[j].max()) / base) ** (1.0 / j) for j in range(1, 5))


BUMP_BETA = 2.0


def bump_window(lo: float, hi: float, beta: float = BUMP_BETA, height: float = 1.0) -> Window:
    """height * exp(beta (1 - 1/(1-u^2))) with u in (-1, 1) across [lo, hi]; maximum ``height``."""
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)

    def prof(x):
        u = (x - mid) / half
        return height * exp(beta * (1.0 - 1.0 / (1.0 - u * u)))

    return Window(prof, float(lo), float(hi))


@dataclass(frozen=True)
class PhaseProblem:
    """int w e^{ih} with w supported in [Z, 2Z], w^(j) << (X/Z)^j and h^(j) << Y/Z^j."""

    w: Window
    h: Callable
    Z: float
    X: float
    Y: float
    R: float = 1.0

    def __post_init__(self):
        if min(self.Z, self.X, self.Y, self.R) <= 0:
            raise DomainError("Z, X, Y, R must be positive")
        if self.w.lo < self.Z * (1 - 1e-12) or self.w.hi > 2 * self.Z * (1 + 1e-12):
            raise DomainError("window support must lie in [Z, 2Z]")

    def check_inert(self) -> None:
        x = self.w.scale(self.Z)
        if x > self.X * (1 + 1e-9):
            raise DomainError(f"window derivatives need X >= {x:.4g}, got X = {self.X:.4g}")

    def phase_derivative(self, x, k: int = 1):
        return derivatives(self.h, np.asarray(x, dtype=np.float64), k)[k]


def _gl(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panel_edges(p: PhaseProblem, per_panel: float) -> np.ndarray:
    """Panels carrying at most ``per_panel`` radians of phase and at most 1/64 of the support."""
    lo, hi = p.w.lo, p.w.hi
    grid = np.linspace(lo, hi, 8193)
    hp = np.abs(p.phase_derivative(grid))
    # local maximum over neighbours guards against under-resolving between grid points
    hp = np.maximum(hp, np.maximum(np.roll(hp, 1), np.roll(hp, -1)))
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (hp[1:] + hp[:-1]) * np.diff(grid))])
    n_phase = int(math.ceil(cum[-1] / per_panel))
    marks = np.interp(np.linspace(0, cum[-1], n_phase + 1), cum, grid) if n_phase > 0 else np.array([lo, hi])
    uniform = np.linspace(lo, hi, 65)
    return np.unique(np.concatenate([marks, uniform]))


def _integrate(p: PhaseProblem, edges: np.ndarray, nodes: int) -> complex:
    x, wts = _gl(nodes)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    total = 0.0 + 0.0j
    for lo in range(0, mid.size, 4096):
        m, hw = mid[lo:lo + 4096], half[lo:lo + 4096]
        xi = (m[:, None] + hw[:, None] * x[None, :])
        f = p.w(xi) * np.exp(1j * p.h(xi))
        total += complex(np.sum((f @ wts) * hw))
    return total


def oracle_integral(p: PhaseProblem, nodes: int = 20) -> complex:
    """Gauss-Legendre panels with ``nodes`` points per 2 pi of phase, checked at half panel width."""
    edges = _panel_edges(p, 2.0 * math.pi)
    coarse = _integrate(p, edges, nodes)
    fine_edges = np.sort(np.concatenate([edges, 0.5 * (edges[1:] + edges[:-1])]))
    fine = _integrate(p, fine_edges, nodes)
    if abs(fine - coarse) > 1e-9 * p.Z:
        raise OracleDisagreement(f"refinement moved the integral by {abs(fine - coarse):.3e}")
    return fine


def _sign_changes(p: PhaseProblem, levels: int = 12):
    lo, hi = p.w.lo, p.w.hi
    for k in range(4, levels + 1):
        x = np.linspace(lo, hi, 2**k + 1)
        hp = p.phase_derivative(x)
        idx = np.nonzero(np.sign(hp[1:]) * np.sign(hp[:-1]) <= 0)[0]
        if idx.size:
            return x, idx
    return x, idx


def stationary_point(p: PhaseProblem) -> float:
    """The zero of h' in the support: dyadic bracketing, then Newton with bisection fallback."""
    x, idx = _sign_changes(p)
    if idx.size == 0:
        raise NoStationaryPoint("h' has no zero in the support; use the first-derivative test")
    if idx.size > 1 and not (idx.size == 2 and idx[1] == idx[0] + 1):
        raise MultipleStationaryPoints("h' changes sign more than once in the support")
    a, b = float(x[idx[0]]), float(x[idx[0] + 1])
    fa = float(p.phase_derivative(a))
    tol = 1e-12 * p.Y / p.Z
    xi = 0.5 * (a + b)
    for _ in range(200):
        d = derivatives(p.h, np.array(xi), 2)
        f1, f2 = float(d[1]), float(d[2])
        if abs(f1) <= tol:
            return xi
        if (f1 > 0) == (fa > 0):
            a, fa = xi, f1
        else:
            b = xi
        step = xi - f1 / f2 if f2 != 0 else 0.5 * (a + b)
        xi = step if a < step < b else 0.5 * (a + b)
        if b - a < 4e-16 * max(abs(a), abs(b)):
            break
    if abs(float(p.phase_derivative(xi))) > tol:
        raise ConvergenceError("stationary point not located to the required accuracy")
    return xi


def stationary_point_expansion(p: PhaseProblem, order: int = 0) -> complex:
    """e^{i h(xi0)}/sqrt(h''(xi0)) sum_{n <= order} p_n(xi0).

    p_n = sqrt(2 pi) e^{i pi/4}/n! (i/(2 h''))^n G^(2n)(xi0) with G = w e^{iH} and
    H the phase minus its quadratic Taylor polynomial at xi0.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    if p.Y / p.X**2 < p.R or p.R < 1:
        raise DomainError("need Y/X^2 >= R >= 1")
    xi0 = stationary_point(p)
    K = 2 * order
    hj = derivatives(p.h, np.array(xi0), max(K, 2))
    h0, h2 = float(hj[0]), float(hj[2])
    if h2 == 0:
        raise DomainError("h'' vanishes at the stationary point")

    def G(x):
        d = x - xi0
        H = p.h(x) - h0 - 0.5 * h2 * d * d
        s, c = H.sincos() if isinstance(H, Jet) else (np.sin(H), np.cos(H))
        return p.w(x) * (c + 1j * s)

    g = derivatives(G, np.array(xi0), K)
    total = 0.0 + 0.0j
    for n in range(order + 1):
        total += (1j / (2.0 * h2)) ** n / math.factorial(n) * complex(g[2 * n])
    total *= math.sqrt(2 * math.pi) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    root = math.sqrt(h2) if h2 > 0 else 1j * math.sqrt(-h2)
    return complex(np.exp(1j * h0)) / root * total


def first_derivative_test(p: PhaseProblem, A: int = 3, samples: int = 4097) -> float:
    """Envelope Z (Y/X)^{-A}, after confirming min |h'| >= Y/Z on the support by sampling."""
    if p.Y / p.X < 1:
        raise DomainError("first-derivative test needs Y/X >= 1")
    x = np.linspace(p.w.lo, p.w.hi, samples)
    hp = p.phase_derivative(x)
    if np.any(np.sign(hp[1:]) != np.sign(hp[:-1])):
        raise DomainError("h' crosses zero inside the support")
    if np.min(np.abs(hp)) < p.Y / p.Z * (1 - 1e-12):
        raise DomainError("sampled |h'| falls below Y/Z")
    return p.Z * (p.Y / p.X) ** (-A)


# phase families of the main-term analysis, each with a single stationary point


def family_h2(T: float, xi: float, A: float, a: float, b: float, n: float) -> Callable:
    """x -> T xi log(A b x / n) - 2 pi A a x, stationary at x0 = T xi/(2 pi A a)."""
    return lambda x: T * xi * log(A * b * x / n) - 2 * math.pi * A * a * x


def family_h3(T: float, a: float, b: float, n: float) -> Callable:
    """xi -> T xi log(b T xi/(2 pi a n e)), stationary at 2 pi a n/(b T)."""
    return lambda x: T * x * log(b * T * x / (2 * math.pi * a * n * math.e))


def family_h4(T: float, m: float, n: float) -> Callable:
    """xi -> 2 T xi log(T xi/(2 pi e sqrt(mn))), stationary at 2 pi sqrt(mn)/T."""
    return lambda x: 2 * T * x * log(T * x / (2 * math.pi * math.e * math.sqrt(m * n)))


def family_h5(A: float, a: float, b: float, n: float) -> Callable:
    """x -> 4 pi sqrt(A b n x) - 2 pi A a x, stationary at b n/(A a^2)."""
    return lambda x: 4 * math.pi * sqrt(A * b * n * x) - 2 * math.pi * A * a * x


__all__ = [
    "Jet", "Window", "bump_window", "PhaseProblem", "oracle_integral", "stationary_point",
    "stationary_point_expansion", "first_derivative_test", "derivatives", "NoStationaryPoint",
    "MultipleStationaryPoints", "OracleDisagreement", "exp", "log", "sqrt", "sin", "cos",
    "family_h2", "family_h3", "family_h4", "family_h5",
]
