"""zeta on the critical line, the cutoff W_s, and approximate functional equations.

Two evaluators of L(1/2+it, f) live here:

* the direct one uses the smoothed functional equation with exact gamma
  quotients; its cutoff W_t(v), v = log n - log(|t|/2 pi), is tabulated per t as
  a piecewise Chebyshev series and the Dirichlet sum runs in the compiled kernel;
* the dyadic one replaces the gamma quotients by their Stirling closed forms and
  groups the sum into dyadic blocks, which is the form used in the moment proof.

zeta(1/2 - it)^2 is the second evaluator applied to the coefficients d(m).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import erfc

from .arith import divisor_counts
from .errors import ConvergenceError, DomainError
from .forms import FormDescriptor
from .kernels import PiecewiseCheb, cheb_nodes, cheb_transform, fit_piecewise, smoothed_dirichlet
from .special import log_gamma

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)

# B_2, B_4, ..., B_20
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
              43867 / 798, -174611 / 330)


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def _em_tail(s: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Euler-Maclaurin correction N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli terms."""
    logN = np.log(N)
    out = np.exp((1.0 - s) * logN) / (s - 1.0) + 0.5 * np.exp(-s * logN)
    poch = s.copy()
    fact = 2.0
    for k, b in enumerate(_BERNOULLI, 1):
        out = out + b / fact * poch * np.exp((-s - 2 * k + 1) * logN)
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
    return out


def _zeta_cutoff(im):
    return np.maximum(10, np.ceil(np.abs(im))).astype(np.int64)


def zeta(s) -> complex:
    """zeta(s) by Euler-Maclaurin with N = max(10, ceil|Im s|) and ten Bernoulli corrections."""
    s = complex(s)
    if s == 1:
        raise DomainError("zeta has a pole at s = 1")
    if abs(s.imag) > 1e5:
        raise DomainError("|Im s| beyond 1e5")
    N = int(_zeta_cutoff(np.array([s.imag]))[0])
    if s.real < 0.5 - 2 * 10 + 1:
        raise DomainError("Euler-Maclaurin used only for Re s > -18")
    n = np.arange(1, N, dtype=np.float64)
    terms = np.exp(-s * np.log(n))
    head = complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))
    return head + complex(_em_tail(np.array([s]), np.array([float(N)]))[0])


def zeta_line(t, workers: int | None = None) -> np.ndarray:
    """zeta(1/2 + it) for an array of t (use -t for zeta(1/2 - it))."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(np.abs(t) > 1e5):
        raise DomainError("|t| beyond 1e5")
    N = _zeta_cutoff(t)
    nmax = int(N.max())
    logn = np.log(np.arange(1, nmax, dtype=np.float64))
    coef = np.exp(-0.5 * logn)
    # weight 1 strictly below log(N_t - 1/2), zero above: a per-t sharp cutoff
    cut = PiecewiseCheb(0.0, 1e-9, np.zeros((1, 1, 1)), np.ones(1, dtype=np.complex128))
    head = smoothed_dirichlet(t, coef, logn, -1, np.log(N - 0.5), cut, workers=workers)
    s = 0.5 + 1j * t
    return head + _em_tail(s, N.astype(np.float64))


# ---------------------------------------------------------------------------
# the cutoff W_s of the smoothed functional equation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutoffKernel:
    """Test function G(u) = exp((u/width)^2) and the line Re u = contour_re.

    ``contour_height`` truncates |Im u| and ``resolution`` is the number of
    trapezoid nodes; both default to values giving double-precision accuracy.
    With ``tilt`` the function is multiplied by exp(-i theta u), theta = sgn(t) d pi/4,
    which balances the exponential growth of the gamma quotient (the dual sum then
    uses G(-u)).
    """

    width: float = 1.0
    contour_re: float = 1.0
    contour_height: float | None = None
    resolution: int | None = None
    tilt: bool = False

    def __post_init__(self):
        if self.width <= 0 or self.contour_re <= 0:
            raise DomainError("width and contour_re must be positive")
        if self.contour_re >= 4:
            raise DomainError("contour must stay inside |Re u| < 4")
        if self.resolution is not None and self.resolution < 8:
            raise DomainError("resolution must be >= 8")

    def g(self, u, theta: float = 0.0):
        u = np.asarray(u, dtype=np.complex128)
        return np.exp((u / self.width) ** 2 - 1j * theta * u)

    def height(self, degree: int = 2) -> float:
        if self.contour_height is not None:
            return float(self.contour_height)
        extra = 0.0 if self.tilt else math.pi * degree * self.width**2 / 4.0
        return 6.1 * self.width + extra

    def nodes(self, degree: int = 2, refine: int = 1) -> tuple[np.ndarray, float]:
        """Trapezoid nodes u_k on the line and the common weight h/(2 pi)."""
        H = self.height(degree)
        if self.resolution is None:
            m = int(math.ceil(H / (self.contour_re / 6.0)))
        else:
            m = max(1, self.resolution // 2)
        m *= refine
        h = H / m
        y = np.arange(-m, m + 1) * h
        return self.contour_re + 1j * y, h / (2.0 * math.pi)


def _theta(kernel: CutoffKernel, t: float, degree: int) -> float:
    return math.copysign(degree * math.pi / 4.0, t) if kernel.tilt else 0.0


def _gamma_ratio_log(f: FormDescriptor, s, u):
    """log gamma(s+u)/gamma(s); s broadcasts against u."""
    s = np.asarray(s, dtype=np.complex128)
    u = np.asarray(u, dtype=np.complex128)
    out = -f.degree * u / 2.0 * LOG_PI
    for k in f.kappa:
        out = out + log_gamma((s + u - k) / 2.0) - log_gamma((s - k) / 2.0)
    return out


def w_cutoff(k: CutoffKernel, f: FormDescriptor, s, x, *, check: bool = True):
    """W_s(x) = (1/2 pi i) int x^{-u} G(u) gamma(s+u)/gamma(s) du/u on Re u = contour_re.

    Computed at the kernel's resolution and at twice that; a change above 1e-8
    raises ConvergenceError.
    """
    s = complex(s)
    if abs(s.real - 0.5) > 1e-12 or abs(s.imag) < 2:
        raise DomainError("w_cutoff needs s = 1/2 + it with |t| >= 2")
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(x <= 0):
        raise DomainError("x must be positive")
    theta = _theta(k, s.imag, f.degree)

    def run(refine):
        u, wgt = k.nodes(f.degree, refine)
        g = wgt * k.g(u, theta) * np.exp(_gamma_ratio_log(f, s, u)) / u
        return np.exp(-np.outer(np.log(x), u)) @ g

    val = run(1)
    if check:
        fine = run(2)
        if np.max(np.abs(fine - val)) > 1e-8:
            raise ConvergenceError("W_s quadrature changed by more than 1e-8 under refinement")
    return complex(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# direct evaluation of L(1/2+it, f) with exact gamma quotients
# ---------------------------------------------------------------------------

_PIECES = 8
_DEGREE = 24
_CHUNK = 2048


def direct_width(t_min: float) -> float:
    """Width a of the tilted Gaussian used by the direct evaluator at heights >= t_min."""
    return float(min(6.0, max(1.0, math.sqrt(abs(t_min)) / 3.0)))


@dataclass(frozen=True)
class _DirectPlan:
    a: float
    v0: float
    u: np.ndarray
    wgt: float
    vnodes: np.ndarray
    expo: np.ndarray  # exp(-u v) at the Chebyshev nodes, shape (nodes, len(u))
    cheb: np.ndarray


@lru_cache(maxsize=16)
def _direct_plan(a: float) -> _DirectPlan:
    v0 = 11.8 / a
    c = min(1.5, 5.0 * a / 11.8)
    kernel = CutoffKernel(width=a, contour_re=c, contour_height=6.1 * a, tilt=True)
    u, wgt = kernel.nodes()
    vn = cheb_nodes(-v0, v0, _PIECES, _DEGREE)
    expo = np.exp(-np.outer(vn.ravel(), u))
    return _DirectPlan(a, v0, u, wgt, vn, expo, cheb_transform(_DEGREE))


def _direct_weights(f: FormDescriptor, t: np.ndarray, plan: _DirectPlan) -> PiecewiseCheb:
    """Per-t Chebyshev tables of W_{1/2+it}(v + log(|t|/2 pi)) on [-v0, v0]."""
    sgn = np.sign(t)[:, None]
    s = 0.5 + 1j * t[:, None]
    u = plan.u[None, :]
    theta = sgn * f.degree * math.pi / 4.0
    logq = _gamma_ratio_log(f, s, u) - f.degree / 2.0 * u * np.log(np.abs(t[:, None]) / (2 * math.pi))
    g = plan.wgt * np.exp((u / plan.a) ** 2 - 1j * theta * u + logq) / u
    samples = (g @ plan.expo.T).reshape(t.size, _PIECES, _DEGREE + 1)
    coef = samples @ plan.cheb.T
    return PiecewiseCheb(-plan.v0, plan.v0, np.ascontiguousarray(coef), np.ones(t.size, dtype=np.complex128))


def log_chi(f: FormDescriptor, t):
    """log gamma(1/2 - it)/gamma(1/2 + it)."""
    t = np.asarray(t, dtype=np.float64)
    return f.log_gamma_factor(0.5 - 1j * t) - f.log_gamma_factor(0.5 + 1j * t)


def direct_table_length(t_max: float, width: float) -> int:
    return int(math.ceil(abs(t_max) / (2 * math.pi) * math.exp(11.8 / width))) + 1


def l_values_direct(f: FormDescriptor, t, *, width: float | None = None,
                    workers: int | None = None) -> np.ndarray:
    """L(1/2+it, f) for an array of t from the smoothed functional equation.

    The gamma quotients are exact; the cutoff is a tilted Gaussian of width
    ``width`` (default from the smallest |t|), and the result does not depend on
    that choice beyond rounding.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(np.abs(t) < 2):
        raise DomainError("direct evaluation needs |t| >= 2")
    if not f.self_dual or np.iscomplexobj(f.eigenvalues):
        raise DomainError("direct evaluation is implemented for self-dual forms with real coefficients")
    a = direct_width(np.min(np.abs(t))) if width is None else float(width)
    plan = _direct_plan(a)
    nmax = direct_table_length(np.max(np.abs(t)), a)
    lam = f.require(nmax)
    n = np.arange(1, lam.size + 1, dtype=np.float64)
    logn = np.log(n)
    coef = lam / np.sqrt(n)
    out = np.empty(t.size, dtype=np.complex128)
    for lo in range(0, t.size, _CHUNK):
        tc = t[lo:lo + _CHUNK]
        weight = _direct_weights(f, tc, plan)
        shift = np.log(np.abs(tc) / (2 * math.pi))
        S = smoothed_dirichlet(tc, coef, logn, -1, shift, weight, workers=workers)
        out[lo:lo + _CHUNK] = S + complex(f.root_number) * np.exp(log_chi(f, tc)) * np.conj(S)
    return out


def l_value_direct(f: FormDescriptor, t: float, **kw) -> complex:
    return complex(l_values_direct(f, np.array([t]), **kw)[0])


# ---------------------------------------------------------------------------
# L(s, f) at real s
# ---------------------------------------------------------------------------

REAL_KERNEL = CutoffKernel(width=3.0)


def _line_nodes(kernel: CutoffKernel, c: float, degree: int, refine: int) -> tuple[np.ndarray, float]:
    H = kernel.height(degree)
    m = int(math.ceil(H / (min(c, 1.0) / 6.0))) * refine
    h = H / m
    return c + 1j * np.arange(-m, m + 1) * h, h / (2.0 * math.pi)


def _real_cutoff(f: FormDescriptor, s: float, shift_s: float, sigma: float, kernel: CutoffKernel,
                 refine: int) -> tuple[PiecewiseCheb, int]:
    """Table of W(x) = (1/2 pi i) int x^{-u} G(u) gamma(shift_s+u)/gamma(s) du/u in v = log x.

    The line sits at Re u = max(contour_re, sigma + 1.5) so that the rounding
    floor x^{-c} stays summable against the weights n^sigma.  The extent is the
    smallest X with sum_{n > X} n^sigma |W(n)| below 1e-16, bounded by moving the
    line to the right.
    """
    c = max(kernel.contour_re, sigma + 1.5)
    lgs = f.log_gamma_factor(s)
    # tail bound: |W(x)| <= x^{-c'} M(c') for every c' > 0 right of the poles
    best = []
    for cp in np.arange(c, c + 30.0, 0.5):
        u, wgt = _line_nodes(kernel, cp, f.degree, 1)
        logmag = (np.real((u / kernel.width) ** 2 + f.log_gamma_factor(shift_s + u) - lgs)
                  - np.log(np.abs(u)) + math.log(wgt))
        top = float(logmag.max())
        best.append((cp, top + math.log(float(np.exp(logmag - top).sum()))))
    V = 0.5
    while True:
        tail = min(logM + (sigma - cp + 1) * V - math.log(cp - sigma - 1) for cp, logM in best if cp > sigma + 1.5)
        if tail < math.log(1e-16) or V > 40:
            break
        V += 0.25
    u, wgt = _line_nodes(kernel, c, f.degree, refine)
    g = wgt * kernel.g(u) * np.exp(f.log_gamma_factor(shift_s + u) - lgs) / u
    pieces = max(4, int(math.ceil(V / 0.5)))
    vn = cheb_nodes(-1e-9, V, pieces, _DEGREE)
    vals = (np.exp(-np.outer(vn.ravel(), u)) @ g).reshape(vn.shape)
    return fit_piecewise(vals, -1e-9, V, 0.0), int(math.exp(V)) + 1


def l_value_real(f: FormDescriptor, s: float, kernel: CutoffKernel | None = None) -> complex:
    """L(s, f) for real s by the smoothed functional equation (two resolutions must agree to 1e-8).

    The default test function is exp((u/3)^2): it gives the same value as exp(u^2)
    but a cutoff that is three times sharper in log n, so the sums stay short.
    """
    kernel = kernel or REAL_KERNEL
    s = float(s)
    if kernel.tilt:
        raise DomainError("real-s evaluation uses the untilted kernel")
    if s < 0.5:
        raise DomainError("use the functional equation for s < 1/2")

    def run(refine):
        w1, n1 = _real_cutoff(f, s, s, -s, kernel, refine)
        w2, n2 = _real_cutoff(f, s, 1.0 - s, s - 1.0, kernel, refine)
        lam = f.require(max(n1, n2))
        n = np.arange(1, lam.size + 1, dtype=np.float64)
        logn = np.log(n)
        zero = np.zeros(1)
        a = smoothed_dirichlet(zero, lam[:n1] * n[:n1] ** (-s), logn[:n1], 1, zero, w1, workers=1)[0]
        b = smoothed_dirichlet(zero, lam[:n2] * n[:n2] ** (s - 1.0), logn[:n2], 1, zero, w2, workers=1)[0]
        return complex(a + complex(f.root_number) * b)

    v1 = run(1)
    v2 = run(2)
    if abs(v1 - v2) > 1e-8:
        raise ConvergenceError(f"L({s}) changed by {abs(v1 - v2):.2e} under contour refinement")
    return v1


def collapse_identity_residual(f: FormDescriptor, s: float, N: int) -> float:
    """|sum_{n<=N} lambda(n) d(n) n^{-s} - L(s,f)^2/zeta(2s)|."""
    s = float(s)
    if s < 1.2:
        raise DomainError("collapse identity needs s >= 1.2")
    lam = f.require(int(N))
    n = np.arange(1, int(N) + 1, dtype=np.float64)
    partial = math.fsum((lam * divisor_counts(int(N)) * n ** (-s)).tolist())
    rhs = l_value_real(f, s) ** 2 / zeta(2 * s)
    return abs(partial - rhs)


# ---------------------------------------------------------------------------
# dyadic approximate functional equations with Stirling closed forms
# ---------------------------------------------------------------------------

def _bump(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros(x.shape)
    inside = (x > 0.8) & (x < 2.2)
    xi = x[inside]
    out[inside] = np.exp(-1.0 / ((xi - 0.8) * (2.2 - xi)))
    return out


@dataclass(frozen=True)
class DyadicPartition:
    """v1(x) = phi(x) / sum_k phi(2^k x), phi a bump on [4/5, 11/5]; blocks N = 2^k, k >= k_min."""

    k_min: int = -1

    def v1(self, x):
        x = np.asarray(x, dtype=np.float64)
        num = _bump(x)
        base = np.floor(-np.log2(x))
        den = np.zeros(x.shape)
        for j in range(-2, 3):
            den += _bump(np.exp2(base + j) * x)
        return np.where(num > 0, num / np.where(den > 0, den, 1.0), 0.0)

    def blocks(self, n_max: int) -> list[float]:
        """Scales N whose block meets [1, n_max]."""
        out = []
        k = self.k_min
        while 0.8 * 2.0**k < n_max:
            out.append(2.0**k)
            k += 1
        return out

    def identity_defect(self, n_max: int) -> float:
        n = np.arange(1, n_max + 1, dtype=np.float64)
        total = np.zeros(n.shape)
        for N in self.blocks(n_max):
            total += self.v1(n / N)
        return float(np.max(np.abs(total - 1.0)))


@dataclass(frozen=True)
class AfeContour:
    """The w-line Re w = eps, |Im w| <= height, of the dyadic functional equations (G(w) = e^{w^2})."""

    eps: float = 0.05
    height: float = 6.5
    step: float = 0.005

    def u_values(self, z: np.ndarray) -> np.ndarray:
        """U(z) = (1/2 pi i) int e^{-wz} e^{w^2} dw/w on the truncated line."""
        m = int(round(self.height / self.step))
        y = np.arange(-m, m + 1) * self.step
        w = self.eps + 1j * y
        g = self.step / (2 * math.pi) * np.exp(w * w) / w
        z = np.asarray(z, dtype=np.complex128)
        out = np.empty(z.shape, dtype=np.complex128)
        flat = z.ravel()
        res = out.ravel()
        for lo in range(0, flat.size, 256):
            res[lo:lo + 256] = np.exp(-np.outer(flat[lo:lo + 256], w)) @ g
        return res.reshape(z.shape)


def afe_tail_v0(tol: float, t_max: float) -> float:
    """Smallest v0 with |U(v0 - i pi/2)| log(N)^2 below tol, N = t e^{v0}/2 pi.

    The tail terms carry oscillating phases n^{-it}, so their sum behaves like a
    random walk of weighted length about |U(v0)| times a power of log N.
    """
    v = 1.0
    while v < 40:
        bound = 0.5 * abs(erfc((v + 0.5j * math.pi) / 2.0))
        N = abs(t_max) / (2 * math.pi) * math.exp(v) + 2
        if bound * math.log(N) ** 2 <= tol:
            return v
        v += 0.05
    raise ConvergenceError("tail budget unreachable")


@lru_cache(maxsize=32)
def _afe_weight(sigma: int, v0: float, contour: AfeContour) -> PiecewiseCheb:
    """Chebyshev table of U(v - i sigma pi/2) on [-v0, v0]; 1 to the left, 0 to the right."""
    pieces = max(8, int(math.ceil(2 * v0 / 1.5)))
    vn = cheb_nodes(-v0, v0, pieces, _DEGREE)
    vals = contour.u_values(vn - 1j * sigma * math.pi / 2.0)
    return fit_piecewise(vals, -v0, v0, 1.0)


def _afe_generic(coef: np.ndarray, kappa_sum: complex, degree: int, root: complex, t: np.ndarray,
                 partition: DyadicPartition, contour: AfeContour, tol: float, blockwise: bool,
                 workers: int | None) -> np.ndarray:
    """The two dyadic sums for real coefficients a_n (given as a_n n^{-1/2}), any t of one sign."""
    sigma = 1 if t[0] > 0 else -1
    v0 = afe_tail_v0(tol, float(np.max(np.abs(t))))
    weight = _afe_weight(sigma, round(v0, 6), contour)
    nmax = int(math.ceil(np.max(np.abs(t)) / (2 * math.pi) * math.exp(v0))) + 1
    if coef.size < nmax:
        from .errors import TableTooShort

        raise TableTooShort(f"need coefficients up to n = {nmax}, have {coef.size}")
    n = np.arange(1, nmax + 1, dtype=np.float64)
    logn = np.log(n)
    c = coef[:nmax]
    shift = np.log(np.abs(t) / (2 * math.pi))
    if blockwise:
        S = np.zeros(t.size, dtype=np.complex128)
        for N in partition.blocks(nmax):
            lo = int(math.floor(0.8 * N))
            hi = min(nmax, int(math.ceil(2.2 * N)))
            if hi <= lo:
                continue
            cb = c[lo:hi] * partition.v1(n[lo:hi] / N)
            S += smoothed_dirichlet(t, cb, logn[lo:hi], -1, shift, weight, workers=workers)
    else:
        S = smoothed_dirichlet(t, c, logn, -1, shift, weight, workers=workers)
    at = np.abs(t)
    phase = np.exp(1j * math.pi * sigma * (degree / 4.0 + kappa_sum / 2.0)
                   - 1j * degree * t * np.log(at / (2 * math.pi * math.e)) * 1.0)
    # for real coefficients the reflected sum is the conjugate of the first one
    return S + root * phase * np.conj(S)


def _by_sign(t, fn):
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = np.empty(t.size, dtype=np.complex128)
    for sel in (t > 0, t < 0):
        if sel.any():
            out[sel] = fn(t[sel])
    return out


def afe_l_values(f: FormDescriptor, t, partition: DyadicPartition | None = None,
                 contour: AfeContour | None = None, *, tol: float = 1e-6, blockwise: bool = True,
                 workers: int | None = None) -> np.ndarray:
    """L(1/2+it, f) from the two dyadic sums with Stirling closed forms.

    ``tol`` sets how far the n-sums run (the pointwise truncation error).
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(np.abs(t) < 50):
        raise DomainError("dyadic functional equation needs |t| >= 50")
    if not f.self_dual:
        raise DomainError("only self-dual forms are supported")
    partition = partition or DyadicPartition()
    contour = contour or AfeContour()
    nmax = int(math.ceil(np.max(np.abs(t)) / (2 * math.pi) * math.exp(afe_tail_v0(tol, np.max(np.abs(t)))))) + 1
    lam = f.require(nmax)
    coef = lam / np.sqrt(np.arange(1, lam.size + 1))
    ksum = sum(f.kappa)
    return _by_sign(t, lambda tt: _afe_generic(coef, ksum, f.degree, complex(f.root_number), tt,
                                              partition, contour, tol, blockwise, workers))


def afe_l_value(f: FormDescriptor, t: float, partition: DyadicPartition | None = None,
                contour: AfeContour | None = None, **kw) -> complex:
    return complex(afe_l_values(f, np.array([float(t)]), partition, contour, **kw)[0])


@lru_cache(maxsize=4)
def _divisor_coef(n: int) -> np.ndarray:
    d = divisor_counts(n).astype(np.float64)
    out = d / np.sqrt(np.arange(1, n + 1))
    out.setflags(write=False)
    return out


def afe_zeta_squared_values(t, partition: DyadicPartition | None = None, contour: AfeContour | None = None,
                            *, tol: float = 1e-6, blockwise: bool = True, workers: int | None = None) -> np.ndarray:
    """zeta(1/2 - it)^2 from the dyadic d(m)-sums (the generic formula at height -t)."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(np.abs(t) < 50):
        raise DomainError("dyadic functional equation needs |t| >= 50")
    partition = partition or DyadicPartition()
    contour = contour or AfeContour()
    tm = float(np.max(np.abs(t)))
    nmax = int(math.ceil(tm / (2 * math.pi) * math.exp(afe_tail_v0(tol, tm)))) + 1
    coef = _divisor_coef(1 << max(10, (nmax - 1).bit_length()))
    return _by_sign(-t, lambda tt: _afe_generic(coef, 0.0, 2, 1.0, tt, partition, contour, tol, blockwise, workers))


def afe_zeta_squared(t: float, partition: DyadicPartition | None = None, contour: AfeContour | None = None,
                     **kw) -> complex:
    return complex(afe_zeta_squared_values(np.array([float(t)]), partition, contour, **kw)[0])
