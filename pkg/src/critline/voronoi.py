"""Voronoi transforms Phi^+-, their large-x expansion, Mellin decay, and the summation identity.

Phi^+(x) = -pi/sin(pi i mu) int F(y) (J_{2i mu} - J_{-2i mu})(4 pi sqrt(xy)) dy
         = int F(y) C+(4 pi sqrt(xy)) dy,  C+(z) = -2 pi Im J_{2i mu}(z) / sinh(pi mu),
Phi^-(x) = int F(y) C-(4 pi sqrt(xy)) dy,   C-(z) = 4 cosh(pi mu) K_{2i mu}(z).

Both kernels are tabulated once per mu as Chebyshev pieces in log z.  Table
values come from the series (small z), from the Bessel differential equation
integrated in u = log z (where it is oscillatory or integrated towards growth),
and from the cosine integral for K above the turning point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from .arith import mod_inverse
from .errors import ConvergenceError, DomainError, TableTooShort
from .forms import FormDescriptor, FormKind
from .kernels import _fallback
from .oscillatory import PhaseProblem, Window, bump_window, exp, oracle_integral
from .special import _k_trapezoid, bessel_j, log_gamma

F_SUPPORT = (0.5, 2.5)
MU_MIN = 1e-3
SMALL_Z = 8.0
TAIL_BUDGET = 1e-6
ASYMPTOTIC_MIN_X = 5.0
_DEG = 20


# kernel tables


class _LogTable:
    """Chebyshev pieces in u = log z with non-uniform piece edges."""

    def __init__(self, edges: np.ndarray, coef: np.ndarray):
        self.edges = edges
        self.coef = coef

    @classmethod
    def build(cls, fn, z_lo: float, z_hi: float, rate):
        """Pieces no wider than 0.25 in u carrying at most 6 radians of phase; ``rate(z)`` is d(phase)/du."""
        edges = [math.log(z_lo)]
        top = math.log(z_hi)
        while edges[-1] < top:
            z = math.exp(edges[-1])
            step = min(0.25, 6.0 / rate(z * math.exp(0.25)), 6.0 / rate(z))
            edges.append(min(edges[-1] + step, top))
        edges = np.array(edges)
        k = np.arange(_DEG + 1)
        x = np.cos(np.pi * (k + 0.5) / (_DEG + 1))
        lo, hi = edges[:-1], edges[1:]
        u = 0.5 * (lo + hi)[:, None] + 0.5 * (hi - lo)[:, None] * x[None, :]
        vals = fn(u.ravel()).reshape(u.shape)
        theta = np.pi * (k + 0.5) / (_DEG + 1)
        m = np.cos(np.outer(k, theta)) * (2.0 / (_DEG + 1))
        m[0] *= 0.5
        return cls(edges, vals @ m.T)

    @property
    def z_range(self) -> tuple[float, float]:
        return math.exp(self.edges[0]), math.exp(self.edges[-1])

    def __call__(self, u):
        u = np.asarray(u, dtype=np.float64)
        p = np.clip(np.searchsorted(self.edges, u, side="right") - 1, 0, self.edges.size - 2)
        lo, hi = self.edges[p], self.edges[p + 1]
        x = 2.0 * (u - lo) / (hi - lo) - 1.0
        return _fallback._chebyshev_eval(self.coef[p], x).real


def _ode(sign: int, mu: float, u0: float, y0: tuple, u_end: float):
    """w'' = -sign (e^{2u} + sign 4 mu^2) w in u = log z; J for sign=+1, K for sign=-1."""
    m2 = 4.0 * mu * mu

    def rhs(u, y):
        z2 = math.exp(2.0 * u)
        return [y[1], -(z2 + m2) * y[0] if sign > 0 else (z2 - m2) * y[0]]

    return solve_ivp(rhs, (u0, u_end), list(y0), method="DOP853", rtol=1e-13, atol=1e-15,
                     dense_output=True)


def _c_plus_direct(mu: float, z: np.ndarray) -> np.ndarray:
    return -2.0 * math.pi * np.imag(bessel_j(2j * mu, z)) / math.sinh(math.pi * mu)


def _c_plus_derivative(mu: float, z: float) -> float:
    nu = 2j * mu
    d = bessel_j(nu - 1.0, z) - nu / z * bessel_j(nu, z)
    return -2.0 * math.pi * d.imag / math.sinh(math.pi * mu)


def _k_switch(mu: float) -> float:
    # above this point the cosine integral resolves K_{2i mu} in double precision
    return max(10.0, math.pi * mu)


class KernelTables:
    """C+ and C- for one mu, valid for z in [z_min, z_max]."""

    def __init__(self, mu: float, z_min: float = 1e-3, z_max: float = 400.0):
        if abs(mu) < MU_MIN:
            raise DomainError(f"|mu| must be >= {MU_MIN}")
        self.mu = float(mu)
        self.z_min, self.z_max = float(z_min), float(z_max)
        self._build_plus()
        self._build_minus()

    def _build_plus(self):
        mu = self.mu
        z0 = SMALL_Z
        u0 = math.log(z0)
        y0 = (float(_c_plus_direct(mu, np.array([z0]))[0]), z0 * _c_plus_derivative(mu, z0))
        sol = _ode(+1, mu, u0, y0, math.log(self.z_max) + 1e-9)
        self.plus_hi = _LogTable.build(lambda u: sol.sol(u)[0], z0, self.z_max, self._rate)

    def _build_minus(self):
        mu = self.mu
        c = 4.0 * math.cosh(math.pi * mu)
        z1 = _k_switch(mu)
        rho = 2.0 * abs(mu)
        self.k_switch = z1
        # above z1: tabulate e^{z} C-(z), which varies slowly
        hi = max(self.z_max, z1 * 1.01)

        def scaled(u):
            return c * _k_trapezoid(rho, np.exp(u), scaled=True)

        self.minus_hi = _LogTable.build(scaled, z1, hi, self._rate)
        y0 = (c * float(_k_trapezoid(rho, np.array([z1]))[0]),
              c * z1 * float(_k_trapezoid(rho, np.array([z1]), deriv=True)[0]))
        sol = _ode(-1, mu, math.log(z1), y0, math.log(self.z_min) - 1e-9)
        self.minus_lo = _LogTable.build(lambda u: sol.sol(u)[0], self.z_min, z1, self._rate)

    def _rate(self, z: float) -> float:
        return math.sqrt(z * z + 4 * self.mu**2) + 1.0

    def plus(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        if z.size and np.max(z) > self.z_max * (1 + 1e-12):
            raise DomainError(f"kernel argument above the tabulated range {self.z_max}")
        out = np.empty(z.shape)
        small = z <= SMALL_Z
        if np.any(small):
            out[small] = _c_plus_direct(self.mu, z[small])
        if np.any(~small):
            out[~small] = self.plus_hi(np.log(z[~small]))
        return out

    def minus(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        if z.size and np.min(z) < self.z_min * (1 - 1e-12):
            raise DomainError(f"kernel argument below the tabulated range {self.z_min}")
        out = np.zeros(z.shape)
        low = z < self.k_switch
        if np.any(low):
            out[low] = self.minus_lo(np.log(z[low]))
        mid = (~low) & (z <= self.minus_hi.z_range[1] * (1 + 1e-12))
        if np.any(mid):
            zz = z[mid]
            out[mid] = np.exp(-zz) * self.minus_hi(np.log(zz))
        far = (z > self.minus_hi.z_range[1] * (1 + 1e-12)) & (z < 745.0)
        if np.any(far):
            out[far] = 4.0 * math.cosh(math.pi * self.mu) * _k_trapezoid(2 * abs(self.mu), z[far])
        return out


@lru_cache(maxsize=16)
def kernel_tables(mu: float, z_max: float = 400.0) -> KernelTables:
    return KernelTables(mu, z_max=z_max)


def _tables_for(mu: float, z_needed: float) -> KernelTables:
    z_max = 400.0
    while z_max < z_needed:
        z_max *= 2
    return kernel_tables(float(mu), z_max)


# test functions and the kernel descriptor


def default_test_function(center: float = 1.5, sigma: float = 0.13) -> Window:
    """Gaussian exp(-(y-center)^2/(2 sigma^2)) times a flat bump on [1/2, 5/2]."""
    lo, hi = F_SUPPORT
    bump = bump_window(lo, hi, beta=0.25)

    def prof(y):
        d = (y - center) / sigma
        return exp(-0.5 * d * d) * bump.profile(y)

    return Window(prof, lo, hi)


def _asymptotic_coeffs(mu: float, J: int) -> tuple[np.ndarray, np.ndarray]:
    """c_j, d_j from the Hankel expansions of J_{+-2i mu} at argument 4 pi sqrt(xy)."""
    nu2x4 = 4.0 * (2j * mu) ** 2
    a = [1.0 + 0j]
    for k in range(1, J + 1):
        a.append(a[-1] * (nu2x4 - (2 * k - 1) ** 2) / (k * 8.0))
    a = np.array(a)
    k = np.arange(J + 1)
    scale = (4 * math.pi) ** (-k.astype(float))
    c = (1j / math.sqrt(2)) * (1j ** k) * a * scale * np.exp(-1j * math.pi / 4)
    d = (-1j / math.sqrt(2)) * ((-1j) ** k) * a * scale * np.exp(1j * math.pi / 4)
    return c, d


@dataclass(frozen=True)
class VoronoiKernel:
    F: Window = field(default_factory=default_test_function)
    mu: float = 1.0
    J: int = 2
    c_seq: tuple = field(default=(), compare=False)
    d_seq: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.F.lo < F_SUPPORT[0] - 1e-12 or self.F.hi > F_SUPPORT[1] + 1e-12:
            raise DomainError("F must be supported in [1/2, 5/2]")
        if not 0 <= self.J <= 6:
            raise DomainError("expansion order J must be in 0..6")
        if abs(self.mu) < MU_MIN:
            raise DomainError(f"|mu| must be >= {MU_MIN}; the mu -> 0 limit is approached by continuity")
        c, d = _asymptotic_coeffs(self.mu, 6)
        object.__setattr__(self, "c_seq", tuple(c[:self.J + 1]))
        object.__setattr__(self, "d_seq", tuple(d[:self.J + 1]))

    def with_F(self, F: Window) -> "VoronoiKernel":
        return VoronoiKernel(F, self.mu, self.J)


# Phi by quadrature in y


def _y_nodes(x_max: float, mu: float, refine: int):
    lo, hi = F_SUPPORT
    # kernel phase across the support: z-variation plus the 2 mu log z oscillation
    phase = 4 * math.pi * math.sqrt(x_max) * (math.sqrt(hi) - math.sqrt(lo)) + 2 * abs(mu) * 0.5 * math.log(hi / lo)
    panels = (int(math.ceil(phase / math.pi)) + 16) * refine
    g, w = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    y = (mid[:, None] + half[:, None] * g[None, :]).ravel()
    wy = (half[:, None] * w[None, :]).ravel()
    return y, wy


_PHI_CHUNK = 256


def _phi(k: VoronoiKernel, x, sign: int, refine: int) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(x <= 0):
        raise DomainError("Phi needs x > 0")
    if x.size > _PHI_CHUNK:
        # sorted chunks keep the y grid matched to each chunk's largest x and bound memory
        order = np.argsort(x)
        out = np.empty(x.size)
        for i in range(0, x.size, _PHI_CHUNK):
            idx = order[i:i + _PHI_CHUNK]
            out[idx] = _phi(k, x[idx], sign, refine)
        return out
    y, wy = _y_nodes(float(x.max()), k.mu, refine)
    Fw = k.F(y) * wy
    on = Fw != 0
    y, Fw = y[on], Fw[on]
    z = 4 * math.pi * np.sqrt(np.outer(x, y))
    tables = _tables_for(k.mu, float(z.max()))
    ker = tables.plus(z) if sign > 0 else tables.minus(z)
    return ker @ Fw


def _phi_checked(k: VoronoiKernel, x, sign: int):
    scalar = np.ndim(x) == 0
    a = _phi(k, x, sign, 1)
    b = _phi(k, x, sign, 2)
    if np.any(np.abs(a - b) > 1e-7 * np.maximum(1.0, np.abs(b))):
        raise ConvergenceError("Phi quadrature resolutions disagree beyond 1e-7")
    return float(b[0]) if scalar else b


def phi_plus(k: VoronoiKernel, x):
    """Phi^+_F(x) (real for real F); scalar or array x."""
    return _phi_checked(k, x, +1)


def phi_minus(k: VoronoiKernel, x):
    """Phi^-_F(x); scalar or array x."""
    return _phi_checked(k, x, -1)


def phi_plus_asymptotic(k: VoronoiKernel, x: float) -> complex:
    """x^{-1/4} int F(y) y^{-1/4} sum_{j<=J} (c_j e(2 sqrt(xy)) + d_j e(-2 sqrt(xy)))/(xy)^{j/2} dy."""
    x = float(x)
    if x < ASYMPTOTIC_MIN_X:
        raise DomainError(f"the expansion is used for x >= {ASYMPTOTIC_MIN_X}")
    total = 0.0 + 0.0j
    # split the support into pieces of the form [Z, 2Z] for the oscillatory oracle
    pieces = [(0.5, 1.0), (1.0, 2.0), (2.0, 2.5)]
    for j in range(k.J + 1):
        for sgn, coef in ((1, k.c_seq[j]), (-1, k.d_seq[j])):
            for lo, hi in pieces:
                F = k.F

                def prof(y, j=j):
                    return F(y) * y ** (-0.25 - 0.5 * j)

                w = Window(prof, lo, hi)
                lam = sgn * 4 * math.pi * math.sqrt(x)
                p = PhaseProblem(w, lambda y, lam=lam: lam * y ** 0.5, lo, 1.0, max(1.0, abs(lam)))
                total += coef * x ** (-0.5 * j) * oracle_integral(p)
    return x ** (-0.25) * total


# Mellin transform on Re s = 0.05


MELLIN_RE = 0.05
MELLIN_SPLIT = 0.01  # below this x the kernel's power series is integrated termwise


def _mellin_small_x(k: VoronoiKernel, sign: int, s: np.ndarray, x0: float) -> np.ndarray:
    """int_0^{x0} x^{s-1} Phi(x) dx from the small-argument series of the kernel, termwise."""
    mu = k.mu
    y, wy = _y_nodes(1.0, mu, 2)
    Fw = k.F(y) * wy
    out = np.zeros(s.shape, dtype=np.complex128)
    if sign > 0:
        # C+(z) = (-pi/sin(pi i mu)) sum_{+-} +- (z/2)^{+-2i mu} sum_k (-z^2/4)^k/(k! Gamma(k+1+-2i mu))
        pref = -math.pi / (1j * math.sinh(math.pi * mu))
        for sg in (1, -1):
            nu = sg * 2j * mu
            for kk in range(0, 40):
                # (z/2)^{nu+2k} with z = 4 pi sqrt(xy): (2 pi)^{nu+2k} (xy)^{nu/2+k}
                e = nu / 2 + kk
                cst = sg * pref * (-1) ** kk * np.exp((nu + 2 * kk) * math.log(2 * math.pi)
                                                      - math.lgamma(kk + 1) - log_gamma(kk + 1 + nu))
                my = np.sum(Fw * y ** e)
                out += cst * my * x0 ** (s + e) / (s + e)
    else:
        # K_{nu}(z) = pi/2 (I_{-nu} - I_nu)/sin(nu pi)
        c4 = 4 * math.cosh(math.pi * mu)
        for sg in (1, -1):
            nu = sg * 2j * mu
            pref = c4 * (math.pi / 2) / np.sin(2j * mu * math.pi) * (-sg)
            for kk in range(0, 40):
                e = nu / 2 + kk
                cst = pref * np.exp((nu + 2 * kk) * math.log(2 * math.pi) - math.lgamma(kk + 1)
                                    - log_gamma(kk + 1 + nu))
                my = np.sum(Fw * y ** e)
                out += cst * my * x0 ** (s + e) / (s + e)
    return out


def _phi_values(k: VoronoiKernel, x: np.ndarray, sign: int) -> np.ndarray:
    return _phi(k, x, sign, 2)


MELLIN_NOISE = 1e-13


def mellin_cutoff(k: VoronoiKernel, sign: int, level: float = MELLIN_NOISE) -> tuple[float, float]:
    """(X, bound): Phi stays below ``level`` on [X, 4X] and the analytic tail bound beyond X.

    The bound integrates the envelope level (X/x)^A x^{-0.95} over x > X, with A
    fitted on the decaying stretch [X/4, X]; it is required to be below the
    1e-6 tail budget.
    """
    x = 2.0
    while x < 1e5:
        xs = np.geomspace(x, 4 * x, 64)
        v = np.abs(_phi_values(k, xs, sign))
        if float(v.max()) <= level:
            lead = np.geomspace(x / 4, x, 32)
            lv = np.abs(_phi_values(k, lead, sign))
            A = max(-np.polyfit(np.log(lead), np.log(np.maximum(lv, 1e-300)), 1)[0], 1.0)
            bound = level * x ** 0.05 / (A - 0.05)
            if bound > TAIL_BUDGET:
                raise ConvergenceError("Mellin tail bound exceeds the budget")
            return x, bound
        x *= 2
    raise ConvergenceError("Phi does not reach the noise level for the Mellin tail bound")


def mellin_phi(k: VoronoiKernel, sign: int, s_im, refine: int = 1, split: float = MELLIN_SPLIT,
               stretch: float = 1.0) -> np.ndarray:
    """Phi~(0.05 + i s_im) by the three-range split (0,1], (1, X], (X, oo).

    (0, split] is integrated termwise from the kernel's power series, (split, 1]
    and (1, X] by Gauss-Legendre panels in log x, and (X, oo) is only bounded.
    ``refine``, ``split`` and ``stretch`` (a factor on X) vary the discretization.
    """
    s = MELLIN_RE + 1j * np.atleast_1d(np.asarray(s_im, dtype=np.float64))
    X = mellin_cutoff(k, sign)[0] * stretch
    total = _mellin_small_x(k, sign, s, split)
    g, w = np.polynomial.legendre.leggauss(16)
    smax = float(np.max(np.abs(s.imag)))
    for v_lo, v_hi, phase in ((math.log(split), 0.0, 0.0), (0.0, math.log(X), 4 * math.pi * math.sqrt(2.5 * X))):
        if v_hi <= v_lo:
            continue
        width = v_hi - v_lo
        npan = int(math.ceil(((smax + 2 * abs(k.mu) + 20) * width + phase) / math.pi)) * refine
        edges = np.linspace(v_lo, v_hi, npan + 1)
        v = (0.5 * (edges[1:] + edges[:-1])[:, None] + 0.5 * np.diff(edges)[:, None] * g[None, :]).ravel()
        wv = (0.5 * np.diff(edges)[:, None] * w[None, :]).ravel()
        ph = _phi_values(k, np.exp(v), sign)
        total = total + np.exp(np.outer(s, v)) @ (ph * wv)
    return total


def mellin_noise(k: VoronoiKernel, sign: int, s_im) -> np.ndarray:
    """Discretization noise: change of Phi~ when refine, split and X all change."""
    a = mellin_phi(k, sign, s_im)
    b = mellin_phi(k, sign, s_im, refine=2, split=MELLIN_SPLIT / 2, stretch=2.0)
    return np.abs(a - b)


def mellin_phi_exact(k: VoronoiKernel, sign: int, s_im) -> np.ndarray:
    """Closed form F~(1-s) times the Mellin transform of the Bessel kernel (independent oracle)."""
    s = MELLIN_RE + 1j * np.atleast_1d(np.asarray(s_im, dtype=np.float64))
    y, wy = _y_nodes(1.0, k.mu, 4)
    Fw = k.F(y) * wy
    Ft = np.exp(-np.outer(s, np.log(y))) @ Fw
    mu = k.mu
    two_pi = -2 * s * math.log(2 * math.pi)
    if sign > 0:
        pref = -math.pi / (1j * math.sinh(math.pi * mu))
        g1 = np.exp(two_pi + log_gamma(s + 1j * mu) - log_gamma(1 + 1j * mu - s))
        g2 = np.exp(two_pi + log_gamma(s - 1j * mu) - log_gamma(1 - 1j * mu - s))
        ker = pref * (g1 - g2)
    else:
        ker = 4 * math.cosh(math.pi * mu) * 0.5 * np.exp(two_pi + log_gamma(s + 1j * mu) + log_gamma(s - 1j * mu))
    return Ft * ker


def mellin_phi_decay(k: VoronoiKernel, sign: str | int = "plus", s_im_max: float = 100.0,
                     points: int = 41) -> list[tuple[complex, float]]:
    """(s, |Phi~(s)|) on Re s = 0.05, Im s in [0, s_im_max]."""
    sg = {"plus": 1, "minus": -1, 1: 1, -1: -1}[sign]
    t = np.linspace(0.0, float(s_im_max), points)
    vals = mellin_phi(k, sg, t)
    return [(complex(MELLIN_RE, ti), float(abs(v))) for ti, v in zip(t, vals)]


def mellin_slope(k: VoronoiKernel, sign: str | int = "plus", lo: float = 10.0, hi: float = 100.0,
                 points: int = 24, refine: int = 1) -> float:
    """Least-squares slope of log|Phi~(s)| against log(1+|s|) over |s| in [lo, hi].

    Values within ten times the discretization noise are excluded from the fit.
    """
    sg = {"plus": 1, "minus": -1, 1: 1, -1: -1}[sign]
    t = np.geomspace(lo, hi, points)
    vals = np.abs(mellin_phi(k, sg, t, refine))
    noise = mellin_noise(k, sg, t)
    keep = vals > 10 * noise
    if keep.sum() < 4:
        raise ConvergenceError("fewer than four Mellin values above the noise floor")
    s_abs = np.abs(MELLIN_RE + 1j * t[keep])
    return float(np.polyfit(np.log1p(s_abs), np.log(vals[keep]), 1)[0])


# the summation identity


def _require_maass(f: FormDescriptor):
    if f.kind is not FormKind.MAASS or f.mu is None:
        raise DomainError("the Voronoi identity here is for Maass descriptors")


@dataclass
class VoronoiCheck:
    lhs: complex
    rhs: complex
    residual: float
    n_cut: int


def voronoi_sides(f: FormDescriptor, a: int, q: int, N: float, k: VoronoiKernel | None = None,
                  budget: float = TAIL_BUDGET) -> VoronoiCheck:
    """Both sides of sum lambda(n) e(an/q) F(n/N) = N/q sum_+- sum lambda(n) e(-+ abar n/q) Phi^+-(nN/q^2)."""
    _require_maass(f)
    a, q = int(a), int(q)
    if q < 1 or math.gcd(a, q) != 1:
        raise DomainError("need q >= 1 and gcd(a, q) = 1")
    k = k or VoronoiKernel(mu=float(f.mu))
    if abs(k.mu - f.mu) > 1e-9 * max(1.0, abs(f.mu)):
        raise DomainError("kernel mu differs from the form's spectral parameter")
    lam = np.asarray(f.eigenvalues, dtype=np.float64)
    lo, hi = F_SUPPORT
    n_hi = int(math.floor(hi * N))
    f.require(n_hi)
    n = np.arange(max(1, int(math.ceil(lo * N))), n_hi + 1)
    lhs_terms = lam[n - 1] * np.exp(2j * np.pi * ((a * n) % q) / q) * k.F(n / N)
    lhs = complex(math.fsum(lhs_terms.real.tolist()), math.fsum(lhs_terms.imag.tolist()))

    abar = mod_inverse(a, q) if q > 1 else 1
    n_all = np.arange(1, f.n_max + 1)
    x = n_all * N / q**2
    pp = _phi(k, x, +1, 2)
    pm = _phi(k, x, -1, 2)
    mag = np.abs(lam) * (np.abs(pp) + np.abs(pm)) * N / q
    # tail after n: sum of the remaining table terms; the table end must itself be negligible
    tail = np.concatenate([np.cumsum(mag[::-1])[::-1][1:], [0.0]])
    if mag[-1] * f.n_max > 0.1 * budget:
        raise TableTooShort(f"eigenvalue table of length {f.n_max} does not reach the Phi tail budget")
    n_cut = int(np.argmax(tail <= budget)) + 1
    sel = slice(0, n_cut)
    ph = 2j * np.pi * ((abar * n_all[sel]) % q) / q
    rhs_terms = lam[sel] * (np.exp(-ph) * pp[sel] + np.exp(ph) * pm[sel]) * N / q
    rhs = complex(math.fsum(rhs_terms.real.tolist()), math.fsum(rhs_terms.imag.tolist()))
    return VoronoiCheck(lhs, rhs, abs(lhs - rhs), n_cut)


def voronoi_residual(f: FormDescriptor, a: int, q: int, N: float, k: VoronoiKernel | None = None) -> float:
    return voronoi_sides(f, a, q, N, k).residual


__all__ = [
    "VoronoiKernel", "KernelTables", "kernel_tables", "default_test_function", "phi_plus", "phi_minus",
    "phi_plus_asymptotic", "mellin_cutoff", "mellin_noise", "mellin_phi", "mellin_phi_exact",
    "mellin_phi_decay", "mellin_slope",
    "voronoi_sides", "voronoi_residual", "VoronoiCheck", "F_SUPPORT",
]
