"""The mixed moment int V(t/T) L(1/2+it, f) zeta(1/2-it)^2 dt and its main term.

Quadrature is composite 6-point Gauss-Legendre on equal panels covering the
window support [T, 2T].  ``grid_step`` is the mean node spacing, so a panel is
six grid steps wide.  Every run is repeated on panels half as wide; if the two
results differ by more than 1% of the main term the run is rejected.
"""
from __future__ import annotations

import enum
import io
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, GridTooCoarse
from .forms import FormDescriptor, l_at_one
from .kernels import PiecewiseCheb, cheb_nodes, fit_piecewise
from .lfunc import (afe_l_values, afe_zeta_squared_values, direct_table_length, direct_width,
                    l_values_direct, zeta, zeta_line)

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(6)
ZETA2 = math.pi**2 / 6.0
RICHARDSON_TOL = 0.01
AFE_MOMENT_TOL = 1e-2
_BATCH = 8192


RAMP_ALPHA = 0.5


def _bump(s):
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros(s.shape)
    on = (s > 0) & (s < 1)
    out[on] = np.exp(-RAMP_ALPHA / (s[on] * (1.0 - s[on])))
    return out


def _bump_integral(a, b, panels: int = 8):
    x, w = np.polynomial.legendre.leggauss(40)
    edges = np.linspace(a, b, panels + 1)
    tot = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        tot = tot + 0.5 * (hi - lo) * (_bump(0.5 * (hi + lo) + 0.5 * (hi - lo) * x[:, None]).T @ w)
    return tot


@lru_cache(maxsize=1)
def _ramp_table() -> PiecewiseCheb:
    nodes = cheb_nodes(0.0, 1.0, 16, 24)
    mass = float(_bump_integral(np.zeros(1), np.ones(1))[0])
    flat = nodes.ravel()
    # integrate from the nearer end so the small values keep their relative accuracy
    lower = flat <= 0.5
    vals = np.empty(flat.size)
    vals[lower] = _bump_integral(np.zeros(lower.sum()), flat[lower]) / mass
    vals[~lower] = 1.0 - _bump_integral(flat[~lower], np.ones((~lower).sum())) / mass
    return fit_piecewise(vals.reshape(nodes.shape), 0.0, 1.0, 0.0)


def _ramp(s):
    """Integrated mollifier exp(-1/(2s(1-s))): 0 for s <= 0, 1 for s >= 1, ramp(s) + ramp(1-s) = 1."""
    s = np.asarray(s, dtype=np.float64)
    out = np.where(s >= 1.0, 1.0, 0.0)
    mid = (s > 0) & (s < 1)
    if np.any(mid):
        out[mid] = _ramp_table()(s[mid]).real
    return out


@dataclass(frozen=True)
class SmoothWindow:
    """V(x) = ramp((x-1) delta) ramp((2-x) delta): support [1, 2], equal to 1 on [1+1/delta, 2-1/delta]."""

    delta: float
    c: float = field(default=float("nan"))
    sharp: bool = False

    @property
    def plateau(self) -> tuple[float, float]:
        return (1.0 + 1.0 / self.delta, 2.0 - 1.0 / self.delta) if not self.sharp else (1.0, 2.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.sharp:
            return ((x >= 1.0) & (x <= 2.0)).astype(np.float64)
        lo, hi = self.plateau
        # rounding in (x-1) delta must not pull the plateau below 1
        return np.where((x >= lo) & (x <= hi), 1.0, _ramp((x - 1.0) * self.delta) * _ramp((2.0 - x) * self.delta))


def _panel_integral(fn, a: float, b: float, panels: int) -> float:
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * GL_NODES[None, :]).ravel()
    vals = fn(x).reshape(panels, 6)
    return tree_sum((vals @ GL_WEIGHTS) * half)


def make_window(delta: float) -> SmoothWindow:
    """Window with derivative scale delta >= 2; its mass is computed by quadrature."""
    delta = float(delta)
    if delta < 2:
        raise DomainError("window needs delta >= 2")
    w = SmoothWindow(delta)
    # the ramps live on [1, 1+1/delta] and [2-1/delta, 2]; the plateau is exact
    r = 1.0 / delta
    ramps = _panel_integral(w, 1.0, 1.0 + r, 64) + _panel_integral(w, 2.0 - r, 2.0, 64)
    c = ramps + (1.0 - 2.0 * r)
    return SmoothWindow(delta, float(c))


def sharp_window() -> SmoothWindow:
    return SmoothWindow(float("inf"), 1.0, sharp=True)


def tree_sum(x) -> complex | float:
    """Pairwise sum in a fixed order that depends only on len(x)."""
    x = np.asarray(x)
    while x.size > 1:
        if x.size % 2:
            x = np.concatenate([x, np.zeros(1, dtype=x.dtype)])
        x = x[0::2] + x[1::2]
    return x[0] if x.size else 0.0


def main_term(f: FormDescriptor, T: float, w: SmoothWindow, l_one: float | None = None) -> float:
    """2 c T L(1, f)^2 / zeta(2)."""
    l1 = l_at_one(f) if l_one is None else float(l_one)
    return 2.0 * w.c * float(T) * l1 * l1 / ZETA2


class Engine(enum.Enum):
    DIRECT = "direct"
    AFE = "afe"


@dataclass(frozen=True)
class MomentJob:
    form: FormDescriptor
    T: float
    window: SmoothWindow
    grid_step: float | None = None
    engine: Engine = Engine.DIRECT
    workers: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "engine", Engine(self.engine))
        if self.T < 50:
            raise DomainError("moment jobs need T >= 50")
        if self.grid_step is None:
            object.__setattr__(self, "grid_step", default_grid_step(self.T))
        if not 0 < self.grid_step <= 0.2 / math.log(self.T) * (1 + 1e-12):
            raise DomainError("grid_step must be positive and <= 0.2/log T")


def default_grid_step(T: float) -> float:
    return 0.1 / math.log(T)


def required_table_length(T: float, engine: Engine | str = Engine.DIRECT) -> int:
    """Eigenvalue table length the integrand needs on [T, 2T]."""
    from .lfunc import afe_tail_v0

    if Engine(engine) is Engine.DIRECT:
        return direct_table_length(2 * T, direct_width(T))
    v0 = afe_tail_v0(AFE_MOMENT_TOL, 2 * T)
    return int(math.ceil(2 * T / (2 * math.pi) * math.exp(v0))) + 1


@dataclass
class MomentReport:
    T: float
    c: float
    l_one: float
    moment: complex
    main_term: float
    grid_step: float
    panels: int
    richardson_defect: float
    seconds: float = 0.0
    engine: str = "direct"
    edge_strip_bound: float | None = None
    residual: complex = field(init=False)
    ratio: float = field(init=False)

    def __post_init__(self):
        self.residual = self.moment - self.main_term
        self.ratio = self.moment.real / self.main_term

    FIELDS = ("T", "c", "l_one", "zeta2", "moment_re", "moment_im", "main_term", "residual_re",
              "residual_im", "ratio", "grid_step", "panels", "richardson_defect", "seconds")

    def row(self) -> dict:
        return {
            "T": self.T, "c": self.c, "l_one": self.l_one, "zeta2": ZETA2,
            "moment_re": self.moment.real, "moment_im": self.moment.imag,
            "main_term": self.main_term, "residual_re": self.residual.real, "residual_im": self.residual.imag,
            "ratio": self.ratio, "grid_step": self.grid_step, "panels": self.panels,
            "richardson_defect": self.richardson_defect, "seconds": self.seconds,
        }

    def to_json(self) -> str:
        parts = []
        for k, v in self.row().items():
            parts.append(f'  "{k}": {fmt_number(v)}')
        return "{\n" + ",\n".join(parts) + "\n}\n"


def fmt_number(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.15g" % float(v)


def reports_to_csv(reports) -> str:
    out = io.StringIO()
    out.write(",".join(MomentReport.FIELDS) + "\n")
    for r in reports:
        out.write(",".join(fmt_number(v) for v in r.row().values()) + "\n")
    return out.getvalue()


def _integrand(job: MomentJob, t: np.ndarray) -> np.ndarray:
    """V(t/T) L(1/2+it, f) zeta(1/2-it)^2 at the nodes (batched)."""
    out = np.empty(t.size, dtype=np.complex128)
    width = direct_width(job.T)
    for lo in range(0, t.size, _BATCH):
        tt = t[lo:lo + _BATCH]
        v = job.window(tt / job.T)
        if job.engine is Engine.DIRECT:
            L = l_values_direct(job.form, tt, width=width, workers=job.workers)
            z2 = zeta_line(-tt, workers=job.workers) ** 2
        else:
            L = afe_l_values(job.form, tt, tol=AFE_MOMENT_TOL, blockwise=False, workers=job.workers)
            z2 = afe_zeta_squared_values(tt, tol=AFE_MOMENT_TOL, blockwise=False, workers=job.workers)
        out[lo:lo + _BATCH] = v * L * z2
    return out


def _gl_moment(job: MomentJob, panels: int, keep: bool = False):
    a, b = job.T, 2.0 * job.T
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + half[:, None] * GL_NODES[None, :]).ravel()
    vals = _integrand(job, t)
    total = complex(tree_sum((vals.reshape(panels, 6) @ GL_WEIGHTS) * half))
    return (total, t, vals) if keep else total


def _panels(job: MomentJob) -> int:
    return int(math.ceil(job.T / (6.0 * job.grid_step)))


def mixed_moment(job: MomentJob, l_one: float | None = None, *, timing: bool = False,
                 richardson_tol: float | None = None, _keep: list | None = None) -> MomentReport:
    """Composite Gauss-Legendre quadrature of the mixed moment with a Richardson check."""
    start = time.perf_counter()
    panels = _panels(job)
    if _keep is not None:
        coarse, t, vals = _gl_moment(job, panels, keep=True)
        _keep.extend([t, vals])
    else:
        coarse = _gl_moment(job, panels)
    fine = _gl_moment(job, 2 * panels)
    l1 = l_at_one(job.form) if l_one is None else float(l_one)
    mt = main_term(job.form, job.T, job.window, l1)
    defect = abs(fine - coarse) / mt
    if defect > (RICHARDSON_TOL if richardson_tol is None else richardson_tol):
        raise GridTooCoarse(f"halving grid_step moved the moment by {100 * defect:.2f}% of the main term")
    return MomentReport(T=float(job.T), c=job.window.c, l_one=l1, moment=coarse, main_term=mt,
                        grid_step=job.T / (6.0 * panels), panels=panels, richardson_defect=float(defect),
                        seconds=(time.perf_counter() - start) if timing else 0.0, engine=job.engine.value)


def sharp_cutoff_moment(f: FormDescriptor, T: float, grid_step: float | None = None, *,
                        l_one: float | None = None, engine: Engine | str = Engine.DIRECT,
                        workers: int | None = None, timing: bool = False,
                        compare_delta: float | None = None, richardson_tol: float | None = None) -> MomentReport:
    """int_T^{2T} L(1/2+it, f) zeta(1/2-it)^2 dt against 2 T L(1,f)^2/zeta(2).

    With ``compare_delta`` the report also carries the edge-strip bound
    4 (T/delta) max|integrand| over the two strips of width T/delta.
    """
    job = MomentJob(f, T, sharp_window(), grid_step, Engine(engine), workers)
    keep: list = []
    rep = mixed_moment(job, l_one, timing=timing, richardson_tol=richardson_tol, _keep=keep)
    if compare_delta is not None:
        t, vals = keep
        strip = T / float(compare_delta)
        on = (t <= T + strip) | (t >= 2 * T - strip)
        rep.edge_strip_bound = 4.0 * strip * float(np.max(np.abs(vals[on])))
    return rep


def mean_value_ratio(coeffs, T: float, grid_step: float | None = None) -> float:
    """int_0^T |sum a_n n^{it}|^2 dt / ((T + 3N) sum |a_n|^2), by Gauss-Legendre panels."""
    a = np.asarray(coeffs, dtype=np.complex128)
    N = a.size
    if N < 1:
        raise DomainError("need at least one coefficient")
    if T <= 0:
        raise DomainError("T must be positive")
    logn = np.log(np.arange(1, N + 1, dtype=np.float64))
    step = grid_step or 0.25 / max(1.0, math.log(N + 1))
    panels = int(math.ceil(T / (6.0 * step)))

    def fn(t):
        out = np.empty(t.size)
        for lo in range(0, t.size, 4096):
            ph = np.exp(1j * np.outer(t[lo:lo + 4096], logn))
            out[lo:lo + 4096] = np.abs(ph @ a) ** 2
        return out

    integral = float(_panel_integral(fn, 0.0, float(T), panels))
    return integral / ((T + 3.0 * N) * float(np.sum(np.abs(a) ** 2)))


def mean_value_exact(coeffs, T: float) -> float:
    """Closed form of int_0^T |sum a_n n^{it}|^2 dt (oracle for the quadrature)."""
    a = np.asarray(coeffs, dtype=np.complex128)
    logn = np.log(np.arange(1, a.size + 1, dtype=np.float64))
    d = logn[:, None] - logn[None, :]
    off = d != 0
    kern = np.full(d.shape, float(T), dtype=np.complex128)
    kern[off] = (np.exp(1j * T * d[off]) - 1.0) / (1j * d[off])
    return float(np.real(a @ kern @ np.conj(a)))


@dataclass
class ScalingResult:
    exponent: float
    reports: list

    def csv(self) -> str:
        return reports_to_csv(self.reports)


def fit_exponent(xs, ys) -> float:
    lx = np.log(np.asarray(xs, dtype=np.float64))
    ly = np.log(np.asarray(ys, dtype=np.float64))
    return float(np.polyfit(lx, ly, 1)[0])


def scaling_study(f: FormDescriptor, T_list, window_delta: float, *, grid_step=None,
                  engine: Engine | str = Engine.DIRECT, workers: int | None = None,
                  l_one: float | None = None, richardson_tol: float | None = None) -> ScalingResult:
    """Moments over a dyadic list of T and the least-squares exponent of |residual|."""
    T_list = [float(T) for T in T_list]
    if len(T_list) < 4:
        raise DomainError("scaling study needs at least four heights")
    for a, b in zip(T_list, T_list[1:]):
        if abs(b / a - 2.0) > 1e-9:
            raise DomainError("heights must be dyadic (each twice the previous)")
    w = make_window(window_delta)
    l1 = l_at_one(f) if l_one is None else float(l_one)
    reps = []
    for T in T_list:
        gs = grid_step(T) if callable(grid_step) else grid_step
        reps.append(mixed_moment(MomentJob(f, T, w, gs, Engine(engine), workers), l1, richardson_tol=richardson_tol))
    expo = fit_exponent(T_list, [abs(r.residual) for r in reps])
    return ScalingResult(expo, reps)


def short_interval_second_moments(f: FormDescriptor, T: float, delta: float, samples: int = 2048) -> dict:
    """Diagnostics int_T^{T+T/delta} |L|^2 and |zeta|^4 (no asymptotic is asserted)."""
    t = np.linspace(T, T + T / delta, samples)
    L = l_values_direct(f, t)
    z = zeta_line(t)
    h = t[1] - t[0]
    trap = lambda y: float(h * (y.sum() - 0.5 * (y[0] + y[-1])))
    return {"L2": trap(np.abs(L) ** 2), "zeta4": trap(np.abs(z) ** 4)}


__all__ = [
    "SmoothWindow", "make_window", "sharp_window", "main_term", "Engine", "MomentJob", "MomentReport",
    "mixed_moment", "sharp_cutoff_moment", "mean_value_ratio", "mean_value_exact", "scaling_study",
    "ScalingResult", "reports_to_csv", "fit_exponent", "tree_sum", "zeta", "required_table_length",
    "short_interval_second_moments", "default_grid_step",
]
