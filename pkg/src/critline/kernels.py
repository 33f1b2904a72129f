"""Backend selection for the hot loops and the piecewise Chebyshev weights they use.

The compiled extension is preferred; the numpy fallback is selected at import
when the extension is missing or when ``CRITLINE_BACKEND=python`` is set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_choice = os.environ.get("CRITLINE_BACKEND", "").lower()
if _choice == "python" or _compiled is None:
    BACKEND = "python"
    _impl = _fallback
else:
    BACKEND = "compiled"
    _impl = _compiled


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def _module(backend: str | None):
    if backend is None:
        return _impl
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if backend == "python":
        return _fallback
    raise ValueError(f"unknown backend {backend!r}")


def worker_count(default: int = 1) -> int:
    """Worker count from CRITLINE_WORKERS (falls back to ``default``)."""
    raw = os.environ.get("CRITLINE_WORKERS")
    if raw is None or raw.strip() == "":
        return max(1, int(default))
    n = int(raw)
    if n < 1:
        raise ValueError("CRITLINE_WORKERS must be >= 1")
    return n


@dataclass(frozen=True)
class PiecewiseCheb:
    """Chebyshev pieces on [vlo, vhi]; constant ``left`` below vlo, zero above vhi.

    ``coef`` has shape (rows, pieces, degree+1); ``left`` has shape (rows,).
    """

    vlo: float
    vhi: float
    coef: np.ndarray
    left: np.ndarray

    @property
    def pieces(self) -> int:
        return self.coef.shape[1]

    def __call__(self, v, row: int = 0):
        v = np.asarray(v, dtype=np.float64)
        out = np.zeros(v.shape, dtype=np.complex128)
        width = (self.vhi - self.vlo) / self.pieces
        below = v < self.vlo
        inside = (~below) & (v < self.vhi)
        out[below] = self.left[row]
        if np.any(inside):
            vi = v[inside]
            p = np.clip(np.floor((vi - self.vlo) / width).astype(np.int64), 0, self.pieces - 1)
            x = 2.0 * (vi - self.vlo - p * width) / width - 1.0
            out[inside] = _fallback._chebyshev_eval(self.coef[row][p], x)
        return out


def cheb_nodes(vlo: float, vhi: float, pieces: int, degree: int) -> np.ndarray:
    """Chebyshev points of the first kind for every piece, shape (pieces, degree+1)."""
    k = np.arange(degree + 1)
    x = np.cos(np.pi * (k + 0.5) / (degree + 1))
    width = (vhi - vlo) / pieces
    left = vlo + width * np.arange(pieces)
    return left[:, None] + 0.5 * width * (x[None, :] + 1.0)


def cheb_transform(degree: int) -> np.ndarray:
    """Matrix mapping samples at first-kind nodes to Chebyshev coefficients."""
    n = degree + 1
    k = np.arange(n)
    theta = np.pi * (k + 0.5) / n
    m = np.cos(np.outer(k, theta)) * (2.0 / n)
    m[0] *= 0.5
    return m


def fit_piecewise(samples: np.ndarray, vlo: float, vhi: float, left) -> PiecewiseCheb:
    """Coefficients from samples at ``cheb_nodes``; samples shape (rows, pieces, degree+1)."""
    samples = np.asarray(samples)
    if samples.ndim == 2:
        samples = samples[None]
    m = cheb_transform(samples.shape[-1] - 1)
    coef = samples @ m.T
    left = np.broadcast_to(np.asarray(left, dtype=np.complex128), (samples.shape[0],)).copy()
    return PiecewiseCheb(float(vlo), float(vhi), np.ascontiguousarray(coef), left)


def smoothed_dirichlet(t, coef, logn, sign: int, shift, weight: PiecewiseCheb | None = None,
                       workers: int | None = None, backend: str | None = None) -> np.ndarray:
    """sum_n coef[n] e^{sign i t log n} P_t(log n - shift_t) for every t.

    ``logn`` must be ascending.  With ``weight=None`` the plain polynomial is returned.
    """
    t = np.ascontiguousarray(np.atleast_1d(t), dtype=np.float64)
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    logn = np.ascontiguousarray(logn, dtype=np.float64)
    shift = np.ascontiguousarray(np.broadcast_to(shift, t.shape), dtype=np.float64)
    if workers is None:
        workers = worker_count()
    if weight is None:
        empty = np.zeros((1, 0, 1))
        args = (0.0, 1.0, empty, empty, np.zeros(1), np.zeros(1))
    else:
        c = weight.coef
        if c.shape[0] not in (1, t.shape[0]):
            raise ValueError("weight rows must be 1 or len(t)")
        args = (weight.vlo, weight.vhi,
                np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag),
                np.ascontiguousarray(weight.left.real), np.ascontiguousarray(weight.left.imag))
    re, im = _module(backend).dirichlet_cheb(t, coef, logn, int(sign), shift, *args, workers=int(workers))
    return np.asarray(re) + 1j * np.asarray(im)
