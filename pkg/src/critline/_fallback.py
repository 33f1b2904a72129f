"""Pure numpy versions of the compiled kernels (same signatures, same semantics)."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

# Heights are processed in fixed-size blocks; the block size never depends on
# the worker count, so results are identical for any number of workers.
_BLOCK = 16


def _chebyshev_eval(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Clenshaw recurrence; c has shape (..., ncoef) broadcast against x."""
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    x2 = 2.0 * x
    for k in range(c.shape[-1] - 1, 0, -1):
        b1, b2 = x2 * b1 - b2 + c[..., k], b1
    return x * b1 - b2 + c[..., 0]


def _block(t, coef, logn, sign, shift, vlo, vhi, cre, cim, lre, lim, rows):
    npieces = cre.shape[1]
    out = np.empty(t.shape[0], dtype=np.complex128)
    width = (vhi - vlo) / npieces if npieces > 0 else 1.0
    for j in range(t.shape[0]):
        if npieces == 0:
            i_lo = i_hi = logn.shape[0]
        else:
            i_lo = int(np.searchsorted(logn, vlo + shift[j], side="left"))
            i_hi = int(np.searchsorted(logn, vhi + shift[j], side="left"))
        ph = sign * t[j] * logn[:i_hi]
        terms_re = coef[:i_hi] * np.cos(ph)
        terms_im = coef[:i_hi] * np.sin(ph)
        pr = float(np.sum(terms_re[:i_lo]))
        pi = float(np.sum(terms_im[:i_lo]))
        if npieces == 0:
            out[j] = complex(pr, pi)
            continue
        r = rows[j]
        acc = complex(pr, pi) * complex(lre[r], lim[r])
        if i_hi > i_lo:
            v = logn[i_lo:i_hi] - shift[j]
            p = np.clip(np.floor((v - vlo) / width).astype(np.int64), 0, npieces - 1)
            x = 2.0 * (v - vlo - p * width) / width - 1.0
            wr = _chebyshev_eval(cre[r][p], x)
            wi = _chebyshev_eval(cim[r][p], x)
            c = terms_re[i_lo:i_hi]
            s = terms_im[i_lo:i_hi]
            acc += complex(np.sum(c * wr - s * wi), np.sum(c * wi + s * wr))
        out[j] = acc
    return out


def dirichlet_cheb(t, coef, logn, sign, shift, vlo, vhi, cre, cim, lre, lim, workers=1):
    t = np.ascontiguousarray(t, dtype=np.float64)
    nt = t.shape[0]
    rows = np.arange(nt) if cre.shape[0] == nt else np.zeros(nt, dtype=np.int64)
    starts = list(range(0, nt, _BLOCK))

    def run(a):
        b = min(a + _BLOCK, nt)
        return _block(t[a:b], coef, logn, sign, shift[a:b], vlo, vhi, cre, cim, lre, lim, rows[a:b])

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(a) for a in starts]
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=np.complex128)
    return out.real.copy(), out.imag.copy()
