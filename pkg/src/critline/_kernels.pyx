# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: smoothed Dirichlet polynomials over a grid of heights.

The sums have the shape

    S(t) = sum_n coef[n] * exp(sign * i * t * logn[n]) * P_t(logn[n] - shift[t])

where P_t is a piecewise Chebyshev series on [vlo, vhi], equal to a constant
``left`` below vlo and to zero above vhi.  Each height is reduced sequentially
over n, so the result does not depend on the number of threads.
"""
import numpy as np

from cython.parallel import prange
from libc.math cimport cos, sin, floor


cdef inline Py_ssize_t _first_at_least(const double[::1] x, double v) noexcept nogil:
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = x.shape[0]
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) // 2
        if x[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def dirichlet_cheb(const double[::1] t, const double[::1] coef, const double[::1] logn,
                   int sign, const double[::1] shift, double vlo, double vhi,
                   const double[:, :, ::1] cre, const double[:, :, ::1] cim,
                   const double[::1] lre, const double[::1] lim, int workers=1):
    cdef Py_ssize_t nt = t.shape[0]
    cdef Py_ssize_t nn = logn.shape[0]
    cdef Py_ssize_t nrow = cre.shape[0]
    cdef Py_ssize_t npieces = cre.shape[1]
    cdef Py_ssize_t ncoef = cre.shape[2]
    cdef double width = (vhi - vlo) / npieces if npieces > 0 else 1.0
    out_re = np.zeros(nt, dtype=np.float64)
    out_im = np.zeros(nt, dtype=np.float64)
    cdef double[::1] ore = out_re
    cdef double[::1] oim = out_im
    cdef Py_ssize_t i, n, row, k, p, i_lo, i_hi
    cdef double ph, c, s, v, x, x2, b1r, b2r, b1i, b2i, tmp, wr, wi, ar, ai, pr, pi
    if workers < 1:
        workers = 1
    for i in prange(nt, nogil=True, num_threads=workers, schedule="static"):
        row = i if nrow == nt else 0
        if npieces == 0:
            i_lo = nn
            i_hi = nn
        else:
            i_lo = _first_at_least(logn, vlo + shift[i])
            i_hi = _first_at_least(logn, vhi + shift[i])
        # plateau: weight is the constant left value
        pr = 0.0
        pi = 0.0
        for n in range(i_lo):
            ph = sign * t[i] * logn[n]
            pr = pr + coef[n] * cos(ph)
            pi = pi + coef[n] * sin(ph)
        if npieces == 0:
            ar = pr
            ai = pi
        else:
            ar = pr * lre[row] - pi * lim[row]
            ai = pr * lim[row] + pi * lre[row]
        # transition: Clenshaw recurrence on the local Chebyshev piece
        for n in range(i_lo, i_hi):
            v = logn[n] - shift[i]
            p = <Py_ssize_t> floor((v - vlo) / width)
            if p >= npieces:
                p = npieces - 1
            if p < 0:
                p = 0
            x = 2.0 * (v - vlo - p * width) / width - 1.0
            x2 = 2.0 * x
            b1r = 0.0
            b2r = 0.0
            b1i = 0.0
            b2i = 0.0
            for k in range(ncoef - 1, 0, -1):
                tmp = x2 * b1r - b2r + cre[row, p, k]
                b2r = b1r
                b1r = tmp
                tmp = x2 * b1i - b2i + cim[row, p, k]
                b2i = b1i
                b1i = tmp
            wr = x * b1r - b2r + cre[row, p, 0]
            wi = x * b1i - b2i + cim[row, p, 0]
            ph = sign * t[i] * logn[n]
            c = coef[n] * cos(ph)
            s = coef[n] * sin(ph)
            ar = ar + c * wr - s * wi
            ai = ai + c * wi + s * wr
        ore[i] = ar
        oim[i] = ai
    return out_re, out_im
