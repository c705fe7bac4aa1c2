# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled rate kernels: the same four sum-rate bound terms as the numpy
fallback (see _kernels_py for the formulas), in C for tight grid loops.

All batch loops run with the GIL released so callers can spread chunks over
a thread pool.
"""

from libc.math cimport log2

import numpy as np


cdef inline double _cap(double x) noexcept nogil:
    return 0.5 * log2(1.0 + x)


cdef inline void _t_terms(double h1s, double h2s, double p1, double p2,
                          double a1, double g1, double a2, double g2,
                          double* t) noexcept nogil:
    cdef double i1 = 1.0 + h2s * a2 * p2 + g1 * p1
    cdef double i2 = 1.0 + h1s * a1 * p1 + g2 * p2
    cdef double ab1 = 1.0 - a1
    cdef double ab2 = 1.0 - a2
    cdef double gb1 = 1.0 - g1
    cdef double gb2 = 1.0 - g2
    t[0] = _cap((a1 * p1 + h2s * g2 * p2) / i1) + _cap((gb2 * p2 + h1s * ab1 * p1) / i2)
    t[1] = _cap((gb1 * p1 + h2s * ab2 * p2) / i1) + _cap((a2 * p2 + h1s * g1 * p1) / i2)
    t[2] = _cap((a1 * p1 + h2s * ab2 * p2) / i1) + _cap((a2 * p2 + h1s * ab1 * p1) / i2)
    t[3] = _cap((gb1 * p1 + h2s * g2 * p2) / i1) + _cap((gb2 * p2 + h1s * g1 * p1) / i2)


def t_bounds_scalar(double h1, double h2, double p1, double p2,
                    double a1, double g1, double a2, double g2):
    """The four sum-rate bound terms for a single split."""
    cdef double t[4]
    _t_terms(h1 * h1, h2 * h2, p1, p2, a1, g1, a2, g2, t)
    return (t[0], t[1], t[2], t[3])


def min_t_scalar(double h1, double h2, double p1, double p2,
                 double a1, double g1, double a2, double g2):
    cdef double t[4]
    cdef double m
    _t_terms(h1 * h1, h2 * h2, p1, p2, a1, g1, a2, g2, t)
    m = t[0]
    if t[1] < m:
        m = t[1]
    if t[2] < m:
        m = t[2]
    if t[3] < m:
        m = t[3]
    return m


def t_bounds_batch(double h1, double h2, double p1, double p2,
                   a1, g1, a2, g2):
    """Vectorized four bound terms; returns an (n, 4) float64 array."""
    cdef double[::1] va1 = np.ascontiguousarray(a1, dtype=np.float64)
    cdef double[::1] vg1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] va2 = np.ascontiguousarray(a2, dtype=np.float64)
    cdef double[::1] vg2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef Py_ssize_t n = va1.shape[0]
    out = np.empty((n, 4), dtype=np.float64)
    cdef double[:, ::1] vout = out
    cdef double h1s = h1 * h1
    cdef double h2s = h2 * h2
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _t_terms(h1s, h2s, p1, p2, va1[i], vg1[i], va2[i], vg2[i], &vout[i, 0])
    return out


def t_bounds_batch_params(h1, h2, p1, p2, a1, g1, a2, g2):
    """Four bound terms with channel parameters varying across the batch.

    All eight arguments are equal-length arrays; returns (n, 4) float64.
    """
    cdef double[::1] vh1 = np.ascontiguousarray(h1, dtype=np.float64)
    cdef double[::1] vh2 = np.ascontiguousarray(h2, dtype=np.float64)
    cdef double[::1] vp1 = np.ascontiguousarray(p1, dtype=np.float64)
    cdef double[::1] vp2 = np.ascontiguousarray(p2, dtype=np.float64)
    cdef double[::1] va1 = np.ascontiguousarray(a1, dtype=np.float64)
    cdef double[::1] vg1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] va2 = np.ascontiguousarray(a2, dtype=np.float64)
    cdef double[::1] vg2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef Py_ssize_t n = va1.shape[0]
    out = np.empty((n, 4), dtype=np.float64)
    cdef double[:, ::1] vout = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _t_terms(vh1[i] * vh1[i], vh2[i] * vh2[i], vp1[i], vp2[i],
                     va1[i], vg1[i], va2[i], vg2[i], &vout[i, 0])
    return out


def min_t_batch(double h1, double h2, double p1, double p2,
                a1, g1, a2, g2):
    """Vectorized min of the four bound terms; returns an (n,) float64 array."""
    cdef double[::1] va1 = np.ascontiguousarray(a1, dtype=np.float64)
    cdef double[::1] vg1 = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[::1] va2 = np.ascontiguousarray(a2, dtype=np.float64)
    cdef double[::1] vg2 = np.ascontiguousarray(g2, dtype=np.float64)
    cdef Py_ssize_t n = va1.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] vout = out
    cdef double h1s = h1 * h1
    cdef double h2s = h2 * h2
    cdef double t[4]
    cdef double m
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _t_terms(h1s, h2s, p1, p2, va1[i], vg1[i], va2[i], vg2[i], t)
            m = t[0]
            if t[1] < m:
                m = t[1]
            if t[2] < m:
                m = t[2]
            if t[3] < m:
                m = t[3]
            vout[i] = m
    return out
