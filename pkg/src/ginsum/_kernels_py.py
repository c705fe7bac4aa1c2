"""Pure-Python / numpy implementations of the hot rate kernels.

This is the fallback backend selected by :mod:`ginsum.kernels` when the
compiled extension is unavailable.  Both backends evaluate the same four
sum-rate bound terms

    i1 = 1 + h2^2*a2*p2 + g1*p1
    i2 = 1 + h1^2*a1*p1 + g2*p2
    t1 = C((a1*p1 + h2^2*g2*p2)/i1) + C(((1-g2)*p2 + h1^2*(1-a1)*p1)/i2)
    t2 = C(((1-g1)*p1 + h2^2*(1-a2)*p2)/i1) + C((a2*p2 + h1^2*g1*p1)/i2)
    t3 = C((a1*p1 + h2^2*(1-a2)*p2)/i1) + C((a2*p2 + h1^2*(1-a1)*p1)/i2)
    t4 = C(((1-g1)*p1 + h2^2*g2*p2)/i1) + C(((1-g2)*p2 + h1^2*g1*p1)/i2)

with C(x) = 0.5*log2(1+x).  Only the power fractions of the direct-private
and cross-private messages (a_i, g_i) enter; the common-message fraction is
implicit through b_i = 1 - a_i - g_i.
"""

from __future__ import annotations

import math

import numpy as np


def t_bounds_scalar(
    h1: float,
    h2: float,
    p1: float,
    p2: float,
    a1: float,
    g1: float,
    a2: float,
    g2: float,
) -> tuple[float, float, float, float]:
    """The four sum-rate bound terms for a single split."""
    h1s = h1 * h1
    h2s = h2 * h2
    i1 = 1.0 + h2s * a2 * p2 + g1 * p1
    i2 = 1.0 + h1s * a1 * p1 + g2 * p2
    ab1 = 1.0 - a1
    ab2 = 1.0 - a2
    gb1 = 1.0 - g1
    gb2 = 1.0 - g2
    t1 = 0.5 * math.log2(1.0 + (a1 * p1 + h2s * g2 * p2) / i1) + 0.5 * math.log2(
        1.0 + (gb2 * p2 + h1s * ab1 * p1) / i2
    )
    t2 = 0.5 * math.log2(1.0 + (gb1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * math.log2(
        1.0 + (a2 * p2 + h1s * g1 * p1) / i2
    )
    t3 = 0.5 * math.log2(1.0 + (a1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * math.log2(
        1.0 + (a2 * p2 + h1s * ab1 * p1) / i2
    )
    t4 = 0.5 * math.log2(1.0 + (gb1 * p1 + h2s * g2 * p2) / i1) + 0.5 * math.log2(
        1.0 + (gb2 * p2 + h1s * g1 * p1) / i2
    )
    return (t1, t2, t3, t4)


def min_t_scalar(
    h1: float,
    h2: float,
    p1: float,
    p2: float,
    a1: float,
    g1: float,
    a2: float,
    g2: float,
) -> float:
    t1, t2, t3, t4 = t_bounds_scalar(h1, h2, p1, p2, a1, g1, a2, g2)
    return min(t1, t2, t3, t4)


def t_bounds_batch(
    h1: float,
    h2: float,
    p1: float,
    p2: float,
    a1: np.ndarray,
    g1: np.ndarray,
    a2: np.ndarray,
    g2: np.ndarray,
) -> np.ndarray:
    """Vectorized four bound terms; returns an (n, 4) float64 array."""
    a1 = np.asarray(a1, dtype=np.float64)
    g1 = np.asarray(g1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    g2 = np.asarray(g2, dtype=np.float64)
    h1s = h1 * h1
    h2s = h2 * h2
    i1 = 1.0 + h2s * a2 * p2 + g1 * p1
    i2 = 1.0 + h1s * a1 * p1 + g2 * p2
    ab1 = 1.0 - a1
    ab2 = 1.0 - a2
    gb1 = 1.0 - g1
    gb2 = 1.0 - g2
    out = np.empty((a1.shape[0], 4), dtype=np.float64)
    out[:, 0] = 0.5 * np.log2(1.0 + (a1 * p1 + h2s * g2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (gb2 * p2 + h1s * ab1 * p1) / i2
    )
    out[:, 1] = 0.5 * np.log2(1.0 + (gb1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (a2 * p2 + h1s * g1 * p1) / i2
    )
    out[:, 2] = 0.5 * np.log2(1.0 + (a1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (a2 * p2 + h1s * ab1 * p1) / i2
    )
    out[:, 3] = 0.5 * np.log2(1.0 + (gb1 * p1 + h2s * g2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (gb2 * p2 + h1s * g1 * p1) / i2
    )
    return out


def min_t_batch(
    h1: float,
    h2: float,
    p1: float,
    p2: float,
    a1: np.ndarray,
    g1: np.ndarray,
    a2: np.ndarray,
    g2: np.ndarray,
) -> np.ndarray:
    """Vectorized min of the four bound terms; returns an (n,) float64 array."""
    return t_bounds_batch(h1, h2, p1, p2, a1, g1, a2, g2).min(axis=1)


def t_bounds_batch_params(h1, h2, p1, p2, a1, g1, a2, g2) -> np.ndarray:
    """Four bound terms with channel parameters varying across the batch.

    All eight arguments are equal-length arrays; returns (n, 4) float64.
    """
    h1 = np.asarray(h1, dtype=np.float64)
    h2 = np.asarray(h2, dtype=np.float64)
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    a1 = np.asarray(a1, dtype=np.float64)
    g1 = np.asarray(g1, dtype=np.float64)
    a2 = np.asarray(a2, dtype=np.float64)
    g2 = np.asarray(g2, dtype=np.float64)
    h1s = h1 * h1
    h2s = h2 * h2
    i1 = 1.0 + h2s * a2 * p2 + g1 * p1
    i2 = 1.0 + h1s * a1 * p1 + g2 * p2
    ab1 = 1.0 - a1
    ab2 = 1.0 - a2
    gb1 = 1.0 - g1
    gb2 = 1.0 - g2
    out = np.empty((a1.shape[0], 4), dtype=np.float64)
    out[:, 0] = 0.5 * np.log2(1.0 + (a1 * p1 + h2s * g2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (gb2 * p2 + h1s * ab1 * p1) / i2
    )
    out[:, 1] = 0.5 * np.log2(1.0 + (gb1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (a2 * p2 + h1s * g1 * p1) / i2
    )
    out[:, 2] = 0.5 * np.log2(1.0 + (a1 * p1 + h2s * ab2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (a2 * p2 + h1s * ab1 * p1) / i2
    )
    out[:, 3] = 0.5 * np.log2(1.0 + (gb1 * p1 + h2s * g2 * p2) / i1) + 0.5 * np.log2(
        1.0 + (gb2 * p2 + h1s * g1 * p1) / i2
    )
    return out
