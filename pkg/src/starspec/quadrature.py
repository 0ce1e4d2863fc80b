"""Fourth-order quadrature on uniform grids.

Everything here is expressed through a cumulative integration matrix L with
L[i, :] @ f approximating the running integral from the left endpoint to
node i.  Each interval [x_k, x_{k+1}] is integrated by the cubic through
the four nearest nodes, which keeps the rule linear in the samples (so the
triangular Volterra transforms built on top of it can be inverted exactly
at the discrete level) while retaining O(h^4) accuracy.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Cubic interpolatory weights for one interval, in units of h.
# First interval uses nodes 0..3, interior interval k uses k-1..k+2,
# last interval mirrors the first.
_W_FIRST = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0
_W_INTERIOR = np.array([-1.0, 13.0, 13.0, -1.0]) / 24.0
_W_LAST = _W_FIRST[::-1]


@lru_cache(maxsize=64)
def _interval_matrix(n: int) -> np.ndarray:
    """(n-1, n) matrix of per-interval integration weights (unit spacing)."""
    if n < 4:
        raise ValueError("need at least 4 grid points for the cubic rule")
    A = np.zeros((n - 1, n))
    A[0, 0:4] = _W_FIRST
    A[n - 2, n - 4 : n] = _W_LAST
    for k in range(1, n - 2):
        A[k, k - 1 : k + 3] = _W_INTERIOR
    return A


@lru_cache(maxsize=64)
def cumulative_matrix(n: int) -> np.ndarray:
    """(n, n) matrix L with (L @ f)[i] ~ integral of f from x_0 to x_i, h=1."""
    A = _interval_matrix(n)
    L = np.zeros((n, n))
    np.cumsum(A, axis=0, out=L[1:])
    return L


def cumulative_integral(values: np.ndarray, h: float) -> np.ndarray:
    """Running integral from the left endpoint, fourth order."""
    values = np.asarray(values, dtype=float)
    return h * (cumulative_matrix(values.size) @ values)


def definite_weights(n: int, h: float) -> np.ndarray:
    """Weights w with w @ f ~ integral of f over the whole grid."""
    return h * cumulative_matrix(n)[-1]


def right_cumulative_matrix(n: int, h: float) -> np.ndarray:
    """(n, n) matrix C with (C @ f)[i] ~ integral of f from x_i to x_{n-1}."""
    L = h * cumulative_matrix(n)
    return L[-1][None, :] - L
