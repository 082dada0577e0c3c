"""Gauss-Legendre quadrature nodes and weights.

Nodes are the roots of the Legendre polynomial P_n, found by Newton
iteration on the three-term recurrence. Kept independent of any closed-form
integral this package evaluates, so it can serve as an oracle for them.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "gauss_legendre_01"]


def _legendre_and_derivative(n: int, x: np.ndarray):
    """Evaluate P_n(x) and P_n'(x) by upward recurrence."""
    pm = np.ones_like(x)
    if n == 0:
        return pm, np.zeros_like(x)
    pk = x.copy()
    for j in range(2, n + 1):
        pm, pk = pk, ((2 * j - 1) * x * pk - (j - 1) * pm) / j
    # valid off +-1 only; Gauss nodes are interior so this never divides by 0
    dpk = n * (x * pk - pm) / (x * x - 1.0)
    return pk, dpk


@lru_cache(maxsize=None)
def _nodes_and_weights(n: int):
    k = np.arange(n, dtype=float)
    # Tricomi's estimate for the roots, good enough for Newton to converge
    # quadratically from the first step
    x = np.cos(np.pi * (k + 0.75) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 5e-16:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int):
    """Return (nodes, weights) of the n-point Gauss-Legendre rule on [-1, 1].

    Nodes come back in ascending order; weights sum to 2. The rule integrates
    polynomials up to degree 2n - 1 exactly.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"gauss_legendre: need at least 1 node, got {n}")
    x, w = _nodes_and_weights(n)
    return x.copy(), w.copy()


def gauss_legendre_01(n: int):
    """Gauss-Legendre rule mapped to the unit interval [0, 1]."""
    x, w = gauss_legendre(n)
    return (x + 1.0) / 2.0, w / 2.0
