"""Orthogonal polynomials and Gauss-Legendre quadrature.

Polynomials are evaluated with their three-term recurrences; both functions
accept scalars or arrays for ``x``.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import ParameterDomainError

__all__ = [
    "JacobiIndices",
    "QuadratureRule",
    "jacobi_eval",
    "laguerre_eval",
    "gauss_legendre",
    "composite_integrate",
]


@dataclass(frozen=True)
class JacobiIndices:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ParameterDomainError(
                f"Jacobi indices must exceed -1, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f, a=-1.0, b=1.0):
        """Apply the rule to ``f`` on [a, b]."""
        half = 0.5 * (b - a)
        x = half * self.nodes + 0.5 * (a + b)
        return half * float(np.dot(self.weights, f(x)))


def _scalar_or_array(values, x):
    return float(values) if np.ndim(x) == 0 else values


def jacobi_eval(n, idx, x):
    """Jacobi polynomial P_n^(alpha, beta)(x)."""
    if n < 0:
        raise ParameterDomainError(f"degree must be non-negative, got {n}")
    if not isinstance(idx, JacobiIndices):
        idx = JacobiIndices(*idx)
    a, b = idx.alpha, idx.beta
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return _scalar_or_array(p_prev, x)
    p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return _scalar_or_array(p, x)


def laguerre_eval(n, alpha, x):
    """Associated Laguerre polynomial L_n^(alpha)(x)."""
    if n < 0:
        raise ParameterDomainError(f"degree must be non-negative, got {n}")
    if not alpha > -1.0:
        raise ParameterDomainError(f"Laguerre index must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return _scalar_or_array(l_prev, x)
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return _scalar_or_array(l_cur, x)


def _legendre_with_derivative(n, x):
    p_prev, p = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=32)
def _gauss_legendre_arrays(order):
    if order == 1:
        return np.array([0.0]), np.array([2.0])
    i = np.arange(1, order + 1)
    # Chebyshev-angle initial guess, roots in decreasing order
    x = np.cos(math.pi * (i - 0.25) / (order + 0.5))
    for _ in range(100):
        p, dp = _legendre_with_derivative(order, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-15:
            break
    _, dp = _legendre_with_derivative(order, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1], w[::-1]
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(order):
    """Gauss-Legendre rule on [-1, 1], exact up to degree 2*order - 1."""
    if int(order) != order or order < 1:
        raise ParameterDomainError(f"quadrature order must be a positive integer, got {order}")
    nodes, weights = _gauss_legendre_arrays(int(order))
    return QuadratureRule(nodes=nodes, weights=weights, order=int(order))


def composite_integrate(f, a, b, subintervals, order=64):
    """Integrate a vectorised ``f`` over [a, b] with a composite Gauss-Legendre rule."""
    if subintervals < 1:
        raise ParameterDomainError("need at least one subinterval")
    rule = gauss_legendre(order)
    edges = np.linspace(a, b, subintervals + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = mid[:, None] + half[:, None] * rule.nodes[None, :]
    vals = f(x.ravel()).reshape(x.shape)
    return float(np.sum(half * (vals @ rule.weights)))
