"""Parametric Nikiforov-Uvarov engine.

Works for any second-order equation brought to the normal form

    psi'' + (a1 - a2 s) / (s (1 - a3 s)) psi'
          + (-x1 s^2 + x2 s - x3) / (s (1 - a3 s))^2 psi = 0

described by six coefficients. The engine derives the ten auxiliary constants,
evaluates the quantization condition and builds the polynomial eigenfunctions.
Root-finding in the physical parameter (the energy) is left to the caller.
"""

from dataclasses import dataclass, fields
import math

import numpy as np

from .errors import NoRealSolutionError, ParameterDomainError
from .special_fn import JacobiIndices, jacobi_eval, laguerre_eval

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class NUCoefficients:
    alpha1: float
    alpha2: float
    alpha3: float
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        for f in fields(self):
            if not math.isfinite(getattr(self, f.name)):
                raise ParameterDomainError(f"{f.name} must be finite")


@dataclass(frozen=True)
class NUDerived:
    alpha4: float
    alpha5: float
    alpha6: float
    alpha7: float
    alpha8: float
    alpha9: float
    alpha10: float
    alpha11: float
    alpha12: float
    alpha13: float


def derive_constants(c: NUCoefficients) -> NUDerived:
    """Compute alpha4 ... alpha13, taking non-negative square roots."""
    # exact for rational inputs up to the square roots
    a4 = (1 - c.alpha1) / 2
    a5 = (c.alpha2 - 2 * c.alpha3) / 2
    a6 = a5 * a5 + c.xi1
    a7 = 2 * a4 * a5 - c.xi2
    a8 = a4 * a4 + c.xi3
    a9 = c.alpha3 * a7 + c.alpha3 * c.alpha3 * a8 + a6
    if a8 < 0:
        raise NoRealSolutionError("alpha8", a8)
    if a9 < 0:
        raise NoRealSolutionError("alpha9", a9)
    r8, r9 = math.sqrt(a8), math.sqrt(a9)
    return NUDerived(
        alpha4=a4,
        alpha5=a5,
        alpha6=a6,
        alpha7=a7,
        alpha8=a8,
        alpha9=a9,
        alpha10=c.alpha1 + 2.0 * a4 + 2.0 * r8,
        alpha11=c.alpha2 - 2.0 * a5 + 2.0 * (r9 + c.alpha3 * r8),
        alpha12=a4 + r8,
        alpha13=a5 - (r9 + c.alpha3 * r8),
    )


def eigencondition_residual(c: NUCoefficients, d: NUDerived, n: int) -> float:
    """Left-hand side of the NU quantization condition; zero on an eigenstate."""
    r8, r9 = math.sqrt(d.alpha8), math.sqrt(d.alpha9)
    return (
        c.alpha2 * n
        - (2 * n + 1) * d.alpha5
        + (2 * n + 1) * (r9 + c.alpha3 * r8)
        + n * (n - 1) * c.alpha3
        + d.alpha7
        + 2.0 * c.alpha3 * d.alpha8
        + 2.0 * r8 * r9
    )


def satisfies_eigencondition(c, d, n, tol=RESIDUAL_TOL):
    return abs(eigencondition_residual(c, d, n)) <= tol


def jacobi_indices(c: NUCoefficients, d: NUDerived) -> JacobiIndices:
    """Jacobi parameters of the polynomial factor (requires alpha3 != 0)."""
    return JacobiIndices(d.alpha10 - 1.0, d.alpha11 / c.alpha3 - d.alpha10 - 1.0)


def build_eigenfunction(c: NUCoefficients, d: NUDerived, n: int):
    """Unnormalised eigenfunction on 0 < s < 1/alpha3.

    Use :func:`build_eigenfunction_limit` when ``alpha3 == 0``.
    """
    if c.alpha3 == 0:
        raise ParameterDomainError("alpha3 = 0: use build_eigenfunction_limit")
    a3 = c.alpha3
    idx = jacobi_indices(c, d)
    edge_power = -d.alpha12 - d.alpha13 / a3
    power = d.alpha12

    def psi(s):
        s = np.asarray(s, dtype=float)
        out = s**power * (1.0 - a3 * s) ** edge_power * jacobi_eval(n, idx, 1.0 - 2.0 * a3 * s)
        return float(out) if out.ndim == 0 else out

    return psi


def build_eigenfunction_limit(c: NUCoefficients, d: NUDerived, n: int):
    """Laguerre-form eigenfunction for the ``alpha3 == 0`` branch."""
    if c.alpha3 != 0:
        raise ParameterDomainError(
            f"alpha3 = {c.alpha3} != 0: use build_eigenfunction"
        )
    power, rate = d.alpha12, d.alpha13
    lag_index, lag_scale = d.alpha10 - 1.0, d.alpha11

    def psi(s):
        s = np.asarray(s, dtype=float)
        out = s**power * np.exp(rate * s) * laguerre_eval(n, lag_index, lag_scale * s)
        return float(out) if out.ndim == 0 else out

    return psi
