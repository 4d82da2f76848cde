"""Yukawa potential: exact and approximated forms, closed-form spectrum and
normalised radial wavefunctions.

Energies carry the units of ``v0 / length``; ``hbar`` is explicit so that both
the ``hbar = m = 1`` and ``hbar = 2m = 1`` conventions can be used directly.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import nu_param
from .errors import AccuracyError, NoBoundStateError, ParameterDomainError
from .special_fn import JacobiIndices, composite_integrate, jacobi_eval

SPECTROSCOPIC = "spdfghik"

# e^{-2 kappa r_max} below this bounds the neglected normalisation tail
TAIL_DENSITY = 1e-16
R_MAX_CAP = 1e4
# |R(r_max)| relative to the peak amplitude
TAIL_AMPLITUDE = 1e-13


@dataclass(frozen=True)
class PotentialParams:
    v0: float
    a: float
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.v0 > 0:
            raise ParameterDomainError(f"v0 must be positive, got {self.v0}")
        if not self.a >= 0:
            raise ParameterDomainError(f"a must be non-negative, got {self.a}")
        if not self.m > 0:
            raise ParameterDomainError(f"m must be positive, got {self.m}")
        if not self.hbar > 0:
            raise ParameterDomainError(f"hbar must be positive, got {self.hbar}")

    @classmethod
    def from_g(cls, v0, g, m=1.0, hbar=1.0):
        """Parameters with screening given as ``a = g * v0``."""
        return cls(v0=v0, a=g * v0, m=m, hbar=hbar)

    @property
    def coupling(self):
        """Dimensionless ratio m v0 / (hbar^2 a)."""
        self._require_screening()
        return self.m * self.v0 / (self.hbar**2 * self.a)

    def _require_screening(self):
        if not self.a > 0:
            raise ParameterDomainError("operation requires a screening parameter a > 0")


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ParameterDomainError(f"n must be a non-negative integer, got {self.n}")
        if int(self.l) != self.l or self.l < 0:
            raise ParameterDomainError(f"l must be a non-negative integer, got {self.l}")

    @property
    def principal(self):
        return self.n + self.l + 1

    @property
    def label(self):
        """Spectroscopic label such as ``2s`` or ``3d``."""
        letter = SPECTROSCOPIC[self.l] if self.l < len(SPECTROSCOPIC) else f"[l={self.l}]"
        return f"{self.principal}{letter}"

    @classmethod
    def from_label(cls, label):
        principal, letter = int(label[:-1]), label[-1].lower()
        l = SPECTROSCOPIC.index(letter)
        return cls(n=principal - l - 1, l=l)


@dataclass(frozen=True)
class BoundState:
    qn: QuantumNumbers
    energy: float
    epsilon: float
    kappa: float
    jacobi: JacobiIndices
    norm_constant: float
    r_max: float


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ParameterDomainError("r must be positive")
    return r


def _out(values, r):
    return float(values) if np.ndim(r) == 0 else values


def potential_exact(p: PotentialParams, r):
    """-v0 exp(-a r) / r."""
    rr = _check_r(r)
    return _out(-p.v0 * np.exp(-p.a * rr) / rr, r)


def potential_approx(p: PotentialParams, r):
    """Yukawa potential with 1/r replaced by its exponential approximation."""
    p._require_screening()
    rr = _check_r(r)
    x = 2.0 * p.a * rr
    return _out(-2.0 * p.a * p.v0 * np.exp(-x) / -np.expm1(-x), r)


def approx_centrifugal(a, r):
    """Greene-Aldrich form 4 a^2 e^{-2ar} / (1 - e^{-2ar})^2 of 1/r^2."""
    if not a > 0:
        raise ParameterDomainError("a must be positive")
    rr = _check_r(r)
    x = 2.0 * a * rr
    return _out(4.0 * a * a * np.exp(-x) / np.expm1(-x) ** 2, r)


def approximation_error(p: PotentialParams, r_grid):
    """Rows ``(r, exact, approx, relative error)`` for each grid point."""
    r = _check_r(np.asarray(r_grid, dtype=float).ravel())
    exact = potential_exact(p, r)
    approx = potential_approx(p, r)
    rel = np.abs(approx - exact) / np.abs(exact)
    return [(float(a), float(b), float(c), float(d)) for a, b, c, d in zip(r, exact, approx, rel)]


def nu_coefficients(p: PotentialParams, qn: QuantumNumbers, epsilon) -> nu_param.NUCoefficients:
    """Map the approximated radial equation in s = exp(-2ar) onto the NU normal form."""
    k = p.coupling
    t2 = epsilon / (4.0 * p.a * p.a)
    return nu_param.NUCoefficients(
        alpha1=1.0,
        alpha2=1.0,
        alpha3=1.0,
        xi1=k + t2,
        xi2=2.0 * t2 + k - qn.l * (qn.l + 1),
        xi3=t2,
    )


def critical_screening(p: PotentialParams, qn: QuantumNumbers):
    """Largest a for which the closed form admits the level."""
    return p.m * p.v0 / (p.hbar**2 * qn.principal**2)


def decay_parameter(p: PotentialParams, qn: QuantumNumbers):
    """sqrt(eps / 4a^2) of the level; raises if the level is not bound."""
    k = p.coupling
    big_n = qn.principal
    if not k > big_n * big_n:
        a_crit = critical_screening(p, qn)
        raise NoBoundStateError(
            f"no bound state predicted for n={qn.n}, l={qn.l}: "
            f"a = {p.a:.6g} is not below a_crit = {a_crit:.6g}",
            a_crit=a_crit,
        )
    return (k - big_n * big_n) / (2.0 * big_n)


def energy_nl(p: PotentialParams, qn: QuantumNumbers) -> float:
    """Closed-form energy of level (n, l)."""
    t = decay_parameter(p, qn)
    epsilon = 4.0 * p.a * p.a * t * t
    return -p.hbar**2 * epsilon / (2.0 * p.m)


def coulomb_energy(p: PotentialParams, n_prime: int) -> float:
    """Pure Coulomb level -m v0^2 / (2 hbar^2 n'^2); the screening is ignored."""
    if int(n_prime) != n_prime or n_prime < 1:
        raise ParameterDomainError(f"n' must be a positive integer, got {n_prime}")
    return -p.m * p.v0**2 / (2.0 * p.hbar**2 * n_prime**2)


def _shape(p, qn, kappa, idx):
    a, l, n = p.a, qn.l, qn.n

    def shape(r):
        r = np.asarray(r, dtype=float)
        s = np.exp(-2.0 * a * r)
        return np.exp(-kappa * r) * (-np.expm1(-2.0 * a * r)) ** (l + 1) * jacobi_eval(n, idx, 1.0 - 2.0 * s)

    return shape


def _normalisation_range(shape, kappa, idx, n):
    r_tail = min(-math.log(TAIL_DENSITY) / (2.0 * kappa), R_MAX_CAP)
    probe = np.linspace(0.0, r_tail, 4001)[1:]
    peak = float(np.max(np.abs(shape(probe))))
    # for r beyond the peak |shape| <= e^{-kappa r} * max|P_n| on [-1, 1]
    bound = max(abs(jacobi_eval(n, idx, 1.0)), abs(jacobi_eval(n, idx, -1.0)))
    r_amp = math.log(bound / (TAIL_AMPLITUDE * peak)) / kappa
    return min(max(r_tail, r_amp), R_MAX_CAP), peak


def radial_wavefunction(p: PotentialParams, qn: QuantumNumbers, quad_subintervals=16,
                        max_doublings=10, norm_tol=1e-10):
    """Normalised closed-form radial function.

    Returns ``(state, R)`` where ``R(r)`` evaluates the reduced radial function
    N e^{-kappa r} (1 - e^{-2ar})^{l+1} P_n^{(kappa/a, 2l+1)}(1 - 2 e^{-2ar}).
    The norm is integrated on [0, r_max] with a composite 64-point rule,
    doubling the subinterval count until it is stable to ``norm_tol``.
    """
    energy = energy_nl(p, qn)
    epsilon = -2.0 * p.m * energy / p.hbar**2
    kappa = math.sqrt(epsilon)
    idx = JacobiIndices(kappa / p.a, 2.0 * qn.l + 1.0)
    shape = _shape(p, qn, kappa, idx)
    r_max, _ = _normalisation_range(shape, kappa, idx, qn.n)

    def density(r):
        return shape(r) ** 2

    m = int(quad_subintervals)
    if m < 1:
        raise ParameterDomainError("quad_subintervals must be positive")
    norm = composite_integrate(density, 0.0, r_max, m)
    change = math.inf
    for _ in range(max_doublings):
        m *= 2
        refined = composite_integrate(density, 0.0, r_max, m)
        change = abs(refined - norm) / refined
        norm = refined
        if change <= norm_tol:
            break
    if change > 1e-8:
        raise AccuracyError(
            f"normalisation integral not converged: relative change {change:.3g} at {m} subintervals"
        )
    big_n = 1.0 / math.sqrt(norm)

    def radial(r):
        out = big_n * shape(r)
        return float(out) if np.ndim(out) == 0 else out

    state = BoundState(
        qn=qn,
        energy=energy,
        epsilon=epsilon,
        kappa=kappa,
        jacobi=idx,
        norm_constant=big_n,
        r_max=r_max,
    )
    return state, radial


def radial_overlap(f, g, r_max, subintervals=256):
    """Integral of f(r) g(r) over [0, r_max]."""
    return composite_integrate(lambda r: f(r) * g(r), 0.0, r_max, subintervals)

