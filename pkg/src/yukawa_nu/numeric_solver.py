"""Numerical eigenvalues of the exact radial equation

    u'' = [l(l+1)/r^2 + (2m/hbar^2) (V(r) - E)] u,   V(r) = -v0 e^{-ar}/r,

used as an oracle for the closed-form spectrum. Two independent methods:
Numerov shooting with inward/outward matching, and diagonalisation of the
three-point finite-difference Hamiltonian.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, NoBoundStateError, ParameterDomainError, StateNotFoundError
from .yukawa_model import PotentialParams, QuantumNumbers, coulomb_energy, energy_nl

METHODS = ("numerov_shooting", "matrix_diagonalization")

_RESCALE = 1e150
_SERIES_TERMS = 10


@dataclass(frozen=True)
class SolverConfig:
    r_min: float = 1e-6
    r_max: float = None
    steps: int = 20000
    energy_tol: float = 1e-10
    max_bisections: int = 200
    method: str = "numerov_shooting"

    def __post_init__(self):
        if not self.r_min > 0:
            raise ParameterDomainError("r_min must be positive")
        if self.r_max is not None and not self.r_max > self.r_min:
            raise ParameterDomainError("r_max must exceed r_min")
        if self.steps < 100:
            raise ParameterDomainError("steps must be at least 100")
        if not self.energy_tol > 0:
            raise ParameterDomainError("energy_tol must be positive")
        if self.method not in METHODS:
            raise ParameterDomainError(f"unknown method {self.method!r}; choose from {METHODS}")


@dataclass(frozen=True)
class NumericLevel:
    qn: QuantumNumbers
    energy: float
    node_count: int
    grid: np.ndarray
    u: np.ndarray


@dataclass(frozen=True)
class MatrixResult:
    """Levels from diagonalisation; ``incomplete`` flags a short spectrum."""

    levels: tuple
    incomplete: bool

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    def __iter__(self):
        return iter(self.levels)


def count_nodes(u):
    """Strict sign changes in ``u``; exact zeros are skipped."""
    v = np.asarray(u, dtype=float)
    if v.size < 3:
        raise ParameterDomainError("need at least three samples")
    v = v[v != 0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def auto_r_max(p: PotentialParams, qn: QuantumNumbers):
    """Outer box edge resolving the exponential tail of level ``qn``."""
    big_n = qn.principal
    try:
        if p.a > 0:
            e_est = energy_nl(p, qn)
        else:
            e_est = coulomb_energy(p, big_n)
    except NoBoundStateError:
        e_est = coulomb_energy(p, big_n)
    kappa = math.sqrt(-2.0 * p.m * e_est) / p.hbar
    return max(30.0 / kappa, 3.0 * big_n**2 * p.hbar**2 / (p.m * p.v0))


def _grid(p, qn, cfg):
    r_max = cfg.r_max if cfg.r_max is not None else auto_r_max(p, qn)
    if not r_max > cfg.r_min:
        raise ParameterDomainError("r_max must exceed r_min")
    return np.linspace(cfg.r_min, r_max, cfg.steps + 1)


def _regular_series(p, l, energy, r):
    """Frobenius expansion of the regular solution, normalised to r^{l+1} at r -> 0."""
    s = 2.0 * p.m / p.hbar**2
    c = [1.0]
    for k in range(1, _SERIES_TERMS):
        acc = 0.0
        fact = 1.0
        for j in range(k):
            if j > 0:
                fact *= j
            acc += (-p.a) ** j / fact * c[k - 1 - j]
        acc *= -s * p.v0
        if k >= 2:
            acc -= s * energy * c[k - 2]
        c.append(acc / (k * (k + 2 * l + 1)))
    return r ** (l + 1) * sum(ck * r**k for k, ck in enumerate(c))


class _Numerov:
    """Numerov sweeps on a fixed uniform grid for one (p, l)."""

    def __init__(self, p, l, r):
        self.p, self.l, self.r = p, l, r
        self.h = r[1] - r[0]
        s = 2.0 * p.m / p.hbar**2
        # g(r) = base(r) - s E
        self.base = l * (l + 1) / r**2 - s * p.v0 * np.exp(-p.a * r) / r
        self.s = s

    def weights(self, energy):
        g = self.base - self.s * energy
        return 1.0 - self.h * self.h * g / 12.0, g

    def outward(self, energy, w, stop=None):
        n = len(self.r) - 1 if stop is None else stop
        u0, u1 = _regular_series(self.p, self.l, energy, self.r[:2])
        w = w.tolist()
        u = [0.0] * (n + 1)
        u[0], u[1] = float(u0), float(u1)
        y_prev, y = w[0] * u[0], w[1] * u[1]
        for i in range(1, n):
            y_next = 12.0 * u[i] - 10.0 * y - y_prev
            ui = y_next / w[i + 1]
            if abs(ui) > _RESCALE:
                scale = 1.0 / abs(ui)
                for j in range(i + 1):
                    u[j] *= scale
                y *= scale
                y_next *= scale
                ui *= scale
            u[i + 1] = ui
            y_prev, y = y, y_next
        return np.asarray(u)

    def inward(self, w, stop):
        """Inward sweep from u(r_max) = 0 down to index ``stop``."""
        last = len(self.r) - 1
        w = w.tolist()
        u = [0.0] * (last + 1)
        u[last], u[last - 1] = 0.0, 1e-30
        y_next, y = 0.0, w[last - 1] * u[last - 1]
        for i in range(last - 1, stop, -1):
            y_prev = 12.0 * u[i] - 10.0 * y - y_next
            ui = y_prev / w[i - 1]
            if abs(ui) > _RESCALE:
                scale = 1.0 / abs(ui)
                for j in range(i - 1, last + 1):
                    u[j] *= scale
                y *= scale
                y_prev *= scale
                ui *= scale
            u[i - 1] = ui
            y_next, y = y, y_prev
        return np.asarray(u)


def _matching_index(g):
    """Outermost classically allowed point (g < 0)."""
    allowed = np.nonzero(g < 0)[0]
    last = len(g) - 1
    if allowed.size == 0:
        return last // 2
    return int(min(max(allowed[-1], 2), last - 3))


def _defect(sweeper, energy):
    """Casoratian of the outward and inward Numerov solutions at the turning point.

    Both sweeps are only ever rescaled by positive factors, so its sign is a
    continuous function of the energy and vanishes exactly on discrete eigenvalues.
    """
    w, g = sweeper.weights(energy)
    m = _matching_index(g)
    u_out = sweeper.outward(energy, w, stop=m + 1)
    u_in = sweeper.inward(w, stop=m)
    y_out = w[m : m + 2] * u_out[m : m + 2]
    y_in = w[m : m + 2] * u_in[m : m + 2]
    return y_out[0] * y_in[1] - y_out[1] * y_in[0], m, u_out, u_in


def numerov_eigenvalue(p: PotentialParams, qn: QuantumNumbers, cfg: SolverConfig = None) -> NumericLevel:
    """Level (n, l) of the exact radial equation by Numerov shooting.

    The search first bisects on the node count of the outward solution until
    the window isolates the n-th eigenvalue, then bisects on the matching defect.
    """
    cfg = cfg or SolverConfig()
    r = _grid(p, qn, cfg)
    sweeper = _Numerov(p, qn.l, r)

    def nodes_at(energy):
        w, _ = sweeper.weights(energy)
        return count_nodes(sweeper.outward(energy, w)[1:])

    # the Yukawa well is shallower than the Coulomb one, so E_nl >= E_Coulomb
    lo = 1.05 * coulomb_energy(p, qn.principal)
    hi = 0.0
    n_lo, n_hi = nodes_at(lo), nodes_at(hi)
    if not (n_lo <= qn.n < n_hi):
        raise StateNotFoundError(
            f"state n={qn.n}, l={qn.l} not bracketed: {n_lo} nodes at E={lo:.6g}, "
            f"{n_hi} nodes at E={hi:.6g}"
        )
    iterations = 0
    while not (n_lo == qn.n and n_hi == qn.n + 1):
        if iterations >= cfg.max_bisections:
            raise ConvergenceError("node-count bracketing did not isolate the level")
        iterations += 1
        mid = 0.5 * (lo + hi)
        n_mid = nodes_at(mid)
        if n_mid <= qn.n:
            lo, n_lo = mid, n_mid
        else:
            hi, n_hi = mid, n_mid

    d_lo = _defect(sweeper, lo)[0]
    while True:
        mid = 0.5 * (lo + hi)
        if hi - lo <= cfg.energy_tol * abs(mid):
            break
        if iterations >= cfg.max_bisections:
            raise ConvergenceError(
                f"energy not converged after {iterations} bisections: window [{lo}, {hi}]"
            )
        iterations += 1
        d_mid = _defect(sweeper, mid)[0]
        if d_mid == 0:
            lo = hi = mid
            break
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid

    energy = 0.5 * (lo + hi)
    _, m, u_out, u_in = _defect(sweeper, energy)
    u = np.empty_like(r)
    u[: m + 1] = u_out[: m + 1]
    u[m + 1 :] = u_in[m + 1 :] * (u_out[m] / u_in[m])
    u /= math.sqrt(np.trapezoid(u * u, r))
    return NumericLevel(qn=qn, energy=energy, node_count=count_nodes(u), grid=r, u=u)


def _fd_levels(p, l, count, h, r_max):
    # interior nodes r_i = i h; u(0) = 0 is the regular boundary condition
    n_pts = int(round(r_max / h)) - 1
    r = h * np.arange(1, n_pts + 1)
    kin = p.hbar**2 / (2.0 * p.m * h * h)
    v = -p.v0 * np.exp(-p.a * r) / r + p.hbar**2 * l * (l + 1) / (2.0 * p.m * r * r)
    diag = 2.0 * kin + v
    off = np.full(n_pts - 1, -kin)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
    return r, vals, vecs


def matrix_eigenvalues(p: PotentialParams, l: int, count: int, cfg: SolverConfig = None) -> MatrixResult:
    """Lowest ``count`` bound levels of angular momentum ``l`` by diagonalisation.

    The symmetric tridiagonal finite-difference Hamiltonian is solved at
    ``cfg.steps`` and ``2 * cfg.steps`` intervals and the eigenvalues are
    Richardson-extrapolated to remove the leading h^2 error.
    """
    cfg = cfg or SolverConfig(method="matrix_diagonalization")
    if count < 1:
        raise ParameterDomainError("count must be positive")
    top = QuantumNumbers(count - 1, l)
    r_max = cfg.r_max if cfg.r_max is not None else auto_r_max(p, top)
    h = r_max / cfg.steps
    _, coarse, _ = _fd_levels(p, l, count, h, r_max)
    r, fine, vecs = _fd_levels(p, l, count, 0.5 * h, r_max)
    energies = (4.0 * fine - coarse) / 3.0

    grid = np.concatenate(([0.0], r, [r_max]))
    levels = []
    for k, energy in enumerate(energies):
        if not energy < 0:
            break
        u = np.concatenate(([0.0], vecs[:, k], [0.0]))
        u = u * np.sign(u[np.argmax(np.abs(u))])
        u /= math.sqrt(np.trapezoid(u * u, grid))
        levels.append(
            NumericLevel(qn=QuantumNumbers(k, l), energy=float(energy),
                         node_count=count_nodes(u), grid=grid, u=u)
        )
    incomplete = len(levels) < count
    if incomplete:
        warnings.warn(f"only {len(levels)} of {count} requested levels are bound", RuntimeWarning)
    return MatrixResult(levels=tuple(levels), incomplete=incomplete)


def solve_level(p: PotentialParams, qn: QuantumNumbers, cfg: SolverConfig = None) -> NumericLevel:
    """Dispatch on ``cfg.method``."""
    cfg = cfg or SolverConfig()
    if cfg.method == "numerov_shooting":
        return numerov_eigenvalue(p, qn, cfg)
    result = matrix_eigenvalues(p, qn.l, qn.n + 1, cfg)
    if result.incomplete:
        raise StateNotFoundError(
            f"state n={qn.n}, l={qn.l} not bound on the finite-difference grid"
        )
    return result[qn.n]
