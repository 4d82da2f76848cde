"""Brute-force reference evaluations, independent of the library code paths."""

from fractions import Fraction
import math


def gen_binom(z, k):
    out = 1.0
    for i in range(k):
        out *= z - i
    return out / math.factorial(k)


def jacobi_sum(n, alpha, beta, x):
    """Explicit finite hypergeometric sum for P_n^(alpha, beta)(x)."""
    return sum(
        gen_binom(n + alpha, n - s) * gen_binom(n + beta, s)
        * ((x - 1.0) / 2.0) ** s * ((x + 1.0) / 2.0) ** (n - s)
        for s in range(n + 1)
    )


def laguerre_sum(n, alpha, x):
    """Explicit finite sum for L_n^(alpha)(x)."""
    return sum(
        (-1) ** i * gen_binom(n + alpha, n - i) * x**i / math.factorial(i)
        for i in range(n + 1)
    )


def jacobi_sum_exact(n, alpha, beta, x, absolute=False):
    """Exact rational evaluation of the explicit sum at the given float inputs.

    With ``absolute=True`` returns the sum of absolute term values instead,
    the natural scale for judging cancellation.
    """
    alpha, beta, x = Fraction(alpha), Fraction(beta), Fraction(x)

    def binom(z, k):
        out = Fraction(1)
        for i in range(k):
            out *= z - i
        return out / math.factorial(k)

    terms = [
        binom(n + alpha, n - s) * binom(n + beta, s) * ((x - 1) / 2) ** s * ((x + 1) / 2) ** (n - s)
        for s in range(n + 1)
    ]
    return sum(abs(t) for t in terms) if absolute else sum(terms)


def simpson(f, a, b, n=20000):
    """Composite Simpson rule, for cross-checks of the Gauss-Legendre path."""
    if n % 2:
        n += 1
    h = (b - a) / n
    total = f(a) + f(b)
    for i in range(1, n):
        total += (4 if i % 2 else 2) * f(a + i * h)
    return total * h / 3.0
