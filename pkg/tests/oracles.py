"""Independent reference computations used by the tests.

None of these call into ``grasspoly``.  They take different routes from
the package: Euler-Maclaurin sums with Bernoulli numbers generated here by
the binomial recurrence,
the Taylor series of the Clausen function, Ramanujan's series for
Catalan's constant, raw power series, and sympy for integer normal forms.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath
import numpy
import sympy
from sympy.matrices.normalforms import smith_normal_form


@lru_cache(maxsize=None)
def bernoulli_table(n):
    """B_0..B_n as Fractions with B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        out.append(-sum(comb(m + 1, k) * out[k] for k in range(m)) / (m + 1))
    return tuple(out)


def _mp(q, ctx):
    return ctx.mpf(q.numerator) / q.denominator


def hurwitz_em(s, a, dps):
    """zeta(s, a) for integer s >= 2 by Euler-Maclaurin summation."""
    ctx = mpmath.MPContext()
    ctx.dps = dps + 10
    a = ctx.mpf(a) if not isinstance(a, Fraction) else _mp(a, ctx)
    n_terms = dps + 20
    bern = bernoulli_table(2 * n_terms + 2)
    N = n_terms
    total = sum(1 / (k + a) ** s for k in range(N))
    x = N + a
    total += x ** (1 - s) / (s - 1) + x ** (-s) / 2
    rising = ctx.mpf(s)
    for j in range(1, n_terms + 1):
        # B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
        term = _mp(bern[2 * j], ctx) / ctx.factorial(2 * j) * rising * x ** (-s - 2 * j + 1)
        total += term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def zeta2(dps):
    return hurwitz_em(2, 1, dps)


def l2_chi_minus3(dps):
    """L(2, chi_{-3}) = (zeta(2,1/3) - zeta(2,2/3)) / 9."""
    return (hurwitz_em(2, Fraction(1, 3), dps) - hurwitz_em(2, Fraction(2, 3), dps)) / 9


def l2_chi_minus4(dps):
    """Catalan's constant as (zeta(2,1/4) - zeta(2,3/4)) / 16."""
    return (hurwitz_em(2, Fraction(1, 4), dps) - hurwitz_em(2, Fraction(3, 4), dps)) / 16


def catalan_ramanujan(dps):
    """G = pi/8 log(2 + sqrt3) + 3/8 sum (n!)^2 / ((2n)! (2n+1)^2)."""
    ctx = mpmath.MPContext()
    ctx.dps = dps + 10
    total = ctx.mpf(0)
    term = ctx.mpf(1)  # (n!)^2/(2n)!
    n = 0
    while True:
        t = term / (2 * n + 1) ** 2
        total += t
        if t < ctx.mpf(10) ** (-(dps + 8)):
            break
        n += 1
        term = term * n * n / ((2 * n - 1) * (2 * n))
    return ctx.pi / 8 * ctx.log(2 + ctx.sqrt(3)) + 3 * total / 8


def clausen2(theta, dps):
    """Cl_2(theta) = sum sin(n theta)/n^2 for 0 < theta < 2 pi via its Taylor series at 0."""
    ctx = mpmath.MPContext()
    ctx.dps = dps + 10
    theta = ctx.mpf(theta)
    if theta > ctx.pi:
        return -clausen2(2 * ctx.pi - theta, dps)
    bern = bernoulli_table(4 * dps + 40)
    total = theta - theta * ctx.log(theta)
    k = 1
    while True:
        term = abs(_mp(bern[2 * k], ctx)) / (2 * k * ctx.factorial(2 * k + 1)) * theta ** (2 * k + 1)
        total += term
        if abs(term) < ctx.mpf(10) ** (-(dps + 8)):
            return total
        k += 1


def polylog_series(m, z, dps):
    """sum z^n / n^m for |z| < 1, summed until the terms are negligible."""
    ctx = mpmath.MPContext()
    ctx.dps = dps + 10
    z = ctx.mpc(z)
    total = ctx.mpc(0)
    power = z
    n = 1
    eps = ctx.mpf(10) ** (-(dps + 8))
    while True:
        t = power / ctx.mpf(n) ** m
        total += t
        if abs(t) < eps:
            return total
        n += 1
        power *= z


def alternating_zeta2(dps):
    """-Li_2(-1) = sum (-1)^(n+1)/n^2, accelerated by the Cohen-Rodriguez Villegas-Zagier scheme."""
    ctx = mpmath.MPContext()
    ctx.dps = dps + 10
    n = int(1.31 * (dps + 10)) + 10
    d = (3 + ctx.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b, c, s = ctx.mpf(-1), -d, ctx.mpf(0)
    for k in range(n):
        c = b - c
        s += c / ctx.mpf(k + 1) ** 2
        b = b * (k + n) * (k - n) / ((k + ctx.mpf(1) / 2) * (k + 1))
    return s / d


def integer_invariants(rows):
    """Nonzero invariant factors of an integer matrix via sympy's Smith normal form."""
    if not rows or not rows[0]:
        return []
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    return sorted(d for d in diag if d)


def rational_rank(rows):
    """Rank over Q of a small-entry integer matrix (floating SVD is exact enough here)."""
    if not rows or not rows[0]:
        return 0
    return int(numpy.linalg.matrix_rank(numpy.array(rows, dtype=float)))
