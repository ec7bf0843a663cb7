"""Multiprecision classical and single-valued polylogarithms.

Every evaluation takes a :class:`PrecisionPolicy`, which owns a private
``mpmath.MPContext``; there is no global precision state.  ``Li_m`` uses the
principal branch with its cut along ``[1, oo)``; on the cut the value is the
limit from below, i.e. ``Im Li_2(x) = -pi log x`` for ``x > 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import mpmath

INTERNAL_GUARD = 8


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working precision ``prec`` (decimal digits) and tolerance ``10^-(prec - guard)``."""

    prec: int = 50
    guard: int = 10

    def __post_init__(self):
        if self.prec < 20:
            raise ValueError("precision must be at least 20 digits")
        if not 0 <= self.guard < self.prec:
            raise ValueError("guard digits must be below the precision")

    @cached_property
    def ctx(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.dps = self.prec + INTERNAL_GUARD
        return ctx

    @property
    def tolerance(self):
        return self.ctx.mpf(10) ** (-(self.prec - self.guard))

    def doubled(self) -> "PrecisionPolicy":
        return PrecisionPolicy(2 * self.prec, self.guard)

    def mpc(self, z):
        return self.ctx.mpc(z)

    def mpf(self, x):
        return self.ctx.mpf(x)

    def format(self, x, digits: int | None = None) -> str:
        return self.ctx.nstr(x, digits or self.prec)


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"(?P<re>[+-]?{_NUM})?(?:(?P<im>[+-]?(?:{_NUM})?)[ij])?")


def parse_complex(text, policy: PrecisionPolicy):
    """Parse ``"a+bi"``, ``"a"``, ``"bi"`` or ``{"re": ..., "im": ...}`` exactly as decimals."""
    ctx = policy.ctx
    if isinstance(text, dict):
        return ctx.mpc(ctx.mpf(str(text["re"])), ctx.mpf(str(text.get("im", "0"))))
    s = str(text).replace(" ", "")
    match = _COMPLEX_RE.fullmatch(s)
    if not s or match is None:
        raise ValueError(f"cannot parse complex number {text!r}")
    real, imag = match.group("re"), match.group("im")
    if imag is None:
        return ctx.mpc(ctx.mpf(real), 0)
    if imag == "" and real is not None:
        # "3i": the only number is the imaginary part
        real, imag = None, real
    if imag in ("", "+", "-"):
        imag += "1"
    if real is not None and imag[0] not in "+-":
        raise ValueError(f"cannot parse complex number {text!r}")
    return ctx.mpc(ctx.mpf(real or "0"), ctx.mpf(imag))


def complex_to_json(z, policy: PrecisionPolicy) -> dict:
    z = policy.ctx.mpc(z)
    return {"re": policy.format(z.real), "im": policy.format(z.imag)}


# --------------------------------------------------------------------------
# Li_m


def _li_series(m, z, ctx):
    s = ctx.mpc(0)
    zk = z
    n = 1
    eps = ctx.eps
    while True:
        t = zk / ctx.mpf(n) ** m
        s += t
        if abs(t) <= eps * abs(s):
            return s
        n += 1
        zk *= z


def _zeta_int(k, ctx):
    """zeta(k) for an integer k != 1."""
    if k <= 0:
        n = -k
        return (-1) ** n * ctx.bernoulli(n + 1) / (n + 1)
    return ctx.zeta(k)


def _li_log_expansion(m, z, ctx):
    # Li_m(z) = sum_{k != m-1} zeta(m-k) mu^k/k! + mu^(m-1)/(m-1)! (H_{m-1} - log(-mu)),
    # mu = log z, valid for |mu| < 2 pi
    mu = ctx.log(z)
    harmonic = sum(ctx.mpf(1) / j for j in range(1, m))
    total = mu ** (m - 1) / ctx.factorial(m - 1) * (harmonic - ctx.log(-mu))
    eps = ctx.eps
    small = 0
    power = ctx.mpc(1)
    fact = ctx.mpf(1)
    k = 0
    while True:
        if k != m - 1:
            j = m - k
            if j <= 0 and (-j) % 2 == 0 and j != 0:
                term = 0
            else:
                term = _zeta_int(j, ctx) * power / fact
                total += term
            if k > m + 1:
                small = small + 1 if abs(term) <= eps * abs(total) else 0
                if small >= 4:
                    return total
        k += 1
        power *= mu
        fact *= k


def _li_inversion(m, z, ctx):
    two_pi_i = 2 * ctx.pi * ctx.j
    lz = ctx.log(-z)
    rhs = -(two_pi_i ** m) / ctx.factorial(m) * ctx.bernpoly(m, ctx.mpf(1) / 2 + lz / two_pi_i)
    return rhs - (-1) ** m * _li_series(m, 1 / z, ctx)


def li(m: int, z, policy: PrecisionPolicy):
    """Principal branch of ``Li_m(z)``.

    ``|z| <= 1/2``: defining power series; ``|z| >= 2``: inversion through
    the Bernoulli polynomial ``B_m``; otherwise the expansion in powers of
    ``log z``.
    """
    if m < 1:
        raise ValueError("li needs m >= 1")
    ctx = policy.ctx
    z = ctx.mpc(z)
    if z == 0:
        return ctx.mpc(0)
    if z == 1:
        if m == 1:
            raise ZeroDivisionError("Li_1 has a pole at 1")
        return ctx.mpc(ctx.zeta(m))
    if m == 1:
        return -ctx.log(1 - z)
    a = abs(z)
    if a <= 0.5:
        return _li_series(m, z, ctx)
    if a >= 2:
        return _li_inversion(m, z, ctx)
    return _li_log_expansion(m, z, ctx)


# --------------------------------------------------------------------------
# single-valued versions


def bw_d1(x, policy: PrecisionPolicy):
    """``log|x|``."""
    ctx = policy.ctx
    x = ctx.mpc(x)
    if x == 0:
        raise ZeroDivisionError("D_1 is undefined at 0")
    return ctx.log(abs(x))


def bw_d2(x, policy: PrecisionPolicy):
    """Bloch-Wigner dilogarithm ``Im Li_2(x) + log|x| Arg(1 - x)``, extended by 0 at 0 and 1."""
    ctx = policy.ctx
    x = ctx.mpc(x)
    if x == 0 or x == 1:
        return ctx.mpf(0)
    return li(2, x, policy).imag + ctx.log(abs(x)) * ctx.arg(1 - x)


def bernoulli_weights(m: int, policy: PrecisionPolicy):
    """``2^k B_k / k!`` for ``k < m`` with ``B_1 = -1/2``."""
    ctx = policy.ctx
    return [ctx.mpf(2) ** k * ctx.bernoulli(k) / ctx.factorial(k) for k in range(m)]


def _dm_combination(m, log_abs, lis, policy):
    w = bernoulli_weights(m, policy)
    s = sum(w[k] * log_abs ** k * lis[m - k] for k in range(m))
    return s.real if m % 2 else s.imag


def bw_dm(m: int, x, policy: PrecisionPolicy):
    """Single-valued polylogarithm ``R_m(sum_k 2^k B_k/k! log^k|x| Li_{m-k}(x))``.

    ``R_m`` is the real part for odd ``m`` and the imaginary part for even
    ``m``.  At ``m = 2`` this is exactly :func:`bw_d2`; at ``m = 1`` it is
    ``-log|1 - x|``, i.e. ``-bw_d1(1 - x)``.
    """
    if m < 1:
        raise ValueError("bw_dm needs m >= 1")
    ctx = policy.ctx
    x = ctx.mpc(x)
    if x == 0:
        raise ZeroDivisionError("D_m is evaluated away from 0")
    if m == 2:
        return bw_d2(x, policy)
    if x == 1:
        if m == 1:
            raise ZeroDivisionError("D_1 of this normalisation has a pole at 1")
        return ctx.zeta(m) if m % 2 else ctx.mpf(0)
    lis = {k: li(k, x, policy) for k in range(1, m + 1)}
    return _dm_combination(m, ctx.log(abs(x)), lis, policy)


@dataclass
class MonodromyResult:
    m: int
    start: object
    end: object
    residual: object
    winding: int
    li_change: object


def monodromy_loop(m: int, policy: PrecisionPolicy, center=1, radius=0.5, steps: int = 720, start_angle=None):
    """Carry ``Li_1, ..., Li_m`` once around ``center`` and re-evaluate the ``D_m`` combination.

    Each ``Li_k`` is continued step by step: a first-order prediction from
    the derivative of the continued branch (``Li_k' = Li_{k-1}/z``) picks
    the integer multiple of the jump ``2 pi i log^(k-1) z / (k-1)!`` to add
    to the principal value.  Returns the combination at both ends.
    """
    ctx = policy.ctx
    center = ctx.mpc(center)
    theta0 = ctx.pi / 2 if start_angle is None else ctx.mpf(start_angle)
    two_pi_i = 2 * ctx.pi * ctx.j

    def point(step):
        return center + radius * ctx.expj(theta0 + 2 * ctx.pi * step / steps)

    z0 = point(0)
    current = {k: li(k, z0, policy) for k in range(1, m + 1)}
    start = _dm_combination(m, ctx.log(abs(z0)), current, policy)
    initial = dict(current)
    windings = {k: 0 for k in range(1, m + 1)}
    previous = z0
    for step in range(1, steps + 1):
        z = point(step) if step < steps else z0
        dz = z - previous
        lz = ctx.log(z)
        updated = {}
        for k in range(1, m + 1):
            slope = 1 / (1 - previous) if k == 1 else current[k - 1] / previous
            predicted = current[k] + slope * dz
            principal = li(k, z, policy)
            jump = two_pi_i * lz ** (k - 1) / ctx.factorial(k - 1)
            n = int(ctx.nint(((predicted - principal) / jump).real))
            updated[k] = principal + n * jump
            windings[k] = n
        current = updated
        previous = z
    end = _dm_combination(m, ctx.log(abs(z0)), current, policy)
    return MonodromyResult(m, start, end, abs(end - start), windings[1], abs(current[m] - initial[m]))


# --------------------------------------------------------------------------
# Dirichlet series at s = 2


class UnsupportedDiscriminant(ValueError):
    pass


def is_fundamental_discriminant(d: int) -> bool:
    def squarefree(n):
        n = abs(n)
        f = 2
        while f * f <= n:
            if n % (f * f) == 0:
                return False
            f += 1
        return True

    if d in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree(d)
    if d % 4 == 0:
        k = d // 4
        return k % 4 in (2, 3) and squarefree(k)
    return False


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol ``(d/n)`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    # Jacobi symbol (d/n) for odd n
    a = d % n if n > 1 else 0
    if n == 1:
        return result
    j = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                j = -j
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            j = -j
        a %= n
    return result * j if n == 1 else 0


def riemann_zeta(s: int, policy: PrecisionPolicy):
    return policy.ctx.zeta(s)


def dirichlet_l(s: int, d: int, policy: PrecisionPolicy):
    """``L(s, chi_d)`` for a fundamental discriminant ``d < 0`` via Hurwitz zeta values.

    ``L(s, chi) = |d|^-s sum_{a=1}^{|d|} chi(a) zeta(s, a/|d|)``.
    """
    if d >= 0 or not is_fundamental_discriminant(d):
        raise UnsupportedDiscriminant(f"{d} is not a negative fundamental discriminant")
    ctx = policy.ctx
    q = -d
    total = ctx.mpf(0)
    for a in range(1, q + 1):
        c = kronecker(d, a)
        if c:
            total += c * ctx.zeta(s, ctx.mpf(a) / q)
    return total / ctx.mpf(q) ** s
