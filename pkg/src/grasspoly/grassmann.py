"""Numeric Grassmann functions, their functional equation and group cocycles.

A Grassmann ``m``-function takes ``2m`` vectors of ``C^m`` in general
position and returns a real number.  The harnesses here sample random
configurations (entries uniform on the disk of radius 2), evaluate the
alternating sum over the ``2m + 1`` faces of a ``(2m+1)``-vector
configuration, and report the worst residual.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath

from .configurations import Permutation, cross_ratio
from .polylog import PrecisionPolicy, UnsupportedDiscriminant, bw_d1, bw_d2, dirichlet_l, riemann_zeta

SAMPLING_MARGIN = 1e-5
DISK_RADIUS = 2


class DegenerateConfigurationError(ValueError):
    pass


class ResamplingExhausted(RuntimeError):
    pass


# --------------------------------------------------------------------------
# small complex linear algebra


def det(rows, ctx):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return ctx.det(ctx.matrix([list(r) for r in rows]))


def mat_vec(g, v):
    return tuple(sum((g[i][j] * v[j] for j in range(len(v))), 0) for i in range(len(g)))


def mat_mul(a, b):
    n, k = len(b), len(b[0])
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(n)), 0) for j in range(k)) for i in range(len(a)))


def genericity_margin(vectors: Sequence, m: int, ctx) -> object:
    """Smallest ``|minor|`` over all ``m``-subsets (all of them when fewer than ``m``)."""
    vectors = tuple(vectors)
    if len(vectors) < m:
        raise ValueError("margin needs at least m vectors")
    return min(abs(det([vectors[i] for i in idx], ctx)) for idx in itertools.combinations(range(len(vectors)), m))


@dataclass(frozen=True)
class NumericConfiguration:
    m: int
    vectors: tuple
    margin: object

    @classmethod
    def of(cls, vectors, policy: PrecisionPolicy) -> "NumericConfiguration":
        ctx = policy.ctx
        vectors = tuple(tuple(ctx.mpc(x) for x in v) for v in vectors)
        m = len(vectors[0])
        return cls(m, vectors, genericity_margin(vectors, m, ctx))

    def __len__(self):
        return len(self.vectors)

    def face(self, j: int) -> tuple:
        return self.vectors[:j] + self.vectors[j + 1:]


def random_complex(rng: random.Random, ctx, radius=DISK_RADIUS):
    r = radius * math.sqrt(rng.random())
    theta = 2 * math.pi * rng.random()
    return ctx.mpc(r * math.cos(theta), r * math.sin(theta))


def random_matrix(rng: random.Random, m: int, ctx):
    return tuple(tuple(random_complex(rng, ctx) for _ in range(m)) for _ in range(m))


def sample_configuration(m: int, length: int, rng: random.Random, policy: PrecisionPolicy,
                         threshold=SAMPLING_MARGIN, budget: int = 1000) -> tuple[NumericConfiguration, int]:
    """Random configuration with margin above ``threshold``; returns it with the rejection count."""
    ctx = policy.ctx
    for rejected in range(budget):
        vectors = tuple(tuple(random_complex(rng, ctx) for _ in range(m)) for _ in range(length))
        c = NumericConfiguration.of(vectors, policy)
        if c.margin > threshold:
            return c, rejected
    raise ResamplingExhausted(f"no generic configuration after {budget} samples")


# --------------------------------------------------------------------------
# Grassmann functions


@dataclass(frozen=True)
class GrassmannFunction:
    """A real function on ``2m``-vector configurations in ``C^m``."""

    m: int
    name: str
    evaluator: Callable
    domain: str = "full"

    def __call__(self, vectors: Sequence, policy: PrecisionPolicy):
        vectors = tuple(vectors)
        if len(vectors) != 2 * self.m or any(len(v) != self.m for v in vectors):
            raise ValueError(f"{self.name} takes {2 * self.m} vectors of length {self.m}")
        return self.evaluator(vectors, policy)


def _check_margin(vectors, m, policy):
    if genericity_margin(vectors, m, policy.ctx) <= 10 * policy.tolerance:
        raise DegenerateConfigurationError("configuration is numerically degenerate")


def _d1_evaluator(vectors, policy):
    _check_margin(vectors, 1, policy)
    return bw_d1(vectors[1][0] / vectors[0][0], policy)


def grassmann_d1() -> GrassmannFunction:
    """``(v0, v1) -> log|v1/v0|`` on pairs of nonzero numbers."""
    return GrassmannFunction(1, "D1", _d1_evaluator)


_SIGNED_S4 = tuple((p, p.sign) for p in Permutation.all(4))


def _d2_raw(vectors, policy):
    _check_margin(vectors, 2, policy)
    return bw_d2(cross_ratio(vectors), policy)


def _d2_alternated(vectors, policy):
    _check_margin(vectors, 2, policy)
    ctx = policy.ctx
    cache = {}
    total = ctx.mpf(0)
    for sigma, sign in _SIGNED_S4:
        r = cross_ratio(sigma.permute(vectors))
        key = (r.real, r.imag)
        if key not in cache:
            cache[key] = bw_d2(r, policy)
        total += sign * cache[key]
    return total / 24


def grassmann_d2(symmetrize: bool = True) -> GrassmannFunction:
    """Bloch-Wigner dilogarithm of the cross-ratio of four vectors in ``C^2``.

    By default the pullback is averaged with signs over all 24 reorderings,
    which makes ``f(sigma c) = sgn(sigma) f(c)`` hold by construction.
    """
    if symmetrize:
        return GrassmannFunction(2, "D2", _d2_alternated)
    return GrassmannFunction(2, "D2-raw", _d2_raw)


def constant_function(m: int, value=1) -> GrassmannFunction:
    """A function that is not a Grassmann logarithm; useful to calibrate harnesses."""
    return GrassmannFunction(m, f"const({value})", lambda vectors, policy: policy.ctx.mpf(value))


# --------------------------------------------------------------------------
# reports


def _decimal(x) -> str:
    return mpmath.nstr(x, 10)


@dataclass
class VerificationReport:
    check: str
    trials: int
    rejected: int
    max_residual: object
    tolerance: object
    passed: bool
    seed: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "trials": self.trials,
            "rejected": self.rejected,
            "max_residual": _decimal(self.max_residual),
            "tolerance": _decimal(self.tolerance),
            "pass": self.passed,
            "seed": self.seed,
        }
        out.update(self.extra)
        return out


def _report(check, trials, rejected, residuals, tolerance, seed, ctx, **extra):
    worst = max(residuals) if residuals else ctx.mpf(0)
    return VerificationReport(check, trials, rejected, worst, tolerance, bool(worst < tolerance), seed, extra)


def alternating_face_sum(f: GrassmannFunction, vectors: Sequence, policy: PrecisionPolicy):
    vectors = tuple(vectors)
    return sum(((-1) ** j * f(vectors[:j] + vectors[j + 1:], policy) for j in range(len(vectors))), policy.ctx.mpf(0))


def _require_trials(trials):
    if trials <= 0:
        raise ValueError("trials must be positive")


def verify_functional_equation(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0,
                               threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|sum_j (-1)^j f(face_j c)|`` over random ``(2m+1)``-vector configurations."""
    _require_trials(trials)
    rng = random.Random(seed)
    rejected = 0
    residuals = []
    for _ in range(trials):
        c, r = sample_configuration(f.m, 2 * f.m + 1, rng, policy, threshold)
        rejected += r
        residuals.append(abs(alternating_face_sum(f, c.vectors, policy)))
    return _report(f"functional-equation:{f.name}", trials, rejected, residuals, policy.tolerance, seed, policy.ctx)


def verify_skew_symmetry(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0,
                         threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|f(sigma c) - sgn(sigma) f(c)|`` over all reorderings of random configurations."""
    _require_trials(trials)
    rng = random.Random(seed)
    rejected = 0
    residuals = []
    perms = Permutation.all(2 * f.m)
    for _ in range(trials):
        c, r = sample_configuration(f.m, 2 * f.m, rng, policy, threshold)
        rejected += r
        base = f(c.vectors, policy)
        for sigma in perms:
            residuals.append(abs(f(sigma.permute(c.vectors), policy) - sigma.sign * base))
    return _report(f"skew-symmetry:{f.name}", trials, rejected, residuals, policy.tolerance, seed, policy.ctx)


def verify_invariance(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0,
                      threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|f(g c) - f(c)|`` for random invertible ``g``."""
    _require_trials(trials)
    rng = random.Random(seed)
    rejected = 0
    residuals = []
    for _ in range(trials):
        c, r = sample_configuration(f.m, 2 * f.m, rng, policy, threshold)
        rejected += r
        g = random_matrix(rng, f.m, policy.ctx)
        moved = tuple(mat_vec(g, v) for v in c.vectors)
        if genericity_margin(moved, f.m, policy.ctx) <= threshold:
            rejected += 1
            continue
        residuals.append(abs(f(moved, policy) - f(c.vectors, policy)))
    return _report(f"invariance:{f.name}", trials, rejected, residuals, policy.tolerance, seed, policy.ctx)


# --------------------------------------------------------------------------
# group cochains


def coboundary(cochain: Callable) -> Callable:
    """``(delta F)(g_0..g_n) = sum_i (-1)^i F(g_0..^g_i..g_n)`` for cochains on tuples."""

    def delta(gs, *args):
        gs = tuple(gs)
        terms = [(-1) ** i * cochain(gs[:i] + gs[i + 1:], *args) for i in range(len(gs))]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        return total

    return delta


@dataclass(frozen=True)
class CocycleSample:
    matrices: tuple
    base: tuple


def build_cocycle(f: GrassmannFunction, e: Sequence) -> Callable:
    """``(g_0, ..., g_{2m-1}) -> f(g_0 e, ..., g_{2m-1} e)``."""
    e = tuple(e)
    if len(e) != f.m:
        raise ValueError("base vector has the wrong length")
    if all(x == 0 for x in e):
        raise ValueError("base vector must be nonzero")

    def cocycle(gs, policy):
        gs = tuple(gs)
        if len(gs) != 2 * f.m:
            raise ValueError(f"the cocycle takes {2 * f.m} group elements")
        return f(tuple(mat_vec(g, e) for g in gs), policy)

    cocycle.base = e
    cocycle.function = f
    return cocycle


def base_change(h) -> Callable[[Callable], Callable]:
    """Precomposition with right multiplication: ``phi_h(F)(g_0..g_n) = F(g_0 h, ..., g_n h)``.

    Since ``phi_h(F)(g) = F(g h)``, ``phi_{h1 h2} = phi_{h1} o phi_{h2}``.
    """
    h = tuple(tuple(row) for row in h)
    if det(h, mpmath.mp) == 0:
        raise ValueError("base change needs an invertible matrix")

    def transform(cochain):
        def changed(gs, *args):
            return cochain(tuple(mat_mul(g, h) for g in gs), *args)

        return changed

    return transform


def sample_cocycle_arguments(m: int, count: int, e, rng: random.Random, policy: PrecisionPolicy,
                             threshold=SAMPLING_MARGIN, budget: int = 1000) -> tuple[CocycleSample, int]:
    """``count`` random matrices ``g_i`` with ``(g_i e)`` in numerically general position."""
    ctx = policy.ctx
    for rejected in range(budget):
        gs = tuple(random_matrix(rng, m, ctx) for _ in range(count))
        if any(abs(det(g, ctx)) <= threshold for g in gs):
            continue
        if genericity_margin([mat_vec(g, e) for g in gs], m, ctx) > threshold:
            return CocycleSample(gs, tuple(e)), rejected
    raise ResamplingExhausted(f"no generic group sample after {budget} attempts")


def default_base_vector(m: int, ctx):
    return tuple(ctx.mpc(1) for _ in range(m))


def verify_cocycle(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0, e=None,
                   threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|delta f^e (g_0..g_{2m})|`` on random group elements."""
    _require_trials(trials)
    ctx = policy.ctx
    e = default_base_vector(f.m, ctx) if e is None else tuple(ctx.mpc(x) for x in e)
    rng = random.Random(seed)
    delta = coboundary(build_cocycle(f, e))
    rejected = 0
    residuals = []
    for _ in range(trials):
        sample, r = sample_cocycle_arguments(f.m, 2 * f.m + 1, e, rng, policy, threshold)
        rejected += r
        residuals.append(abs(delta(sample.matrices, policy)))
    return _report(f"cocycle:{f.name}", trials, rejected, residuals, policy.tolerance, seed, ctx)


def verify_left_invariance(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0, e=None,
                           threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|f^e(g g_0, ...) - f^e(g_0, ...)|``."""
    _require_trials(trials)
    ctx = policy.ctx
    e = default_base_vector(f.m, ctx) if e is None else tuple(ctx.mpc(x) for x in e)
    rng = random.Random(seed)
    cocycle = build_cocycle(f, e)
    rejected = 0
    residuals = []
    for _ in range(trials):
        sample, r = sample_cocycle_arguments(f.m, 2 * f.m, e, rng, policy, threshold)
        rejected += r
        g = random_matrix(rng, f.m, ctx)
        moved = tuple(mat_mul(g, x) for x in sample.matrices)
        if genericity_margin([mat_vec(x, e) for x in moved], f.m, ctx) <= threshold:
            rejected += 1
            continue
        residuals.append(abs(cocycle(moved, policy) - cocycle(sample.matrices, policy)))
    return _report(f"left-invariance:{f.name}", trials, rejected, residuals, policy.tolerance, seed, ctx)


def verify_base_change(f: GrassmannFunction, trials: int, policy: PrecisionPolicy, seed: int = 0, e=None,
                       threshold=SAMPLING_MARGIN) -> VerificationReport:
    """Max of ``|phi_h(f^e)(g) - f^{h e}(g)|`` for a fresh random ``h`` per trial."""
    _require_trials(trials)
    ctx = policy.ctx
    e = default_base_vector(f.m, ctx) if e is None else tuple(ctx.mpc(x) for x in e)
    rng = random.Random(seed)
    cocycle = build_cocycle(f, e)
    rejected = 0
    residuals = []
    while len(residuals) < trials:
        h = random_matrix(rng, f.m, ctx)
        if abs(det(h, ctx)) <= threshold:
            rejected += 1
            continue
        he = mat_vec(h, e)
        sample, r = sample_cocycle_arguments(f.m, 2 * f.m, he, rng, policy, threshold)
        rejected += r
        lhs = base_change(h)(cocycle)(sample.matrices, policy)
        rhs = build_cocycle(f, he)(sample.matrices, policy)
        residuals.append(abs(lhs - rhs))
    return _report(f"base-change:{f.name}", trials, rejected, residuals, policy.tolerance, seed, ctx)


# --------------------------------------------------------------------------
# zeta demo

_ZETA_DEMO = {
    # d: (denominator n of the root of unity exp(2 pi i/n), control denominator)
    -3: (3, 6),
    -4: (4, 8),
}


@dataclass
class ZetaDemoReport:
    discriminant: int
    prec: int
    zeta_side: object
    dilog_side: object
    residual: object
    tolerance: object
    control_residual: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": "zeta-demo",
            "discriminant": self.discriminant,
            "prec": self.prec,
            "zeta_side": mpmath.nstr(self.zeta_side, self.prec),
            "dilog_side": mpmath.nstr(self.dilog_side, self.prec),
            "residual": _decimal(self.residual),
            "tolerance": _decimal(self.tolerance),
            "control_residual": _decimal(self.control_residual),
            "pass": self.passed,
        }


def zeta_demo(d: int = -3, policy: PrecisionPolicy | None = None) -> ZetaDemoReport:
    """Compare ``zeta(2) L(2, chi_d)`` with ``(pi^2/6) c D2(root of unity)``.

    ``d = -3`` uses ``c = 2/sqrt3`` at ``exp(2 pi i/3)``; ``d = -4`` uses
    ``c = 1`` at ``i``.  The control evaluates the same right-hand side at
    a different root of unity and must not match.
    """
    policy = policy or PrecisionPolicy(40)
    if d not in _ZETA_DEMO:
        raise UnsupportedDiscriminant(f"zeta demo supports discriminants -3 and -4, not {d}")
    ctx = policy.ctx
    order, control_order = _ZETA_DEMO[d]
    factor = 2 / ctx.sqrt(3) if d == -3 else ctx.mpf(1)
    zeta_side = riemann_zeta(2, policy) * dirichlet_l(2, d, policy)
    pi2_6 = ctx.pi ** 2 / 6

    def dilog_side(n):
        return pi2_6 * factor * bw_d2(ctx.expj(2 * ctx.pi / n), policy)

    rhs = dilog_side(order)
    residual = abs(zeta_side - rhs)
    control = abs(zeta_side - dilog_side(control_order))
    tolerance = ctx.mpf(10) ** (-(policy.prec - 15))
    return ZetaDemoReport(d, policy.prec, zeta_side, rhs, residual, tolerance, control, bool(residual < tolerance))
