"""Named verification suites behind ``grasspoly verify``.

Each suite returns a list of check dictionaries in the common report
format; a suite passes when every check does.  Exact suites run over the
requested field with ``Fraction``-based arithmetic, numeric suites over
``C`` at the requested precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .chains import EQUIVARIANT, Chain, alt, boundary, cone_homotopy
from .configurations import Configuration, Permutation, normalize, random_configuration
from .fields import QQ, FieldDescriptor
from .grassmann import (
    GrassmannFunction,
    VerificationReport,
    alternating_face_sum,
    grassmann_d1,
    grassmann_d2,
    verify_base_change,
    verify_cocycle,
    verify_functional_equation,
    verify_left_invariance,
    verify_skew_symmetry,
)
from .milnor import km2_reduce, milnor_image, volume_calibration, volume_pullback
from .polylog import PrecisionPolicy, parse_complex


class SuiteInputError(ValueError):
    """Parameters a suite cannot run with (maps to exit code 2)."""


@dataclass
class SuiteParameters:
    m: int = 2
    n: int = 3
    trials: int = 100
    prec: int = 50
    seed: int = 0
    field: FieldDescriptor = QQ
    configurations: list | None = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "trials": self.trials,
            "prec": self.prec,
            "seed": self.seed,
            "field": self.field.to_json(),
        }


def _exact_check(check: str, trials: int, failures: int, seed: int, **extra) -> dict:
    out = {"check": check, "trials": trials, "failures": failures, "pass": failures == 0, "seed": seed}
    out.update(extra)
    return out


def _require(cond: bool, message: str):
    if not cond:
        raise SuiteInputError(message)


def _exact_configurations(params: SuiteParameters, length: int, rng: random.Random):
    if params.configurations is not None:
        for c in params.configurations:
            if not isinstance(c, Configuration):
                raise SuiteInputError("this suite needs exact configurations")
            yield c
        return
    for _ in range(params.trials):
        yield random_configuration(params.field, params.m, length, rng)


def _random_chain(params: SuiteParameters, length: int, rng: random.Random, terms: int = 3, rational=False) -> Chain:
    out = Chain(mode=EQUIVARIANT, rational=rational)
    for _ in range(terms):
        c = random_configuration(params.field, params.m, length, rng)
        coeff = rng.randint(-5, 5) or 1
        out = out + Chain.single(c, coeff, rational=rational)
    return out


# --------------------------------------------------------------------------
# exact suites


def suite_simplicial(params: SuiteParameters) -> list[dict]:
    """Face relations ``d_i d_j = d_{j-1} d_i`` (i < j) and their compatibility with permutations.

    Checked on configurations and again on their orbit points, which must
    also be independent of the chosen representative.
    """
    _require(params.m >= 1 and params.n >= 1, "simplicial suite needs m >= 1 and n >= 1")
    rng = random.Random(params.seed)
    length = params.m + params.n + 1
    face_fail = perm_fail = orbit_fail = 0
    count = 0
    for c in _exact_configurations(params, length, rng):
        count += 1
        ell = len(c)
        p = normalize(c)
        orbit_faces = [p.face(j) for j in range(ell)]
        for j in range(ell):
            for i in range(j):
                if c.face(j).face(i) != c.face(i).face(j - 1):
                    face_fail += 1
                if orbit_faces[j].face(i) != orbit_faces[i].face(j - 1):
                    orbit_fail += 1
        for i in range(1, ell):
            swap = Permutation.transposition(ell, i - 1, i)
            moved = c.act(swap)
            for j in range(ell):
                if j > i:
                    expected = c.face(j).act(Permutation.transposition(ell - 1, i - 1, i))
                elif j == i:
                    expected = c.face(i - 1)
                elif j == i - 1:
                    expected = c.face(i)
                else:
                    expected = c.face(j).act(Permutation.transposition(ell - 1, i - 2, i - 1))
                if moved.face(j) != expected:
                    perm_fail += 1
        for j in range(ell):
            # faces of a generic tuple are generic, so skip the re-check
            if normalize(c.face(j), check=False) != orbit_faces[j]:
                orbit_fail += 1
    return [
        _exact_check("face-commutation", count, face_fail, params.seed, m=params.m, n=params.n),
        _exact_check("permutation-compatibility", count, perm_fail, params.seed, m=params.m, n=params.n),
        _exact_check("orbit-faces", count, orbit_fail, params.seed, m=params.m, n=params.n),
    ]


def suite_sign_decomposition(params: SuiteParameters) -> list[dict]:
    """``boundary(alt(c)) == alt(boundary(c))`` and ``alt`` idempotent, degrees ``1..n``."""
    _require(params.n >= 1, "sign-decomposition suite needs n >= 1")
    rng = random.Random(params.seed)
    commute_fail = idem_fail = 0
    for t in range(params.trials):
        degree = 1 + t % params.n
        c = _random_chain(params, degree + 1, rng, rational=True)
        a = alt(c)
        if boundary(a) != alt(boundary(c)):
            commute_fail += 1
        if alt(a) != a:
            idem_fail += 1
    return [
        _exact_check("boundary-commutes-with-alt", params.trials, commute_fail, params.seed),
        _exact_check("alt-idempotent", params.trials, idem_fail, params.seed),
    ]


def suite_homotopy(params: SuiteParameters) -> list[dict]:
    """``boundary(cone_homotopy(z)) == z`` for random boundaries ``z`` (and ``boundary^2 = 0``)."""
    _require(not params.field.is_finite, "the contracting homotopy needs an infinite field")
    _require(params.n >= 2, "homotopy suite needs n >= 2 (boundaries of degree >= 1)")
    rng = random.Random(params.seed)
    fail = square_fail = 0
    if params.configurations is not None:
        chains = [Chain.single(c) for c in _exact_configurations(params, 0, rng)]
    else:
        chains = [_random_chain(params, params.n + 1, rng) for _ in range(params.trials)]
    for w0 in chains:
        z = boundary(w0)
        if boundary(z):
            square_fail += 1
            continue
        w = cone_homotopy(z)
        if boundary(w) != z:
            fail += 1
    return [
        _exact_check("boundary-squared", len(chains), square_fail, params.seed),
        _exact_check("cone-homotopy", len(chains), fail, params.seed),
    ]


def suite_symbols(params: SuiteParameters) -> list[dict]:
    """The Milnor image of a boundary of 4-vector chains in ``Q^2`` is trivial in ``K_2(Q)``."""
    _require(params.m == 2 and params.field == QQ, "symbols suite runs over Q^2")
    rng = random.Random(params.seed)
    fail = 0
    if params.configurations is not None:
        chains = [Chain.single(c) for c in _exact_configurations(params, 0, rng)]
    else:
        chains = [_random_chain(params, 4, rng) for _ in range(params.trials)]
    for c in chains:
        image = milnor_image(boundary(c))
        if image.m and not km2_reduce(image).is_trivial:
            fail += 1
    return [_exact_check("symbol-map-on-boundaries", len(chains), fail, params.seed)]


def suite_volform(params: SuiteParameters) -> list[dict]:
    """Pullback of ``vol_m`` through the chart change, for ``m = 1..params.m``."""
    _require(1 <= params.m <= 4, "volform suite supports 1 <= m <= 4")
    checks = []
    for m in range(1, params.m + 1):
        try:
            eps = volume_calibration(m)
            ok = True
        except ArithmeticError:
            eps, ok = None, False
        checks.append({
            "check": f"volume-calibration:m={m}",
            "epsilon": eps,
            "pullback": volume_pullback(m).to_text(),
            "pass": ok,
        })
    return checks


# --------------------------------------------------------------------------
# numeric suites


def _grassmann_function(m: int) -> GrassmannFunction:
    if m == 1:
        return grassmann_d1()
    if m == 2:
        return grassmann_d2()
    raise SuiteInputError("only m = 1 and m = 2 Grassmann logarithms are shipped")


def _numeric_configurations(params: SuiteParameters, policy: PrecisionPolicy):
    out = []
    for c in params.configurations:
        if isinstance(c, Configuration):
            out.append(tuple(tuple(policy.ctx.mpc(x.to_complex()) for x in v) for v in c.vectors))
        else:
            out.append(tuple(tuple(parse_complex(x, policy) for x in v) for v in c["vectors"]))
    return out


def suite_five_term(params: SuiteParameters) -> list[dict]:
    """``(2m+1)``-term functional equation and skew symmetry for the shipped Grassmann logarithm."""
    _require(params.trials > 0, "trials must be positive")
    policy = PrecisionPolicy(params.prec)
    f = _grassmann_function(params.m)
    if params.configurations is not None:
        residuals = []
        for vectors in _numeric_configurations(params, policy):
            _require(len(vectors) == 2 * params.m + 1, f"configurations need {2 * params.m + 1} vectors")
            residuals.append(abs(alternating_face_sum(f, vectors, policy)))
        worst = max(residuals) if residuals else policy.ctx.mpf(0)
        return [VerificationReport(f"functional-equation:{f.name}", len(residuals), 0, worst, policy.tolerance,
                                   bool(worst < policy.tolerance), params.seed).to_json()]
    return [
        verify_functional_equation(f, params.trials, policy, params.seed).to_json(),
        verify_skew_symmetry(f, max(1, params.trials // 5), policy, params.seed).to_json(),
    ]


def suite_cocycle(params: SuiteParameters) -> list[dict]:
    """Coboundary of ``f^e``, its left invariance, and the base-change identity."""
    _require(params.trials > 0, "trials must be positive")
    policy = PrecisionPolicy(params.prec)
    f = _grassmann_function(params.m)
    return [
        verify_cocycle(f, params.trials, policy, params.seed).to_json(),
        verify_left_invariance(f, params.trials, policy, params.seed).to_json(),
        verify_base_change(f, params.trials, policy, params.seed).to_json(),
    ]


SUITES: dict[str, Callable[[SuiteParameters], list[dict]]] = {
    "simplicial": suite_simplicial,
    "sign-decomposition": suite_sign_decomposition,
    "homotopy": suite_homotopy,
    "five-term": suite_five_term,
    "cocycle": suite_cocycle,
    "volform": suite_volform,
    "symbols": suite_symbols,
}


def run_suite(name: str, params: SuiteParameters) -> dict:
    """Run a suite and wrap its checks in a versioned report."""
    if name not in SUITES:
        raise SuiteInputError(f"unknown suite {name!r}")
    if params.trials <= 0:
        raise SuiteInputError("trials must be positive")
    checks = SUITES[name](params)
    return {
        "schema": 1,
        "command": "verify",
        "suite": name,
        "parameters": params.to_json(),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }
