import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasspoly.grassmann import (
    DegenerateConfigurationError,
    ResamplingExhausted,
    alternating_face_sum,
    base_change,
    build_cocycle,
    coboundary,
    constant_function,
    default_base_vector,
    genericity_margin,
    grassmann_d1,
    grassmann_d2,
    mat_mul,
    mat_vec,
    sample_cocycle_arguments,
    sample_configuration,
    verify_base_change,
    verify_cocycle,
    verify_functional_equation,
    verify_invariance,
    verify_left_invariance,
    verify_skew_symmetry,
    zeta_demo,
)
from grasspoly.polylog import PrecisionPolicy, UnsupportedDiscriminant, bw_d2

P = PrecisionPolicy(40)
ctx = P.ctx
seeds = st.integers(0, 10**6)


def test_d1_and_d2_on_explicit_configurations():
    d1 = grassmann_d1()
    assert abs(d1([(ctx.mpc(2),), (ctx.mpc(0, 6),)], P) - ctx.log(3)) < P.tolerance
    t = ctx.mpc("0.3", "1.7")
    vecs = [(1, 0), (0, 1), (1, 1), (1, t)]
    # the cross-ratio of these four vectors is 1/t
    for f in (grassmann_d2(), grassmann_d2(symmetrize=False)):
        assert abs(f(vecs, P) + bw_d2(t, P)) < P.tolerance


def test_evaluators_refuse_bad_input():
    f = grassmann_d2()
    with pytest.raises(DegenerateConfigurationError):
        f([(1, 0), (2, 0), (0, 1), (1, 1)], P)
    with pytest.raises(ValueError):
        f([(1, 0), (0, 1), (1, 1)], P)
    with pytest.raises(DegenerateConfigurationError):
        grassmann_d1()([(ctx.mpc(0),), (ctx.mpc(1),)], P)


def test_sampling_counts_and_margin():
    rng = random.Random(0)
    c, rejected = sample_configuration(2, 5, rng, P)
    assert len(c) == 5 and rejected >= 0
    assert c.margin == genericity_margin(c.vectors, 2, ctx) > 1e-5
    assert all(abs(x) <= 2 for v in c.vectors for x in v)
    with pytest.raises(ResamplingExhausted):
        sample_configuration(2, 4, rng, P, threshold=100, budget=5)


@pytest.mark.parametrize("f", [grassmann_d1(), grassmann_d2(), grassmann_d2(symmetrize=False)],
                         ids=lambda f: f.name)
def test_functional_equation(f):
    r = verify_functional_equation(f, 8, P, seed=3)
    assert r.passed and r.max_residual < P.tolerance


def test_constant_function_fails_the_functional_equation():
    # an odd number of faces leaves the constant behind
    for m in (1, 2):
        r = verify_functional_equation(constant_function(m), 5, P)
        assert not r.passed
        assert abs(r.max_residual - 1) < P.tolerance


def test_skew_symmetry():
    for f in (grassmann_d1(), grassmann_d2(), grassmann_d2(symmetrize=False)):
        assert verify_skew_symmetry(f, 2, P, seed=1).passed
    assert not verify_skew_symmetry(constant_function(2), 1, P).passed


def test_raw_pullback_is_already_alternating():
    rng = random.Random(4)
    for _ in range(5):
        c, _ = sample_configuration(2, 4, rng, P)
        assert abs(grassmann_d2()(c.vectors, P) - grassmann_d2(symmetrize=False)(c.vectors, P)) < P.tolerance


def test_invariance():
    for f in (grassmann_d1(), grassmann_d2()):
        assert verify_invariance(f, 6, P, seed=2).passed


def test_reports_are_reproducible_and_serialisable():
    a = verify_functional_equation(grassmann_d2(), 3, P, seed=11).to_json()
    b = verify_functional_equation(grassmann_d2(), 3, P, seed=11).to_json()
    assert a == b
    assert json.loads(json.dumps(a))["pass"] is True
    assert set(a) >= {"check", "trials", "rejected", "max_residual", "tolerance", "pass", "seed"}


@pytest.mark.parametrize("verify", [verify_functional_equation, verify_skew_symmetry, verify_invariance,
                                    verify_cocycle, verify_left_invariance, verify_base_change])
def test_trials_must_be_positive(verify):
    with pytest.raises(ValueError):
        verify(grassmann_d2(), 0, P)


# --------------------------------------------------------------------------
# cochains


def exact_cochain(gs):
    """An arbitrary non-invariant cochain on tuples of 2x2 rational matrices."""
    total = Fraction(0)
    for i, g in enumerate(gs):
        total += (i + 1) * g[0][1] * g[1][0] - g[0][0] ** 2 / (i + 2)
    return total + len(gs)


def rational_matrix(rng):
    while True:
        g = tuple(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2)) for _ in range(2))
        if g[0][0] * g[1][1] - g[0][1] * g[1][0]:
            return g


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), seeds)
def test_coboundary_squares_to_zero(n, seed):
    rng = random.Random(seed)
    gs = [rational_matrix(rng) for _ in range(n + 2)]
    assert coboundary(coboundary(exact_cochain))(gs) == 0


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_base_change_composes(seed):
    rng = random.Random(seed)
    h1, h2 = rational_matrix(rng), rational_matrix(rng)
    gs = [rational_matrix(rng) for _ in range(3)]
    combined = base_change(mat_mul(h1, h2))(exact_cochain)(gs)
    assert combined == base_change(h1)(base_change(h2)(exact_cochain))(gs)
    assert base_change(((1, 0), (0, 1)))(exact_cochain)(gs) == exact_cochain(gs)


def test_base_change_order_matters():
    rng = random.Random(7)
    differs = 0
    for _ in range(10):
        h1, h2 = rational_matrix(rng), rational_matrix(rng)
        gs = [rational_matrix(rng) for _ in range(3)]
        combined = base_change(mat_mul(h1, h2))(exact_cochain)(gs)
        differs += combined != base_change(h2)(base_change(h1)(exact_cochain))(gs)
    assert differs >= 8


def test_base_change_rejects_singular_matrices():
    with pytest.raises(ValueError):
        base_change(((1, 2), (2, 4)))


def test_build_cocycle_checks_arguments():
    f = grassmann_d2()
    with pytest.raises(ValueError):
        build_cocycle(f, (0, 0))
    with pytest.raises(ValueError):
        build_cocycle(f, (1, 1, 1))
    with pytest.raises(ValueError):
        build_cocycle(f, (1, 1))([((1, 0), (0, 1))], P)


def test_cocycle_condition_is_the_functional_equation():
    f = grassmann_d2()
    e = default_base_vector(2, ctx)
    delta = coboundary(build_cocycle(f, e))
    rng = random.Random(9)
    for _ in range(3):
        sample, _ = sample_cocycle_arguments(2, 5, e, rng, P)
        moved = [mat_vec(g, e) for g in sample.matrices]
        assert delta(sample.matrices, P) == alternating_face_sum(f, moved, P)
        assert abs(delta(sample.matrices, P)) < P.tolerance


@pytest.mark.parametrize("f", [grassmann_d1(), grassmann_d2()], ids=lambda f: f.name)
def test_cocycle_checks(f):
    assert verify_cocycle(f, 4, P, seed=5).passed
    assert verify_left_invariance(f, 4, P, seed=5).passed
    assert verify_base_change(f, 4, P, seed=5).passed


def test_cocycle_with_another_base_vector():
    assert verify_cocycle(grassmann_d2(), 3, P, e=(ctx.mpc(2), ctx.mpc(0, -1))).passed


def test_constant_cochain_is_not_a_cocycle():
    assert not verify_cocycle(constant_function(1), 3, P).passed


# --------------------------------------------------------------------------
# zeta values


@pytest.mark.parametrize("d", [-3, -4])
def test_zeta_demo(d):
    r = zeta_demo(d, P)
    assert r.passed
    assert r.residual < r.tolerance
    assert r.control_residual > 0.1
    data = r.to_json()
    assert data["pass"] and data["discriminant"] == d


def test_zeta_demo_at_higher_precision():
    r = zeta_demo(-3, PrecisionPolicy(80))
    assert r.passed and r.residual < ctx.mpf(10) ** -60


def test_zeta_demo_rejects_other_discriminants():
    for d in (-7, -8, 5):
        with pytest.raises(UnsupportedDiscriminant):
            zeta_demo(d, P)
