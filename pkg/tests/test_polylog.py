import cmath
import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from grasspoly.polylog import (
    PrecisionPolicy,
    UnsupportedDiscriminant,
    bernoulli_weights,
    bw_d1,
    bw_d2,
    bw_dm,
    complex_to_json,
    dirichlet_l,
    is_fundamental_discriminant,
    kronecker,
    li,
    monodromy_loop,
    parse_complex,
    riemann_zeta,
)

from oracles import (
    alternating_zeta2,
    bernoulli_table,
    catalan_ramanujan,
    clausen2,
    hurwitz_em,
    l2_chi_minus3,
    l2_chi_minus4,
    polylog_series,
    zeta2,
)

P = PrecisionPolicy(50)
TOL = P.tolerance
ctx = P.ctx

coords = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
points = st.builds(complex, coords, coords)


def close(a, b, tol=TOL):
    return abs(ctx.mpc(a) - ctx.mpc(b)) < tol


def generic(z, eps=1e-3):
    return abs(z) > eps and abs(z - 1) > eps and abs(z.imag) > eps


def test_precision_policy():
    assert close(P.tolerance, ctx.mpf(10) ** -40, ctx.mpf(10) ** -90)
    assert P.doubled().prec == 100
    with pytest.raises(ValueError):
        PrecisionPolicy(10)
    with pytest.raises(ValueError):
        PrecisionPolicy(30, guard=30)


@pytest.mark.parametrize("text,expected", [
    ("1+2i", (1, 2)), ("3i", (0, 3)), ("i", (0, 1)), ("-i", (0, -1)), ("-1.5", (-1.5, 0)),
    ("1e-3-2.5e1i", (0.001, -25)), ("0.5 - 0.25j", (0.5, -0.25)), ({"re": "2", "im": "-1"}, (2, -1)),
])
def test_parse_complex(text, expected):
    z = parse_complex(text, P)
    assert z == ctx.mpc(*map(ctx.mpf, map(str, expected)))


@pytest.mark.parametrize("text", ["", "abc", "1+2", "3i4", "ii", "1+2i+3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text, P)


def test_decimal_inputs_are_exact():
    # 0.1 is parsed from its decimal string, not the nearest double
    assert parse_complex("0.1", P).real == ctx.mpf(1) / 10
    assert complex_to_json(parse_complex("0.5+2i", P), P) == {"re": "0.5", "im": "2.0"}


def test_li_special_values():
    assert li(2, 0, P) == 0
    assert close(li(2, 1, P), zeta2(60))
    assert close(li(2, -1, P), -alternating_zeta2(60))
    half = ctx.mpf(1) / 2
    assert close(li(2, half, P), ctx.pi ** 2 / 12 - ctx.log(2) ** 2 / 2)
    assert close(li(1, half, P), ctx.log(2))
    assert close(li(3, 1, P), hurwitz_em(3, 1, 60))
    with pytest.raises(ZeroDivisionError):
        li(1, 1, P)
    with pytest.raises(ValueError):
        li(0, 0.5, P)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("z", [0.3 + 0.1j, -0.45j, 0.7 - 0.5j, -0.8 + 0.2j, 0.55 + 0.6j, 0.95j])
def test_li_matches_power_series(m, z):
    assert close(li(m, z, P), polylog_series(m, z, 60))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("z", [1.5 + 0.5j, -3 + 1j, 10 - 4j, 1 + 1j, -1.2 - 0.1j, 0.9 + 0.5j, 2.5 - 0.01j])
def test_li_matches_mpmath_everywhere(m, z):
    with mpmath.workdps(70):
        expected = mpmath.polylog(m, mpmath.mpc(z))
    assert close(li(m, z, P), expected)


@settings(max_examples=50, deadline=None)
@given(points)
def test_dilogarithm_inversion(z):
    assume(generic(z, 1e-2))
    z = ctx.mpc(z)
    lhs = li(2, z, P) + li(2, 1 / z, P)
    rhs = -ctx.pi ** 2 / 6 - ctx.log(-z) ** 2 / 2
    assert close(lhs, rhs)


def test_li_on_the_cut_is_the_limit_from_below():
    below = li(2, ctx.mpc(3, -ctx.mpf(10) ** -30), P)
    assert close(li(2, 3, P), below, ctx.mpf(10) ** -25)
    assert li(2, 3, P).imag < 0


def test_precision_doubling_is_consistent():
    Q = P.doubled()
    for m in (2, 3, 5):
        for z in (0.7 + 0.4j, 4 - 1j, -0.2 + 0.9j):
            assert close(li(m, z, P), li(m, z, Q))


def test_d1():
    assert close(bw_d1(ctx.mpc(3, 4), P), ctx.log(5))
    with pytest.raises(ZeroDivisionError):
        bw_d1(0, P)


def test_d2_special_values():
    assert close(bw_d2(1j, P), catalan_ramanujan(60))
    assert close(bw_d2(1j, P), l2_chi_minus4(60))
    w = ctx.expjpi(ctx.mpf(2) / 3)
    assert close(bw_d2(w, P), clausen2(2 * ctx.pi / 3, 60))
    # Cl_2(2 pi / 3) = sqrt(3)/2 * L(2, chi_-3)
    assert close(bw_d2(w, P), ctx.sqrt(3) / 2 * l2_chi_minus3(60))
    u = ctx.expjpi(ctx.mpf(1) / 3)
    assert close(bw_d2(u, P), clausen2(ctx.pi / 3, 60))
    assert bw_d2(0, P) == 0 and bw_d2(1, P) == 0


@pytest.mark.parametrize("x", [-5, -1, -0.3, 0.2, 0.5, 0.9, 2, 3, 10])
def test_d2_vanishes_on_the_real_line(x):
    assert abs(bw_d2(x, P)) < TOL


def test_d2_is_continuous_across_the_cut():
    eps = ctx.mpf(10) ** -(P.prec // 2)
    for x in (1.5, 3, 10):
        above, below = bw_d2(ctx.mpc(x, eps), P), bw_d2(ctx.mpc(x, -eps), P)
        assert abs(above) < ctx.mpf(10) ** -20 and abs(below) < ctx.mpf(10) ** -20


@settings(max_examples=40, deadline=None)
@given(points)
def test_d2_symmetries(z):
    assume(generic(z))
    x = ctx.mpc(z)
    d = bw_d2(x, P)
    assert close(bw_d2(ctx.conj(x), P), -d)
    assert close(bw_d2(1 - 1 / x, P), d)
    assert close(bw_d2(1 / (1 - x), P), d)
    assert close(bw_d2(1 / x, P), -d)
    assert close(bw_d2(1 - x, P), -d)
    assert close(bw_d2(x / (x - 1), P), -d)


@settings(max_examples=40, deadline=None)
@given(points, points)
def test_d2_five_term_relation(a, b):
    assume(generic(a) and generic(b) and abs(1 - a * b) > 1e-3)
    x, y = ctx.mpc(a), ctx.mpc(b)
    total = (bw_d2(x, P) + bw_d2(y, P) + bw_d2((1 - x) / (1 - x * y), P)
             + bw_d2(1 - x * y, P) + bw_d2((1 - y) / (1 - x * y), P))
    assert abs(total) < TOL


def test_bernoulli_weights():
    table = bernoulli_table(8)
    w = bernoulli_weights(8, P)
    for k in range(8):
        q = table[k] * 2 ** k / math.factorial(k)
        assert close(w[k], ctx.mpf(q.numerator) / q.denominator)
    assert w[1] == -1


def test_dm_reduces_to_lower_cases():
    for z in (0.3 + 0.8j, -2 + 0.5j, 1.5 - 1j):
        x = ctx.mpc(z)
        assert bw_dm(2, x, P) == bw_d2(x, P)
        assert close(bw_dm(1, x, P), -bw_d1(1 - x, P))


def test_d3_special_values():
    z3 = hurwitz_em(3, 1, 60)
    assert close(bw_dm(3, 1, P), z3)
    assert close(bw_dm(3, -1, P), -3 * z3 / 4)
    assert bw_dm(4, 1, P) == 0


@settings(max_examples=25, deadline=None)
@given(points, st.integers(3, 5))
def test_dm_inversion_and_conjugation(z, m):
    assume(generic(z))
    x = ctx.mpc(z)
    d = bw_dm(m, x, P)
    sign = (-1) ** (m - 1)
    assert close(bw_dm(m, 1 / x, P), sign * d)
    assert close(bw_dm(m, ctx.conj(x), P), sign * d)


def test_d3_at_doubled_precision():
    Q = P.doubled()
    for z in (0.4 + 0.3j, -3 + 2j, 0.99 + 0.2j):
        assert close(bw_dm(3, z, P), bw_dm(3, z, Q))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_monodromy_leaves_dm_unchanged(m):
    r = monodromy_loop(m, P, steps=360)
    assert r.residual < TOL
    # -log(1 - z) loses 2 pi i on a counterclockwise loop around 1
    assert r.winding == -1
    # the individual polylogarithms do change
    assert r.li_change > ctx.mpf(10) ** -3


def test_monodromy_around_zero_is_trivial_for_li():
    r = monodromy_loop(3, P, center=0, radius=0.5, steps=180)
    assert r.residual < TOL and r.li_change < TOL


def test_fundamental_discriminants():
    found = [d for d in range(-30, 30) if is_fundamental_discriminant(d)]
    assert found == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]


@pytest.mark.parametrize("d", [-3, -4, -7, -8, 5, 12])
def test_kronecker_against_jacobi(d):
    for n in range(1, 60, 2):
        expected = int(sympy.jacobi_symbol(d % n, n)) if n > 1 else 1
        assert kronecker(d, n) == expected
    # (d/2) is 0 for even d and depends on d mod 8 otherwise
    if d % 2:
        assert kronecker(d, 2) == (1 if d % 8 in (1, 7) else -1)
    else:
        assert kronecker(d, 2) == 0


def test_dirichlet_l_values():
    assert close(dirichlet_l(2, -4, P), catalan_ramanujan(60))
    assert close(dirichlet_l(2, -3, P), l2_chi_minus3(60))
    expected = sum(kronecker(-7, a) * hurwitz_em(2, Fraction(a, 7), 60) for a in range(1, 7)) / 49
    assert close(dirichlet_l(2, -7, P), expected)
    assert close(riemann_zeta(2, P), zeta2(60))


@pytest.mark.parametrize("d", [-1, -12, 5, 0])
def test_dirichlet_l_rejects(d):
    with pytest.raises(UnsupportedDiscriminant):
        dirichlet_l(2, d, P)


def test_float_sanity_against_cmath():
    # coarse check that the branch matches the usual -log(1 - z)
    z = 2 + 1j
    assert abs(complex(li(1, z, P)) + cmath.log(1 - z)) < 1e-14
