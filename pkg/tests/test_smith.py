import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasspoly import smith

from oracles import integer_invariants

backends = ["python"] + (["cython"] if smith.BACKEND == "cython" else [])

small_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)))


@pytest.mark.parametrize("backend", backends)
def test_textbook_example(backend):
    assert smith.smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], backend) == [2, 6, 12]


@pytest.mark.parametrize("backend", backends)
def test_degenerate_shapes(backend):
    assert smith.smith_invariants([], backend) == []
    assert smith.smith_invariants([[0, 0], [0, 0]], backend) == []
    assert smith.smith_invariants([[3]], backend) == [3]
    assert smith.smith_invariants([[2], [4]], backend) == [2]


@settings(max_examples=80, deadline=None)
@given(small_matrices)
def test_invariants_match_sympy(rows):
    expected = integer_invariants(rows)
    for backend in backends:
        assert smith.smith_invariants(rows, backend) == expected


@pytest.mark.skipif(smith.BACKEND != "cython", reason="compiled kernel not built")
def test_compiled_kernel_falls_back_on_overflow():
    rng = random.Random(0)
    rows = [[rng.randint(-10**12, 10**12) for _ in range(5)] for _ in range(5)]
    assert smith.smith_invariants(rows, "cython") == integer_invariants(rows)


@pytest.mark.skipif(smith.BACKEND != "cython", reason="compiled kernel not built")
def test_diagonals_agree_between_backends():
    rng = random.Random(1)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(12)] for _ in range(9)]
        assert smith.smith_diagonal(rows, "python") == smith.smith_diagonal(rows, "cython")
