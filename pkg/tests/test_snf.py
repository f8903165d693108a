import random

from hypothesis import given, settings, strategies as st

from oracles import check_snf, determinantal_divisors, sympy_diagonal
from plman.homology.matrix import IntegerMatrix
from plman.homology.snf import invariant_factors, smith_normal_form


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_certificate_and_divisors(rows):
    A = IntegerMatrix.from_dense(rows)
    res = check_snf(A)
    divs = determinantal_divisors(rows)
    expected = [divs[0]] + [divs[k] // divs[k - 1] for k in range(1, len(divs))] if divs else []
    assert list(res.diagonal) == expected


def test_invariant_factors_without_transforms_agree():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        A = IntegerMatrix.from_dense([[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(n)] for _ in range(m)])
        assert invariant_factors(A) == smith_normal_form(A).diagonal


def test_known_forms():
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])).diagonal == (2, 6, 12)
    assert smith_normal_form(IntegerMatrix.from_dense([[0, 0], [0, 0]])).diagonal == ()
    assert smith_normal_form(IntegerMatrix(0, 3)).diagonal == ()


def test_sparse_boundary_like_matrix_stays_small():
    rng = random.Random(3)
    n = 150
    entries = []
    for i in range(n):
        for j in rng.sample(range(n), 3):
            entries.append((i, j, rng.choice([1, -1])))
    A = IntegerMatrix.from_entries(n, n, entries)
    res = check_snf(A)
    assert max(abs(v) for _, _, v in res.U.entries()) < 10 ** 12


def test_agrees_with_sympy_on_random_matrices():
    rng = random.Random(21)
    for _ in range(30):
        m, n = rng.randint(1, 9), rng.randint(1, 9)
        A = IntegerMatrix.from_dense([[rng.choice([0, 0, 1, -1, 2, -3, 5]) for _ in range(n)] for _ in range(m)])
        assert smith_normal_form(A).diagonal == sympy_diagonal(A)
