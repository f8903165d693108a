"""Independent oracles shared by the test modules.

These deliberately avoid the package's own elimination code: determinants
use rational Gaussian elimination, invariant factors come from sympy,
and ranks over GF(p) use a dense row reduction.
"""

import itertools
import math
from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from plman.homology.matrix import IntegerMatrix, determinant
from plman.homology.snf import smith_normal_form


def det_fraction(rows):
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if A[r][i]), None)
        if p is None:
            return 0
        if p != i:
            A[i], A[p] = A[p], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / A[i][i]
            for c in range(i, n):
                A[r][c] -= f * A[i][c]
    return int(det)


def determinantal_divisors(rows):
    """gcd of all k x k minors, k = 1.. (the classical oracle)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for R in itertools.combinations(range(m), k):
            for C in itertools.combinations(range(n), k):
                g = math.gcd(g, det_fraction([[rows[i][j] for j in C] for i in R]))
        if g == 0:
            break
        out.append(g)
    return out


def check_snf(A: IntegerMatrix):
    res = smith_normal_form(A)
    assert res.U @ A @ res.V == res.S
    assert abs(determinant(res.U)) == 1
    assert abs(determinant(res.V)) == 1
    assert res.U @ res.U_inv == IntegerMatrix.identity(A.rows)
    assert res.V @ res.V_inv == IntegerMatrix.identity(A.cols)
    d = res.diagonal
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    for (i, j, v) in res.S.entries():
        assert i == j and v == d[i]
    return res


def sympy_diagonal(A: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of A according to sympy."""
    if A.rows == 0 or A.cols == 0:
        return ()
    return tuple(abs(int(x)) for x in sympy_invariant_factors(Matrix(A.to_dense()), domain=ZZ) if x)


def rank_mod_p(M: IntegerMatrix, p: int) -> int:
    rows = [[x % p for x in r] for r in M.to_dense()]
    rank, col = 0, 0
    ncols = M.cols
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
