"""Integer lattices: kernels, images, integral solves and subquotients.

Every routine is a thin layer over the Smith form, so results are exact
and deterministic.  Lattices are given by the columns of an IntegerMatrix.
"""

from __future__ import annotations

from typing import Sequence

from .descriptor import GroupDescriptor
from .matrix import IntegerMatrix
from .snf import SNFResult, smith_normal_form


def columns(M: IntegerMatrix, idx: Sequence[int]) -> IntegerMatrix:
    return M.submatrix(range(M.rows), list(idx))


def column_vector(M: IntegerMatrix, j: int) -> list[int]:
    out = [0] * M.rows
    for i, row in M.data.items():
        v = row.get(j)
        if v:
            out[i] = v
    return out


def from_columns(rows: int, cols: Sequence[Sequence[int]]) -> IntegerMatrix:
    data: dict[int, dict[int, int]] = {}
    for j, col in enumerate(cols):
        if len(col) != rows:
            raise ValueError("column length mismatch")
        for i, v in enumerate(col):
            if v:
                data.setdefault(i, {})[j] = v
    return IntegerMatrix(rows, len(cols), data)


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Columns form a Z-basis of {x : A x = 0}."""
    res = smith_normal_form(A)
    return columns(res.V, range(res.rank, A.cols))


def image_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Columns form a Z-basis of the column lattice of A."""
    res = smith_normal_form(A)
    B = columns(res.U_inv, range(res.rank))
    data = {i: {j: v * res.diagonal[j] for j, v in row.items()} for i, row in B.data.items()}
    return IntegerMatrix(B.rows, B.cols, data)


def _solve_with(res: SNFResult, b: Sequence[int]) -> list[int] | None:
    Ub = res.U.apply(b)
    r = res.rank
    if any(Ub[r:]):
        return None
    y = [0] * res.V.rows
    for i in range(r):
        q, rem = divmod(Ub[i], res.diagonal[i])
        if rem:
            return None
        y[i] = q
    return res.V.apply(y)


def solve(A: IntegerMatrix, b: Sequence[int]) -> list[int] | None:
    """An integer x with A x = b, or None when none exists."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    return _solve_with(smith_normal_form(A), b)


class Solver:
    """Reusable integral solver for a fixed matrix."""

    def __init__(self, A: IntegerMatrix):
        self.A = A
        self.res = smith_normal_form(A)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        return _solve_with(self.res, b)


class Subquotient:
    """The group Z/B for lattices B <= Z in Z^n.

    ``Z`` has independent columns; ``B`` may have redundant columns but
    must lie in the span of ``Z``.  Class coordinates are taken in the
    Smith basis: one residue per torsion factor followed by one integer
    per free summand.
    """

    def __init__(self, Z: IntegerMatrix, B: IntegerMatrix):
        if Z.rows != B.rows:
            raise ValueError("ambient dimensions differ")
        self.Z = Z
        self.B = B
        self._zsolver = Solver(Z)
        coords = []
        for j in range(B.cols):
            c = self._zsolver.solve(column_vector(B, j))
            if c is None:
                raise ValueError("boundary lattice is not contained in the cycle lattice")
            coords.append(c)
        C = from_columns(Z.cols, coords)
        self._C = C
        self._snf = smith_normal_form(C)
        diag = self._snf.diagonal
        self._kept = [i for i, d in enumerate(diag) if d > 1] + list(range(len(diag), Z.cols))
        self.descriptor = GroupDescriptor.from_diagonal(Z.cols, diag)
        self._bsolver = None

    @property
    def ambient_dim(self) -> int:
        return self.Z.rows

    def contains(self, x: Sequence[int]) -> bool:
        return self._zsolver.solve(x) is not None

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Smith coordinates of the class of x (torsion parts reduced)."""
        c = self._zsolver.solve(x)
        if c is None:
            raise ValueError("vector is not in the cycle lattice")
        w = self._snf.U.apply(c)
        diag = self._snf.diagonal
        out = []
        for i in self._kept:
            out.append(w[i] % diag[i] if i < len(diag) else w[i])
        return tuple(out)

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.coordinates(x))

    def generators(self) -> list[list[int]]:
        """Representatives of the Smith generators, in coordinate order."""
        Ui = self._snf.U_inv
        out = []
        for i in self._kept:
            out.append(self.Z.apply(column_vector(Ui, i)))
        return out

    def representative(self, coords: Sequence[int]) -> list[int]:
        """Canonical representative with the given class coordinates."""
        if len(coords) != len(self._kept):
            raise ValueError("coordinate length mismatch")
        vec = [0] * self.Z.rows
        diag = self._snf.diagonal
        for g, c, i in zip(self.generators(), coords, self._kept):
            if i < len(diag):
                c %= diag[i]
            if c:
                for k, v in enumerate(g):
                    vec[k] += c * v
        return vec

    def canonical(self, x: Sequence[int]) -> list[int]:
        return self.representative(self.coordinates(x))

    def boundary_witness(self, x: Sequence[int]) -> list[int] | None:
        """w with B w = x, or None when x is not in B."""
        if self._bsolver is None:
            self._bsolver = Solver(self.B)
        return self._bsolver.solve(x)
