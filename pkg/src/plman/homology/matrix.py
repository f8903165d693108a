"""Sparse matrices over the integers (arbitrary precision)."""

from __future__ import annotations

from typing import Iterable, Sequence


class IntegerMatrix:
    """rows x cols integer matrix stored as {row: {col: value}} without zeros."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, int]] = {}
        if data:
            for i, row in data.items():
                clean = {j: int(v) for j, v in row.items() if v}
                if clean:
                    self.data[i] = clean

    # -- construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged dense matrix")
        return cls(len(rows), ncols, {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(rows)})

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]) -> "IntegerMatrix":
        data: dict[int, dict[int, int]] = {}
        for i, j, v in entries:
            if v:
                row = data.setdefault(i, {})
                row[j] = row.get(j, 0) + v
        return cls(rows, cols, data)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        n = len(values)
        return cls(rows if rows is not None else n, cols if cols is not None else n,
                   {i: {i: v} for i, v in enumerate(values) if v})

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.data.get(i, {}).get(j, 0)

    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def entries(self):
        for i in sorted(self.data):
            row = self.data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def row(self, i: int) -> dict[int, int]:
        return dict(self.data.get(i, {}))

    def column(self, j: int) -> dict[int, int]:
        return {i: r[j] for i, r in self.data.items() if j in r}

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- algebra --------------------------------------------------------------

    def transpose(self) -> "IntegerMatrix":
        data: dict[int, dict[int, int]] = {}
        for i, row in self.data.items():
            for j, v in row.items():
                data.setdefault(j, {})[i] = v
        out = IntegerMatrix(self.cols, self.rows)
        out.data = data
        return out

    T = property(transpose)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        data: dict[int, dict[int, int]] = {}
        odata = other.data
        for i, row in self.data.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        out = IntegerMatrix(self.rows, other.cols)
        out.data = data
        return out

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        data = {i: dict(r) for i, r in self.data.items()}
        for i, row in other.data.items():
            target = data.setdefault(i, {})
            for j, v in row.items():
                nv = target.get(j, 0) + v
                if nv:
                    target[j] = nv
                else:
                    target.pop(j, None)
            if not target:
                del data[i]
        out = IntegerMatrix(self.rows, self.cols)
        out.data = data
        return out

    def __neg__(self) -> "IntegerMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntegerMatrix":
        if c == 0:
            return IntegerMatrix(self.rows, self.cols)
        out = IntegerMatrix(self.rows, self.cols)
        out.data = {i: {j: c * v for j, v in r.items()} for i, r in self.data.items()}
        return out

    def apply(self, vector: Sequence[int]) -> list[int]:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for i, row in self.data.items():
            out[i] = sum(v * vector[j] for j, v in row.items())
        return out

    def mod(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols,
                             {i: {j: v % k for j, v in r.items()} for i, r in self.data.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntegerMatrix":
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        data: dict[int, dict[int, int]] = {}
        for i, row in self.data.items():
            if i not in rpos:
                continue
            new = {cpos[j]: v for j, v in row.items() if j in cpos}
            if new:
                data[rpos[i]] = new
        out = IntegerMatrix(len(rows), len(cols))
        out.data = data
        return out

    def columns_list(self) -> list[list[int]]:
        cols = [[0] * self.rows for _ in range(self.cols)]
        for i, j, v in self.entries():
            cols[j][i] = v
        return cols


def hstack(blocks: Sequence[IntegerMatrix]) -> IntegerMatrix:
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack row mismatch")
    data: dict[int, dict[int, int]] = {}
    offset = 0
    for b in blocks:
        for i, row in b.data.items():
            target = data.setdefault(i, {})
            for j, v in row.items():
                target[j + offset] = v
        offset += b.cols
    out = IntegerMatrix(rows, offset)
    out.data = data
    return out


def vstack(blocks: Sequence[IntegerMatrix]) -> IntegerMatrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("vstack column mismatch")
    data: dict[int, dict[int, int]] = {}
    offset = 0
    for b in blocks:
        for i, row in b.data.items():
            data[i + offset] = dict(row)
        offset += b.rows
    out = IntegerMatrix(offset, cols)
    out.data = data
    return out


def kron(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    """Kronecker product; row (i, k) -> i * B.rows + k."""
    data: dict[int, dict[int, int]] = {}
    for i, arow in A.data.items():
        for k, brow in B.data.items():
            target = {}
            for j, a in arow.items():
                base = j * B.cols
                for l, b in brow.items():
                    target[base + l] = a * b
            if target:
                data[i * B.rows + k] = target
    out = IntegerMatrix(A.rows * B.rows, A.cols * B.cols)
    out.data = data
    return out


def determinant(A: IntegerMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_dense()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
