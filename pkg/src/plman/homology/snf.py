"""Smith normal form of sparse integer matrices.

Pivot rule: the nonzero entry of least absolute value in the active
submatrix, ties broken by lowest row then lowest column (original
indices).  Rows and columns are never physically swapped during
elimination; the final permutation is applied once at the end.  Rows and
columns are reduced by nearest quotients, so a remainder is always smaller
than the pivot that produced it and becomes the next pivot.  After
diagonalization the divisibility chain is enforced with 2x2 gcd moves.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .matrix import IntegerMatrix


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V == S with U, V unimodular and d1 | d2 | ... on the diagonal."""

    S: IntegerMatrix
    U: IntegerMatrix | None
    V: IntegerMatrix | None
    U_inv: IntegerMatrix | None
    V_inv: IntegerMatrix | None
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal


def _nearest_quotient(a: int, p: int) -> int:
    q = a // p
    r1 = a - q * p
    r2 = r1 - p
    return q + 1 if abs(r2) < abs(r1) else q


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class _Eliminator:
    def __init__(self, A: IntegerMatrix, transforms: bool):
        self.m, self.n = A.rows, A.cols
        self.rows: dict[int, dict[int, int]] = {i: dict(r) for i, r in A.data.items()}
        self.colset: dict[int, set[int]] = {}
        self.heap: list[tuple[int, int, int]] = []
        for i, r in self.rows.items():
            for j, v in r.items():
                self.colset.setdefault(j, set()).add(i)
                self.heap.append((abs(v), i, j))
        heapq.heapify(self.heap)
        self.transforms = transforms
        if transforms:
            # U rows, U_inv columns, V columns, V_inv rows; all start as identity
            self.U = {i: {i: 1} for i in range(self.m)}
            self.Ui = {i: {i: 1} for i in range(self.m)}
            self.V = {j: {j: 1} for j in range(self.n)}
            self.Vi = {j: {j: 1} for j in range(self.n)}

    # -- primitive updates -------------------------------------------------

    def _set(self, i: int, j: int, value: int):
        row = self.rows.setdefault(i, {})
        if value:
            row[j] = value
            self.colset.setdefault(j, set()).add(i)
            heapq.heappush(self.heap, (abs(value), i, j))
        else:
            row.pop(j, None)
            cs = self.colset.get(j)
            if cs is not None:
                cs.discard(i)

    @staticmethod
    def _axpy(target: dict[int, dict[int, int]], dst: int, src: int, q: int):
        """target[dst] += q * target[src] on sparse vectors."""
        s = target.get(src)
        if not s or not q:
            return
        d = target.setdefault(dst, {})
        for k, v in s.items():
            nv = d.get(k, 0) + q * v
            if nv:
                d[k] = nv
            else:
                d.pop(k, None)

    def row_op(self, r: int, src: int, q: int):
        """row r -= q * row src."""
        for j, v in list(self.rows.get(src, {}).items()):
            self._set(r, j, self.rows.get(r, {}).get(j, 0) - q * v)
        if self.transforms:
            self._axpy(self.U, r, src, -q)
            self._axpy(self.Ui, src, r, q)

    def col_op(self, c: int, src: int, q: int):
        """col c -= q * col src."""
        for i in list(self.colset.get(src, ())):
            v = self.rows[i][src]
            self._set(i, c, self.rows[i].get(c, 0) - q * v)
        if self.transforms:
            self._axpy(self.V, c, src, -q)
            self._axpy(self.Vi, src, c, q)

    # -- main loop ----------------------------------------------------------

    def next_pivot(self):
        heap = self.heap
        while heap:
            a, i, j = heap[0]
            v = self.rows.get(i, {}).get(j, 0)
            if v and abs(v) == a:
                return i, j
            heapq.heappop(heap)
        return None

    def _reduce_line(self, pi: int, pj: int) -> bool:
        """Reduce column pj, then row pi, by nearest quotients of the pivot.

        Returns True when both are clear apart from the pivot; otherwise a
        nonzero remainder smaller than the pivot is left behind and the
        caller picks a new pivot.
        """
        p = self.rows[pi][pj]
        clean = True
        for r in sorted(self.colset[pj] - {pi}):
            a = self.rows[r][pj]
            self.row_op(r, pi, _nearest_quotient(a, p))
            if self.rows[r].get(pj):
                clean = False
        if not clean:
            return False
        for c in sorted(set(self.rows[pi]) - {pj}):
            a = self.rows[pi][c]
            self.col_op(c, pj, _nearest_quotient(a, p))
            if self.rows[pi].get(c):
                clean = False
        return clean

    def run(self) -> list[tuple[int, int, int]]:
        pivots = []
        while True:
            piv = self.next_pivot()
            if piv is None:
                break
            pi, pj = piv
            if self._reduce_line(pi, pj):
                pivots.append((pi, pj, self.rows[pi][pj]))
                del self.rows[pi]
                del self.colset[pj]
        return pivots

    # -- divisibility ---------------------------------------------------------

    def fix_divisibility(self, pivots: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
        piv = [list(p) for p in pivots]
        for t in range(len(piv)):
            for s in range(t + 1, len(piv)):
                a, b = piv[t][2], piv[s][2]
                if b % a == 0:
                    continue
                g, x, y = _xgcd(a, b)
                if self.transforms:
                    it, is_ = piv[t][0], piv[s][0]
                    jt, js = piv[t][1], piv[s][1]
                    self._mix(self.U, it, is_, x, y, -b // g, a // g)
                    self._mix(self.Ui, it, is_, a // g, b // g, -y, x)
                    self._mix(self.V, jt, js, 1, 1, -y * b // g, x * a // g)
                    self._mix(self.Vi, jt, js, x * a // g, y * b // g, -1, 1)
                piv[t][2] = g
                piv[s][2] = a * b // g
        return [tuple(p) for p in piv]

    @staticmethod
    def _mix(store, k1, k2, a11, a12, a21, a22):
        """(v1, v2) <- (a11 v1 + a12 v2, a21 v1 + a22 v2) on stored vectors."""
        v1 = store.get(k1, {})
        v2 = store.get(k2, {})
        keys = set(v1) | set(v2)
        n1, n2 = {}, {}
        for k in keys:
            x, y = v1.get(k, 0), v2.get(k, 0)
            u = a11 * x + a12 * y
            w = a21 * x + a22 * y
            if u:
                n1[k] = u
            if w:
                n2[k] = w
        store[k1] = n1
        store[k2] = n2


def smith_normal_form(A: IntegerMatrix, transforms: bool = True) -> SNFResult:
    """Smith normal form of A; with ``transforms`` also U, V and inverses."""
    elim = _Eliminator(A, transforms)
    pivots = elim.fix_divisibility(elim.run())
    m, n = A.rows, A.cols
    diag = []
    row_order = [p[0] for p in pivots]
    col_order = [p[1] for p in pivots]
    used_r, used_c = set(row_order), set(col_order)
    row_order += [i for i in range(m) if i not in used_r]
    col_order += [j for j in range(n) if j not in used_c]
    flips = set()
    for t, (i, j, d) in enumerate(pivots):
        if d < 0:
            flips.add(i)
            d = -d
        diag.append(d)
    S = IntegerMatrix.diagonal(diag, m, n)
    if not transforms:
        return SNFResult(S, None, None, None, None, tuple(diag))

    U_data, Ui_data, V_data, Vi_data = {}, {}, {}, {}
    for t, i in enumerate(row_order):
        sgn = -1 if i in flips else 1
        for k, v in elim.U.get(i, {}).items():
            U_data.setdefault(t, {})[k] = sgn * v
        for k, v in elim.Ui.get(i, {}).items():
            Ui_data.setdefault(k, {})[t] = sgn * v
    for t, j in enumerate(col_order):
        for k, v in elim.V.get(j, {}).items():
            V_data.setdefault(k, {})[t] = v
        for k, v in elim.Vi.get(j, {}).items():
            Vi_data.setdefault(t, {})[k] = v
    return SNFResult(
        S,
        IntegerMatrix(m, m, U_data),
        IntegerMatrix(n, n, V_data),
        IntegerMatrix(m, m, Ui_data),
        IntegerMatrix(n, n, Vi_data),
        tuple(diag),
    )


def invariant_factors(A: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form (no transforms)."""
    return smith_normal_form(A, transforms=False).diagonal
