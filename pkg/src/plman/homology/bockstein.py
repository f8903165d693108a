"""Bockstein homomorphisms of short exact coefficient sequences.

A sequence 0 -> A -> B -> C -> 0 of presented groups is given by integer
matrices on generators: ``i`` (gens(B) x gens(A)) and ``j`` (gens(C) x
gens(B)).  The connecting map is computed at cochain level: lift x to a
B-cochain, take the coboundary, and divide back into A.

Functions taking ``K`` accept a simplicial complex (simplicial cochains)
or any callable mapping a coefficient system to a cochain complex, such
as the dual-cone cochains of a homology manifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..complex import SimplicialComplex
from ..errors import NoLiftPossibleError, NotACocycleError
from .chains import ChainComplexData, ClassHandle, simplicial_chain_complex
from .coefficients import CoefficientSystem
from .lattice import Solver, column_vector, image_basis, kernel_basis, solve
from .matrix import IntegerMatrix, hstack, kron, vstack


@dataclass(frozen=True)
class CoefficientSequence:
    A: CoefficientSystem
    B: CoefficientSystem
    C: CoefficientSystem
    i: IntegerMatrix
    j: IntegerMatrix

    def __post_init__(self):
        if self.i.shape != (self.B.generators, self.A.generators):
            raise ValueError("i has the wrong shape")
        if self.j.shape != (self.C.generators, self.B.generators):
            raise ValueError("j has the wrong shape")

    @classmethod
    def integral(cls, k: int) -> "CoefficientSequence":
        """0 -> Z --k--> Z -> Z/k -> 0."""
        return cls(CoefficientSystem.integers(), CoefficientSystem.integers(), CoefficientSystem.mod(k),
                   IntegerMatrix.from_dense([[k]]), IntegerMatrix.from_dense([[1]]))

    @classmethod
    def from_character(cls, B: CoefficientSystem, values: Sequence[int], k: int = 2) -> "CoefficientSequence":
        """0 -> ker(chi) -> B --chi--> Z/k -> 0 for chi given on generators.

        ker(chi) is presented on a basis of the lattice {x : chi(x) = 0 mod k}
        with the relations of B rewritten in that basis.  chi must be
        surjective unless it vanishes identically.
        """
        a = B.generators
        values = [int(v) % k for v in values]
        if len(values) != a:
            raise ValueError("character needs one value per generator")
        for rel in B.relation_rows():
            if sum(r * v for r, v in zip(rel, values)) % k:
                raise ValueError("character does not respect the relations")
        lattice = kernel_basis(IntegerMatrix.from_dense([values + [-k]]))
        G = image_basis(lattice.submatrix(range(a), range(lattice.cols)))
        rel_cols = []
        gsolver = Solver(G)
        for j in range(B.presentation.cols):
            x = gsolver.solve(column_vector(B.presentation, j))
            rel_cols.append(x)
        A_rows = [list(c) for c in rel_cols]
        A = CoefficientSystem(G.cols, A_rows, name=f"ker({B.name})")
        C = CoefficientSystem.mod(k)
        return cls(A, B.untwisted(), C, G, IntegerMatrix.from_dense([values]))

    @property
    def surjective(self) -> bool:
        """Is j onto C?"""
        P = hstack([self.j, self.C.presentation]) if self.C.presentation.cols else self.j
        return all(solve(P, [1 if r == g else 0 for r in range(self.C.generators)]) is not None
                   for g in range(self.C.generators))


@dataclass(frozen=True)
class BocksteinResult:
    handle: ClassHandle
    cocycle: list[int]
    lift: list[int]

    def is_zero(self) -> bool:
        return self.handle.is_zero()


def _blockwise_solve(M: IntegerMatrix, R: IntegerMatrix, vector: Sequence[int], n: int,
                     width: int) -> list[int] | None:
    """Solve M y_s + R z_s = v_s for every basis element s; return the y's."""
    system = hstack([M, R]) if R.cols else M
    solver = Solver(system)
    out = []
    rows = M.rows
    for s in range(n):
        part = list(vector[s * rows:(s + 1) * rows])
        if not any(part):
            out.extend([0] * width)
            continue
        sol = solver.solve(part)
        if sol is None:
            return None
        out.extend(sol[:width])
    return out


def _cochains(K, coeffs: CoefficientSystem) -> ChainComplexData:
    """Simplicial cochains of K, or K(coeffs) when K is a complex builder."""
    if isinstance(K, SimplicialComplex):
        return simplicial_chain_complex(K, coeffs, cochains=True)
    return K(coeffs)


def bockstein(K: SimplicialComplex, d: int, x: Sequence[int], seq: CoefficientSequence,
              complexes: dict | None = None) -> BocksteinResult:
    """beta(x) in H^{d+1}(K; A) for a C-valued d-cocycle x."""
    cache = complexes if complexes is not None else {}
    CC = cache.get("C") or _cochains(K, seq.C)
    CB = cache.get("B") or _cochains(K, seq.B)
    CA = cache.get("A") or _cochains(K, seq.A)
    x = list(x)
    if not CC.is_cycle(d, x):
        raise NotACocycleError("input is not a cocycle")
    n = CC.rank(d)
    lift = _blockwise_solve(seq.j, seq.C.presentation, x, n, seq.B.generators)
    if lift is None:
        raise NoLiftPossibleError("cochain does not lift along the coefficient surjection")
    dy = CB.apply(d, lift) if d + 1 in CB.labels else []
    w = _blockwise_solve(seq.i, seq.B.presentation, dy, CB.rank(d + 1), seq.A.generators)
    if w is None:
        raise AssertionError("coboundary of the lift does not come from A")
    if d + 1 not in CA.labels:
        w = []
    handle = CA.class_of(d + 1, w)
    return BocksteinResult(handle, w, lift)


def is_liftable(K: SimplicialComplex, d: int, x: Sequence[int], seq: CoefficientSequence,
                complexes: dict | None = None) -> tuple[bool, list[int] | None]:
    """Does the class of x come from H^d(K; B)?  Decided by one block solve.

    Unknowns: a B-cochain y, a C-cochain b of degree d - 1 and relation
    multipliers u, v with  delta y = R_B u  and  j y - x = delta b + R_C v.
    Returns the B-cocycle y when it exists.
    """
    cache = complexes if complexes is not None else {}
    CC = cache.get("C") or _cochains(K, seq.C)
    CB = cache.get("B") or _cochains(K, seq.B)
    x = list(x)
    if not CC.is_cycle(d, x):
        raise NotACocycleError("input is not a cocycle")
    nd = CC.rank(d)
    dB = CB.differential(d)
    RB = CB.relations(d + 1)
    J = kron(IntegerMatrix.identity(nd), seq.j)
    dC = CC.differential(d - 1) if d - 1 in CC.labels else IntegerMatrix(CC.width(d), 0)
    RC = CC.relations(d)
    wy, wu, wb, wv = J.cols, RB.cols, dC.cols, RC.cols
    top = hstack([dB, -RB, IntegerMatrix(dB.rows, wb + wv)])
    bottom = hstack([J, IntegerMatrix(J.rows, wu), -dC, -RC])
    system = vstack([top, bottom])
    rhs = [0] * dB.rows + x
    sol = solve(system, rhs)
    if sol is None:
        return False, None
    return True, sol[:wy]


def random_cocycle(C: ChainComplexData, d: int, rng, scale: int = 3) -> list[int]:
    """Random integer combination of cocycle generators plus a coboundary."""
    sq = C.subquotient(d)
    vec = [0] * C.width(d)
    for g in sq.generators():
        c = rng.randint(-scale, scale)
        if c:
            vec = [a + c * b for a, b in zip(vec, g)]
    if d - C.step in C.labels:
        w = [rng.randint(-scale, scale) for _ in range(C.width(d - C.step))]
        vec = [a + b for a, b in zip(vec, C.apply(d - C.step, w))]
    return vec


__all__ = ["CoefficientSequence", "BocksteinResult", "bockstein", "is_liftable", "random_cocycle"]
