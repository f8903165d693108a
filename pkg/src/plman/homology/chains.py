"""Chain and cochain complexes with coefficients, and their homology.

A complex over a coefficient system with a generators stores, per degree,
an integer matrix on the basis (simplices or dual cones) and tensors it
with the coefficients on demand.  Vectors are flat lists indexed by
``basis_position * a + generator``.

With a twist T the differential is ``kron(P, I) + kron(Q, T)`` where Q
collects the incidences that pass through the deck transformation.
Homology with presented coefficients is the subquotient

    {x : d x in R_target} / (im d_in + R_here)

computed with Smith forms, never by classifying the coefficient group
first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..complex import SimplicialComplex
from ..errors import NotACocycleError
from .coefficients import CoefficientSystem
from .descriptor import GroupDescriptor
from .lattice import Subquotient, image_basis, kernel_basis
from .matrix import IntegerMatrix, hstack, kron
from .snf import invariant_factors


@dataclass
class ChainComplexData:
    """Graded free complex tensored with a coefficient system.

    ``step`` is -1 for chain complexes and +1 for cochain complexes;
    ``plain[d]`` maps degree d to degree d + step, and ``through_deck[d]``
    holds the incidences that pick up the twist.
    """

    coeffs: CoefficientSystem
    step: int
    labels: dict[int, list]
    plain: dict[int, IntegerMatrix]
    through_deck: dict[int, IntegerMatrix] = field(default_factory=dict)
    basis: str = "simplices"
    _diff: dict = field(default_factory=dict, repr=False)
    _sq: dict = field(default_factory=dict, repr=False)
    _pos: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.labels)

    def rank(self, d: int) -> int:
        return len(self.labels.get(d, ()))

    def width(self, d: int) -> int:
        """Length of a coefficient vector in degree d."""
        return self.rank(d) * self.coeffs.generators

    def position(self, d: int, label) -> int:
        table = self._pos.get(d)
        if table is None:
            table = self._pos[d] = {lab: i for i, lab in enumerate(self.labels.get(d, ()))}
        return table[label]

    # -- differentials --------------------------------------------------------

    def basis_map(self, d: int) -> IntegerMatrix:
        """Untensored map from degree d (plain plus deck parts added)."""
        P = self.plain.get(d)
        if P is None:
            return IntegerMatrix(self.rank(d + self.step), self.rank(d))
        Q = self.through_deck.get(d)
        return P + Q if Q is not None else P

    def differential(self, d: int) -> IntegerMatrix:
        if d in self._diff:
            return self._diff[d]
        a = self.coeffs.generators
        rows, cols = self.width(d + self.step), self.width(d)
        P = self.plain.get(d)
        if P is None or rows == 0 or cols == 0:
            M = IntegerMatrix(rows, cols)
        elif a == 1 and not self.coeffs.is_twisted:
            M = P
        else:
            M = kron(P, IntegerMatrix.identity(a))
            Q = self.through_deck.get(d)
            if Q is not None and not Q.is_zero():
                T = self.coeffs.twist if self.coeffs.twist is not None else IntegerMatrix.identity(a)
                M = M + kron(Q, T)
        self._diff[d] = M
        return M

    def relations(self, d: int) -> IntegerMatrix:
        R = self.coeffs.presentation
        if R.cols == 0:
            return IntegerMatrix(self.width(d), 0)
        return kron(IntegerMatrix.identity(self.rank(d)), R)

    def apply(self, d: int, vector: Sequence[int]) -> list[int]:
        return self.differential(d).apply(list(vector))

    def is_zero_vector(self, d: int, vector: Sequence[int]) -> bool:
        """Is the vector zero in C_d tensor A (modulo relations)?"""
        a = self.coeffs.generators
        for s in range(self.rank(d)):
            if not self.coeffs.is_zero_element(vector[s * a:(s + 1) * a]):
                return False
        return True

    def check_dd_zero(self) -> bool:
        for d in self.degrees:
            nxt = d + self.step
            if nxt not in self.labels or nxt + self.step not in self.labels:
                continue
            if not (self.differential(nxt) @ self.differential(d)).is_zero():
                return False
        return True

    # -- homology -------------------------------------------------------------

    def subquotient(self, d: int) -> Subquotient:
        if d in self._sq:
            return self._sq[d]
        n = self.width(d)
        out = self.differential(d)
        incoming = self.differential(d - self.step) if (d - self.step) in self.labels else IntegerMatrix(n, 0)
        if self.coeffs.presentation.cols == 0:
            Z = kernel_basis(out)
            B = incoming
        else:
            R_target = self.relations(d + self.step)
            if out.rows == 0:
                Z = IntegerMatrix.identity(n)
            else:
                K = kernel_basis(hstack([out, -R_target]) if R_target.cols else out)
                Z = image_basis(K.submatrix(range(n), range(K.cols)))
            B = hstack([incoming, self.relations(d)]) if incoming.cols else self.relations(d)
        sq = Subquotient(Z, B)
        self._sq[d] = sq
        return sq

    def homology(self, d: int) -> GroupDescriptor:
        if d not in self.labels:
            return GroupDescriptor.zero()
        if self.coeffs.is_free_cyclic and not self.coeffs.is_twisted:
            return self._integral_homology(d)
        return self.subquotient(d).descriptor

    def _integral_homology(self, d: int) -> GroupDescriptor:
        """Ranks and invariant factors only; no transforms needed."""
        out = self.differential(d)
        r_out = len(invariant_factors(out)) if out.rows and out.cols else 0
        if (d - self.step) in self.labels:
            inc = invariant_factors(self.differential(d - self.step))
        else:
            inc = ()
        free = self.rank(d) - r_out - len(inc)
        return GroupDescriptor(free, tuple(x for x in inc if x > 1))

    def is_cycle(self, d: int, vector: Sequence[int]) -> bool:
        image = self.apply(d, vector)
        if not any(image):
            return True
        if self.coeffs.presentation.cols == 0:
            return False
        return self.is_zero_vector(d + self.step, image)

    def class_of(self, d: int, vector: Sequence[int]) -> "ClassHandle":
        vector = list(vector)
        if len(vector) != self.width(d):
            raise ValueError(f"vector length {len(vector)} does not match degree {d} width {self.width(d)}")
        if not self.is_cycle(d, vector):
            raise NotACocycleError(f"degree {d} element is not a {'cocycle' if self.step > 0 else 'cycle'}")
        sq = self.subquotient(d)
        return ClassHandle(self, d, sq.coordinates(vector), sq.descriptor, sq.canonical(vector))

    def bounding_witness(self, d: int, vector: Sequence[int]) -> tuple[bool, list[int] | None]:
        """Decide whether vector is a (co)boundary modulo relations.

        The witness w lives in degree d - step and satisfies
        differential(w) = vector modulo the coefficient relations.
        """
        vector = list(vector)
        if not self.is_cycle(d, vector):
            raise NotACocycleError(f"degree {d} element is not closed")
        sq = self.subquotient(d)
        sol = sq.boundary_witness(vector)
        if sol is None:
            return False, None
        prev = self.width(d - self.step) if (d - self.step) in self.labels else 0
        return True, sol[:prev]


@dataclass(frozen=True)
class ClassHandle:
    """A (co)homology class: Smith coordinates in the group of its degree."""

    complex: ChainComplexData = field(repr=False, compare=False)
    degree: int
    coordinates: tuple[int, ...]
    group: GroupDescriptor
    representative: list = field(repr=False, compare=False, default_factory=list)

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": self.group.to_json(), "coordinates": list(self.coordinates)}


# -- simplicial complexes ---------------------------------------------------------


def boundary_matrix(K: SimplicialComplex, d: int) -> IntegerMatrix:
    """Integral boundary map C_d -> C_{d-1} in the sorted simplex bases."""
    faces = K._faces.get(d, ())
    if d == 0:
        return IntegerMatrix(0, len(faces))
    index = K._index.get(d - 1, {})
    data: dict[int, dict[int, int]] = {}
    for j, s in enumerate(faces):
        for k in range(len(s)):
            data.setdefault(index[s[:k] + s[k + 1:]], {})[j] = -1 if k % 2 else 1
    return IntegerMatrix(len(index), len(faces), data)


def _twisted_parts(K: SimplicialComplex, cover, d: int) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Split the boundary of the chosen lifts into same-lift and deck-image faces."""
    faces = K._faces.get(d, ())
    index = K._index.get(d - 1, {})
    lifts = cover.chosen_lift_sheets()
    same: dict[int, dict[int, int]] = {}
    deck: dict[int, dict[int, int]] = {}
    for j, s in enumerate(faces):
        sheets = lifts[s]
        for k in range(len(s)):
            face = s[:k] + s[k + 1:]
            fs = sheets[:k] + sheets[k + 1:]
            target = same if fs == lifts[face] else deck
            target.setdefault(index[face], {})[j] = -1 if k % 2 else 1
    return IntegerMatrix(len(index), len(faces), same), IntegerMatrix(len(index), len(faces), deck)


def simplicial_chain_complex(K: SimplicialComplex, coeffs: CoefficientSystem | None = None,
                             cover=None, cochains: bool = False) -> ChainComplexData:
    """Simplicial (co)chain complex of K; twisted coefficients use the double cover."""
    coeffs = coeffs or CoefficientSystem.integers()
    if coeffs.is_twisted and cover is None:
        from ..cover import orientability_and_double_cover
        _, cover = orientability_and_double_cover(K)
    labels = {d: K.faces(d) for d in range(K.dim + 1)}
    plain: dict[int, IntegerMatrix] = {}
    deck: dict[int, IntegerMatrix] = {}
    for d in range(1, K.dim + 1):
        if coeffs.is_twisted:
            P, Q = _twisted_parts(K, cover, d)
        else:
            P, Q = boundary_matrix(K, d), None
        if cochains:
            plain[d - 1] = P.T
            if Q is not None:
                deck[d - 1] = Q.T
        else:
            plain[d] = P
            if Q is not None:
                deck[d] = Q
    return ChainComplexData(coeffs, 1 if cochains else -1, labels, plain, deck)


def homology(K: SimplicialComplex, d: int, coeffs: CoefficientSystem | None = None) -> GroupDescriptor:
    """H_d(K; coeffs); out-of-range degrees give the zero group."""
    if d < 0 or d > K.dim:
        return GroupDescriptor.zero()
    return simplicial_chain_complex(K, coeffs).homology(d)


def cohomology(K: SimplicialComplex, d: int, coeffs: CoefficientSystem | None = None) -> GroupDescriptor:
    if d < 0 or d > K.dim:
        return GroupDescriptor.zero()
    return simplicial_chain_complex(K, coeffs, cochains=True).homology(d)


def homology_list(K: SimplicialComplex, coeffs: CoefficientSystem | None = None) -> list[GroupDescriptor]:
    C = simplicial_chain_complex(K, coeffs)
    return [C.homology(d) for d in range(K.dim + 1)]


def reduced_homology_list(K: SimplicialComplex) -> list[GroupDescriptor]:
    """Reduced integral homology in degrees 0..dim (empty complex: all zero)."""
    if K.is_empty():
        return []
    out = homology_list(K)
    out[0] = GroupDescriptor(out[0].free_rank - 1, out[0].torsion)
    return out


def twisted_homology(cover, d: int, A: CoefficientSystem) -> GroupDescriptor:
    """H_d of the cover chains tensored over Z[Z/2] with A."""
    K = cover.base
    if not A.is_twisted:
        g = homology(K, d, A)
        return GroupDescriptor(g.free_rank, g.torsion, note="untwisted coefficients: ordinary homology")
    if d < 0 or d > K.dim:
        return GroupDescriptor.zero()
    return simplicial_chain_complex(K, A, cover).homology(d)


def class_of(C: ChainComplexData, d: int, vector: Sequence[int]) -> ClassHandle:
    return C.class_of(d, vector)


def is_coboundary(C: ChainComplexData, d: int, vector: Sequence[int]) -> tuple[bool, list[int] | None]:
    return C.bounding_witness(d, vector)
