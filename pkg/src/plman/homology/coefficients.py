"""Coefficient systems: Z, Z/k, or a presented abelian group with a Z/2 twist.

A presented group is Z^a modulo the row span of an r x a relation matrix.
Internally the relations are kept as the a x r presentation matrix whose
columns are the relations.  The twist is an integer a x a involution T
that preserves the relation lattice; the generator of Z/2 acts by T.
"""

from __future__ import annotations

from typing import Sequence

from .descriptor import GroupDescriptor
from .lattice import solve
from .matrix import IntegerMatrix
from .snf import smith_normal_form


class CoefficientSystem:
    __slots__ = ("generators", "presentation", "twist", "name")

    def __init__(self, generators: int, relations: Sequence[Sequence[int]] = (),
                 twist: IntegerMatrix | None = None, name: str | None = None):
        if generators < 1:
            raise ValueError("a coefficient group needs at least one generator")
        rows = [list(r) for r in relations]
        for r in rows:
            if len(r) != generators:
                raise ValueError(f"relation {r} has {len(r)} entries, expected {generators}")
        self.generators = generators
        self.presentation = IntegerMatrix.from_dense(rows, generators).T if rows else IntegerMatrix(generators, 0)
        if twist is not None:
            if twist.shape != (generators, generators):
                raise ValueError("twist must be a square matrix on the generators")
            if twist @ twist != IntegerMatrix.identity(generators):
                raise ValueError("twist is not an involution")
            for j in range(self.presentation.cols):
                col = [self.presentation[i, j] for i in range(generators)]
                image = twist.apply(col)
                if self.presentation.cols and solve(self.presentation, image) is None:
                    raise ValueError("twist does not preserve the relations")
        self.twist = twist
        self.name = name or self._default_name()

    # -- constructors -------------------------------------------------------

    @classmethod
    def integers(cls, twisted: bool = False) -> "CoefficientSystem":
        return cls(1, (), IntegerMatrix.from_dense([[-1]]) if twisted else None,
                   "Z-" if twisted else "Z")

    @classmethod
    def mod(cls, k: int, twisted: bool = False) -> "CoefficientSystem":
        if k < 2:
            raise ValueError("modulus must be at least 2")
        return cls(1, [[k]], IntegerMatrix.from_dense([[-1]]) if twisted else None,
                   f"Z/{k}-" if twisted else f"Z/{k}")

    @classmethod
    def presented(cls, generators: int, relations: Sequence[Sequence[int]] = (),
                  twist: IntegerMatrix | str | None = None, name: str | None = None) -> "CoefficientSystem":
        if twist == "negate":
            twist = IntegerMatrix.diagonal([-1] * generators)
        return cls(generators, relations, twist, name)

    def untwisted(self) -> "CoefficientSystem":
        return CoefficientSystem(self.generators, self.relation_rows(), None, self.name.rstrip("-"))

    def negated(self) -> "CoefficientSystem":
        """Same group with the orientation twist g -> -g."""
        return CoefficientSystem(self.generators, self.relation_rows(),
                                 IntegerMatrix.diagonal([-1] * self.generators),
                                 self.name.rstrip("-") + "-")

    # -- queries ------------------------------------------------------------

    @property
    def is_twisted(self) -> bool:
        return self.twist is not None

    @property
    def is_free_cyclic(self) -> bool:
        """Plain integers: one generator, no relations."""
        return self.generators == 1 and self.presentation.cols == 0

    def relation_rows(self) -> list[list[int]]:
        P = self.presentation
        return [[P[i, j] for i in range(P.rows)] for j in range(P.cols)]

    def descriptor(self) -> GroupDescriptor:
        return GroupDescriptor.from_diagonal(self.generators, smith_normal_form(self.presentation, False).diagonal)

    def is_zero_element(self, vec: Sequence[int]) -> bool:
        if not any(vec):
            return True
        return self.presentation.cols > 0 and solve(self.presentation, list(vec)) is not None

    def _default_name(self) -> str:
        if self.generators == 1 and self.presentation.cols == 0:
            return "Z"
        if self.generators == 1 and self.presentation.cols == 1:
            return f"Z/{abs(self.presentation[0, 0])}"
        return f"<{self.generators} | {self.presentation.cols}>"

    def __repr__(self):
        return f"CoefficientSystem({self.name})"

    def __eq__(self, other):
        if not isinstance(other, CoefficientSystem):
            return NotImplemented
        return (self.generators == other.generators and self.presentation == other.presentation
                and self.twist == other.twist)

    def __hash__(self):
        return hash((self.generators, tuple(map(tuple, self.relation_rows()))))


def parse_coefficients(spec: str) -> CoefficientSystem:
    """'z', 'z2', 'zk:<k>'; a trailing '-' requests the orientation twist."""
    text = spec.strip().lower()
    twisted = text.endswith("-")
    text = text.rstrip("-")
    if text == "z":
        return CoefficientSystem.integers(twisted)
    if text == "z2":
        return CoefficientSystem.mod(2, twisted)
    if text.startswith("zk:"):
        try:
            k = int(text[3:])
        except ValueError:
            raise ValueError(f"bad modulus in coefficient spec {spec!r}") from None
        return CoefficientSystem.mod(k, twisted)
    raise ValueError(f"unknown coefficient spec {spec!r}")
