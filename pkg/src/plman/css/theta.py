"""Models of the homology cobordism group and the Rokhlin character.

A ThetaModel is a presented abelian group whose generators are labels of
homology 3-spheres, together with rok values in Z/2.  Orientation reversal
acts by negation.  rok values are configuration data; the only value the
package can certify itself is rok(Poincare) = 1, from the E8 form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ..errors import MissingRokError, ModelLacksClassError
from ..homology.coefficients import CoefficientSystem

S3 = "S3"
POINCARE = "Poincare"

# Gram matrix of the E8 lattice (Dynkin diagram with the branch at node 5)
E8 = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)


def signature(matrix: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix by exact symmetric elimination."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] for row in matrix]
    for i in range(n):
        for j in range(n):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            # no nonzero diagonal entry: combine two rows to create one
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            continue
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / d
            if f:
                for k in active:
                    A[i][k] -= f * A[piv][k]
    return pos - neg


def e8_rokhlin() -> int:
    """sigma(E8)/8 mod 2, the Rokhlin invariant of the Poincare sphere."""
    sig = signature(E8)
    if sig % 8:
        raise AssertionError("E8 signature is not divisible by 8")
    return (sig // 8) % 2


@dataclass(frozen=True)
class ThetaModel:
    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...] = ()
    rok: tuple[int | None, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generator names")
        rok = tuple(self.rok) if self.rok else (None,) * len(gens)
        if len(rok) != len(gens):
            raise ValueError("one rok value per generator")
        rok = tuple(None if r is None else int(r) % 2 for r in rok)
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        for r in rels:
            if len(r) != len(gens):
                raise ValueError(f"relation {list(r)} has the wrong length")
            if all(v is not None for v, x in zip(rok, r) if x) and \
                    sum(x * (v or 0) for x, v in zip(r, rok)) % 2:
                raise ValueError(f"rok does not respect relation {list(r)}")
        if S3 in gens and rok[gens.index(S3)] not in (0, None):
            raise ValueError("the S3 class must have rok 0")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "rok", rok)

    # -- construction --------------------------------------------------------

    @classmethod
    def default(cls) -> "ThetaModel":
        """Free on the Poincare class, rok fixed by the E8 oracle."""
        return cls((POINCARE,), (), (e8_rokhlin(),))

    @classmethod
    def from_json(cls, data: dict) -> "ThetaModel":
        gens = data.get("generators", [])
        names = tuple(g["name"] for g in gens)
        rok = tuple(g.get("rok") for g in gens)
        rels = tuple(tuple(r) for r in data.get("relations", []))
        return cls(names, rels, rok)

    @classmethod
    def load(cls, path) -> "ThetaModel":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {
            "generators": [{"name": n, "rok": r} for n, r in zip(self.generators, self.rok)],
            "relations": [list(r) for r in self.relations],
        }

    def extended(self, name: str) -> "ThetaModel":
        """Add a free generator (rok unassigned)."""
        if name in self.generators:
            return self
        rels = tuple(r + (0,) for r in self.relations)
        return ThetaModel(self.generators + (name,), rels, self.rok + (None,))

    # -- queries --------------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise ModelLacksClassError(f"model has no generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.generators

    def coefficients(self, twisted: bool = False) -> CoefficientSystem:
        base = CoefficientSystem(len(self.generators), [list(r) for r in self.relations], name="Theta")
        return base.negated() if twisted else base

    def rok_values(self, needed: Sequence[int] | None = None) -> tuple[int, ...]:
        """rok on every generator; raises if a needed one is unassigned."""
        idx = range(len(self.generators)) if needed is None else needed
        missing = [self.generators[i] for i in idx if self.rok[i] is None]
        if missing:
            raise MissingRokError(f"rok is not assigned for {', '.join(missing)}")
        return tuple(r or 0 for r in self.rok)

    @property
    def rok_surjective(self) -> bool:
        return any(r for r in self.rok if r is not None)
