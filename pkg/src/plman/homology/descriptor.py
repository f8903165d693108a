"""Finitely generated abelian groups as free rank plus torsion."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class GroupDescriptor:
    """Z^free_rank + Z/t1 + Z/t2 + ... with t1 | t2 | ..."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    note: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(int(x) for x in self.torsion)
        if any(x <= 1 for x in t):
            raise ValueError("torsion coefficients must exceed 1")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, generators: int, diagonal) -> "GroupDescriptor":
        """Z^generators modulo a diagonal relation block (Smith invariants)."""
        diagonal = [abs(d) for d in diagonal if d]
        return cls(generators - len(diagonal), tuple(d for d in diagonal if d > 1))

    @classmethod
    def zero(cls) -> "GroupDescriptor":
        return cls(0, ())

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Order of the group, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        return cls(int(data["free_rank"]), tuple(data.get("torsion", ())))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"
