"""Finite group presentations and the edge-path presentation of a complex."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from ..complex import SimplicialComplex
from ..errors import DisconnectedComplexError
from ..homology.descriptor import GroupDescriptor
from ..homology.matrix import IntegerMatrix
from ..homology.snf import smith_normal_form

Word = tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    """Generators 1..n; relators are words of signed generator numbers."""

    generators: int
    relators: tuple[Word, ...]
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"relator {r} uses an unknown generator")

    def exponent_matrix(self) -> IntegerMatrix:
        """Relators x generators matrix of exponent sums."""
        data: dict[int, dict[int, int]] = {}
        for i, r in enumerate(self.relators):
            row: dict[int, int] = {}
            for x in r:
                g = abs(x) - 1
                row[g] = row.get(g, 0) + (1 if x > 0 else -1)
            data[i] = row
        return IntegerMatrix(len(self.relators), self.generators, data)

    def abelianization(self) -> GroupDescriptor:
        if not self.relators:
            return GroupDescriptor(self.generators, ())
        diag = smith_normal_form(self.exponent_matrix(), transforms=False).diagonal
        return GroupDescriptor.from_diagonal(self.generators, diag)

    def is_empty(self) -> bool:
        return self.generators == 0 and not any(self.relators)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def to_json(self) -> dict:
        return {"generators": self.generators, "relators": [list(r) for r in self.relators]}


def edge_path_presentation(K: SimplicialComplex) -> GroupPresentation:
    """Edge-path group: non-tree edges as generators, one relator per triangle.

    The spanning tree is grown breadth first from the first vertex,
    visiting neighbours in sorted order.  An edge (a, b) with a < b is read
    from a to b.
    """
    if K.is_empty():
        raise DisconnectedComplexError("empty complex has no fundamental group")
    n = len(K.vertices)
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in K._faces.get(1, ()):
        adj[a].append(b)
        adj[b].append(a)
    tree: set[tuple[int, int]] = set()
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in sorted(adj[v]):
            if u not in seen:
                seen.add(u)
                tree.add((min(u, v), max(u, v)))
                queue.append(u)
    if len(seen) != n:
        raise DisconnectedComplexError("complex is not connected")
    gen: dict[tuple[int, int], int] = {}
    labels = []
    for e in K._faces.get(1, ()):
        if e not in tree:
            gen[e] = len(gen) + 1
            labels.append(K._tokens(e))

    def letter(a: int, b: int) -> list[int]:
        g = gen.get((a, b))
        return [g] if g else []

    relators = []
    for a, b, c in K._faces.get(2, ()):
        word = letter(a, b) + letter(b, c) + [-x for x in letter(a, c)]
        relators.append(tuple(word))
    return GroupPresentation(len(gen), tuple(relators), tuple(labels))
