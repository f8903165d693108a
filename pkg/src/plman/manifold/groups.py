"""Small finite groups as permutation groups.

Products compose right to left: (p * q)(i) = p[q[i]].  Every group gets
a multiplication table over an element enumeration fixed by breadth
first closure from its generators, so searches are deterministic.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import cached_property
from typing import Sequence

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def closure(gens: Sequence[Perm], degree: int) -> list[Perm]:
    ident = identity_perm(degree)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


class PermutationGroup:
    def __init__(self, name: str, degree: int, generators: Sequence[Perm]):
        self.name = name
        self.degree = degree
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{name}: generator is not a permutation of degree {degree}")

    @cached_property
    def elements(self) -> list[Perm]:
        return closure(self.generators, self.degree)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @cached_property
    def table(self) -> list[list[int]]:
        els, idx = self.elements, self.index
        return [[idx[compose(a, b)] for b in els] for a in els]

    @cached_property
    def inverses(self) -> list[int]:
        idx = self.index
        return [idx[inverse(p)] for p in self.elements]

    @cached_property
    def class_representatives(self) -> list[int]:
        """Least element index of every conjugacy class."""
        t, inv = self.table, self.inverses
        seen: set[int] = set()
        reps = []
        for x in range(self.order):
            if x in seen:
                continue
            reps.append(x)
            for g in range(self.order):
                seen.add(t[t[g][x]][inv[g]])
        return reps

    @cached_property
    def abelianization_order(self) -> int:
        t, inv = self.table, self.inverses
        comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(self.order) for b in range(self.order)}
        return self.order // len(self.subgroup(comms))

    def subgroup(self, gens) -> set[int]:
        t = self.table
        seen = {0}
        queue = deque([0])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[g][x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def __repr__(self):
        return f"PermutationGroup({self.name})"


# -- constructions ---------------------------------------------------------


def cyclic(n: int) -> PermutationGroup:
    return PermutationGroup(f"C{n}", n, [tuple((i + 1) % n for i in range(n))])


def dihedral(n: int) -> PermutationGroup:
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return PermutationGroup(f"D{2 * n}", n, [r, s])


def dicyclic(n: int) -> PermutationGroup:
    """Order 4n: a of order 2n, x^2 = a^n, x a x^-1 = a^-1 (regular action)."""
    m = 2 * n
    elems = [(k, e) for e in (0, 1) for k in range(m)]
    pos = {g: i for i, g in enumerate(elems)}

    def mul(g, h):
        (k, e), (l, f) = g, h
        if e == 0:
            return ((k + l) % m, f)
        k2 = (k - l) % m
        if f == 0:
            return (k2, 1)
        return ((k2 + n) % m, 0)

    a, x = (1, 0), (0, 1)
    gens = [tuple(pos[mul(g, h)] for h in elems) for g in (a, x)]
    name = "Q8" if n == 2 else f"Dic{4 * n}"
    return PermutationGroup(name, 4 * n, gens)


def alternating(n: int) -> PermutationGroup:
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    if n > 3:
        cyc = list(range(1, n)) + [0] if n % 2 else [0] + list(range(2, n)) + [1]
        gens.append(tuple(cyc))
    return PermutationGroup(f"A{n}", n, gens)


def symmetric(n: int) -> PermutationGroup:
    return PermutationGroup(f"S{n}", n, [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])])


def _matrix_group(name: str, p: int, mats) -> PermutationGroup:
    """Action of 2x2 matrices over F_p on the nonzero vectors."""
    vecs = [v for v in itertools.product(range(p), repeat=2) if v != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in mats:
        gens.append(tuple(pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs))
    return PermutationGroup(name, len(vecs), gens)


def special_linear(p: int) -> PermutationGroup:
    return _matrix_group(f"SL(2,{p})", p, [((1, 1), (0, 1)), ((0, p - 1), (1, 0))])


def general_linear(p: int) -> PermutationGroup:
    g = next(x for x in range(2, p) if all(pow(x, k, p) != 1 for k in range(1, p - 1)))
    return _matrix_group(f"GL(2,{p})", p, [((1, 1), (0, 1)), ((0, p - 1), (1, 0)), ((g, 0), (0, 1))])


def catalog(bound: int = 120) -> list[PermutationGroup]:
    """Noncyclic catalog groups of order at most ``bound``, by increasing order.

    Cyclic quotients are read off the abelianization instead.  The list
    holds every nontrivial perfect group of order at most 120 (A5 and
    SL(2,5)), which is what matters for groups with trivial abelianization.
    """
    groups: list[tuple[int, str, object]] = []

    def add(order, name, make):
        if order <= bound:
            groups.append((order, name, make))

    for n in range(3, bound // 2 + 1):
        add(2 * n, f"D{2 * n}", lambda n=n: dihedral(n))
    for n in range(2, bound // 4 + 1):
        add(4 * n, "Q8" if n == 2 else f"Dic{4 * n}", lambda n=n: dicyclic(n))
    add(12, "A4", lambda: alternating(4))
    add(24, "S4", lambda: symmetric(4))
    add(24, "SL(2,3)", lambda: special_linear(3))
    add(48, "GL(2,3)", lambda: general_linear(3))
    add(60, "A5", lambda: alternating(5))
    add(120, "S5", lambda: symmetric(5))
    add(120, "SL(2,5)", lambda: special_linear(5))
    groups.sort(key=lambda g: (g[0], g[1]))
    return [make() for _, _, make in groups]


def perfect_catalog(bound: int = 120) -> list[PermutationGroup]:
    names = {"A5", "SL(2,5)"}
    return [g for g in catalog(bound) if g.name in names]
