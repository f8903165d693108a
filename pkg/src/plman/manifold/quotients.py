"""Epimorphisms from finitely presented groups onto small finite groups.

Cyclic quotients come from the Smith form of the relator exponent matrix.
Noncyclic targets are searched by backtracking over generator images with
the first image restricted to conjugacy class representatives; a relator
is checked as soon as its last generator is assigned.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..homology.descriptor import GroupDescriptor
from ..homology.snf import smith_normal_form
from .groups import PermutationGroup, closure, compose, cyclic, identity_perm, inverse
from .presentation import GroupPresentation


@dataclass(frozen=True)
class Epimorphism:
    group: PermutationGroup
    images: tuple  # permutation image of generator k at position k - 1

    def to_json(self) -> dict:
        return {"group": self.group.name, "order": self.group.order, "degree": self.group.degree,
                "images": [list(p) for p in self.images]}


def evaluate(word, images, degree: int):
    acc = identity_perm(degree)
    for x in word:
        acc = compose(acc, images[x - 1] if x > 0 else inverse(images[-x - 1]))
    return acc


def verify_epimorphism(G: GroupPresentation, group: PermutationGroup, images) -> bool:
    """Relators map to the identity and the images generate the whole group."""
    images = [tuple(p) for p in images]
    if len(images) != G.generators:
        return False
    ident = identity_perm(group.degree)
    if any(evaluate(r, images, group.degree) != ident for r in G.relators):
        return False
    if not set(images) <= set(group.elements):
        return False
    return len(closure(images, group.degree)) == group.order


def cyclic_quotient(G: GroupPresentation, n: int) -> Epimorphism | None:
    """An epimorphism onto Z/n read off the abelianization, if one exists."""
    if G.generators == 0:
        return None
    if not G.relators:
        coords = [[1 if j == 0 else 0] for j in range(G.generators)]
        col = 0
        diag: tuple[int, ...] = ()
    else:
        res = smith_normal_form(G.exponent_matrix())
        diag = res.diagonal
        col = None
        for i in range(G.generators):
            d = diag[i] if i < len(diag) else 0
            if d == 0 or d % n == 0:
                col = i
                break
        if col is None:
            return None
        coords = [[res.V[j, col]] for j in range(G.generators)]
        col = 0
    target = cyclic(n)
    gen = target.generators[0]
    images = []
    for j in range(G.generators):
        k = coords[j][col] % n
        p = identity_perm(n)
        for _ in range(k):
            p = compose(gen, p)
        images.append(p)
    return Epimorphism(target, tuple(images))


def _prunable(group: PermutationGroup, ab: GroupDescriptor) -> bool:
    """True when the abelianization rules the group out as a quotient."""
    q = group.abelianization_order
    if q == 1 or ab.free_rank:
        return False
    m = 1
    for t in ab.torsion:
        m *= t
    p = 2
    while q > 1:
        if q % p == 0:
            if m % p:
                return True
            while q % p == 0:
                q //= p
        p += 1
    return False


def search_epimorphism(G: GroupPresentation, group: PermutationGroup, node_budget: int = 2_000_000):
    """Backtracking search; returns (Epimorphism | None, budget_exhausted)."""
    n = G.generators
    if n == 0:
        return None, False
    t, inv, order = group.table, group.inverses, group.order
    by_last: dict[int, list] = {k: [] for k in range(n)}
    for r in G.relators:
        if r:
            by_last[max(abs(x) for x in r) - 1].append(r)
    images = [0] * n
    nodes = 0

    def value(word) -> int:
        acc = 0
        for x in word:
            acc = t[acc][images[x - 1] if x > 0 else inv[images[-x - 1]]]
        return acc

    def rec(k: int):
        nonlocal nodes
        if k == n:
            if len(group.subgroup(images)) == order:
                return list(images)
            return None
        choices = group.class_representatives if k == 0 else range(order)
        for g in choices:
            nodes += 1
            if nodes > node_budget:
                raise _Budget
            images[k] = g
            if all(value(r) == 0 for r in by_last[k]):
                found = rec(k + 1)
                if found is not None:
                    return found
        return None

    try:
        found = rec(0)
    except _Budget:
        return None, True
    if found is None:
        return None, False
    return Epimorphism(group, tuple(group.elements[i] for i in found)), False


class _Budget(Exception):
    pass


def quotient_spectrum(G: GroupPresentation, catalog, bound: int, first_only: bool = False):
    """Epimorphisms onto cyclic and catalog groups of order <= bound.

    Returns (list of Epimorphism in increasing order, exhausted flag).
    """
    ab = G.abelianization()
    found: list[Epimorphism] = []
    exhausted = False
    cyclic_orders = []
    if ab.free_rank:
        cyclic_orders = list(range(2, bound + 1))
    elif ab.torsion:
        top = ab.torsion[-1]
        cyclic_orders = [m for m in range(2, bound + 1) if top % m == 0]
    candidates = [(m, f"C{m}", None) for m in cyclic_orders]
    candidates += [(g.order, g.name, g) for g in catalog if g.order <= bound]
    candidates.sort(key=lambda c: (c[0], c[1]))
    for order, name, group in candidates:
        if group is None:
            epi = cyclic_quotient(G, order)
        else:
            if _prunable(group, ab):
                continue
            epi, ex = search_epimorphism(G, group)
            exhausted = exhausted or ex
        if epi is not None:
            found.append(epi)
            if first_only:
                break
    return found, exhausted
