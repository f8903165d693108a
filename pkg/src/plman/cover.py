"""Orientability and the orientation double cover of a pseudomanifold.

The cover has one facet (F, o) for every facet F of K and every
orientation o of F relative to sorted vertex order.  Two cover facets are
glued along a ridge when their orientations induce opposite orientations
on it.  Vertex tokens of the cover are ``(v, sheet)``; sheet 0 of v is the
component of the lifted star of v that contains (F, s(F)) for the first
facet F at v, where s is the orientation found by propagation from the
first facet of K.  The canonical orientation of a cover facet (F, o) is o.
Sorting cover tokens sorts by base vertex first, so o is also the sign of
the cover facet relative to its own sorted order.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .complex import SimplicialComplex, build_complex
from .errors import NotAPseudomanifoldError


def _ridge_sign(facet: tuple[int, ...], removed: int) -> int:
    """Incidence number [F : F - v] = (-1)^(position of v)."""
    return -1 if facet.index(removed) % 2 else 1


def _ridges(K: SimplicialComplex):
    table: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for fi, f in enumerate(K.facets):
        for v in f:
            r = tuple(u for u in f if u != v)
            table.setdefault(r, []).append((fi, v))
    return table


@dataclass(frozen=True)
class DoubleCover:
    base: SimplicialComplex
    total: SimplicialComplex
    orientable: bool
    # sheet_plus[fi][k]: sheet of the k-th vertex of base facet fi in the lift (F, +1)
    sheet_plus: tuple = field(repr=False)
    # coherent orientation of base facets when orientable, else the propagation guess
    facet_signs: tuple = field(repr=False)
    facet_pos: dict = field(repr=False, compare=False, default_factory=dict)

    # -- maps -------------------------------------------------------------

    @staticmethod
    def deck(token):
        v, s = token
        return (v, 1 - s)

    @staticmethod
    def project(token):
        return token[0]

    def _facet_position(self, facet_ids: tuple[int, ...]) -> int:
        try:
            return self.facet_pos[facet_ids]
        except KeyError:
            raise ValueError(f"{self.base._tokens(facet_ids)!r} is not a facet") from None

    def facet_lift(self, facet, orientation: int) -> tuple:
        """Tokens of the cover facet (F, orientation)."""
        ids = self.base._ids(facet)
        fi = self._facet_position(ids)
        sheets = self.sheet_plus[fi]
        if orientation == 1:
            return tuple((self.base.vertices[v], s) for v, s in zip(ids, sheets))
        return tuple((self.base.vertices[v], 1 - s) for v, s in zip(ids, sheets))

    def orientation_of(self, cover_facet) -> int:
        """Canonical orientation of a cover facet relative to its sorted order."""
        base_ids = self.base._ids([t[0] for t in cover_facet])
        fi = self._facet_position(base_ids)
        sheet_of = dict(zip(base_ids, self.sheet_plus[fi]))
        first = cover_facet[0] if isinstance(cover_facet, tuple) else list(cover_facet)[0]
        v = self.base._vindex[first[0]]
        return 1 if sheet_of[v] == first[1] else -1

    def lift(self, sigma, sheet: int = 0) -> tuple:
        """The lift of sigma whose first vertex sits on ``sheet``."""
        ids = self.base._ids(sigma)
        fi, o = self._anchor(ids, sheet)
        f = self.base.facets[fi]
        sheets = dict(zip(f, self.sheet_plus[fi]))
        return tuple((self.base.vertices[v], sheets[v] if o == 1 else 1 - sheets[v]) for v in ids)

    def _anchor(self, ids: tuple[int, ...], sheet: int) -> tuple[int, int]:
        f = self.base._facets_at(ids[0])
        key = set(ids)
        for cand in f:
            if key.issubset(cand):
                fi = self._facet_position(cand)
                s0 = self.sheet_plus[fi][cand.index(ids[0])]
                return fi, (1 if s0 == sheet else -1)
        raise NotAPseudomanifoldError("simplex has no facet")

    def local_orientation(self, sigma, facet) -> int:
        """Orientation o of F such that the cover facet (F, o) contains the sheet-0 lift of sigma."""
        ids = self.base._ids(sigma)
        fids = self.base._ids(facet)
        if not set(ids) <= set(fids):
            raise ValueError("facet does not contain sigma")
        fi = self._facet_position(fids)
        sheets = dict(zip(fids, self.sheet_plus[fi]))
        target = self.lift(sigma)
        plus = tuple((self.base.vertices[v], sheets[v]) for v in ids)
        return 1 if plus == target else -1

    def chosen_lift_sheets(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Sheets of the lift of every simplex whose first vertex is on sheet 0.

        Keys are simplices of the base as vertex-id tuples; cached.
        """
        cache = self.__dict__.get("_lift_cache")
        if cache is not None:
            return cache
        out: dict[tuple[int, ...], tuple[int, ...]] = {}
        for f in self.base.facets:
            sheets = self.sheet_plus[self.facet_pos[f]]
            for r in range(1, len(f) + 1):
                for combo in itertools.combinations(range(len(f)), r):
                    s = tuple(f[i] for i in combo)
                    if s in out:
                        continue
                    sh = tuple(sheets[i] for i in combo)
                    out[s] = sh if sh[0] == 0 else tuple(1 - x for x in sh)
        object.__setattr__(self, "_lift_cache", out)
        return out

    def sheet_zero_facets(self) -> list[tuple]:
        return [self.facet_lift(self.base._tokens(f), s) for f, s in zip(self.base.facets, self.facet_signs)]


def orientability_and_double_cover(K: SimplicialComplex) -> tuple[bool, DoubleCover]:
    if K.dim < 1:
        raise NotAPseudomanifoldError("double cover needs dimension >= 1")
    if not K.is_pure():
        raise NotAPseudomanifoldError("complex is not pure")
    ridges = _ridges(K)
    adjacency: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(K.facets))}
    for r, incident in ridges.items():
        if len(incident) > 2:
            raise NotAPseudomanifoldError(f"ridge {K._tokens(r)!r} lies in {len(incident)} facets")
        if len(incident) == 2:
            (f1, v1), (f2, v2) = incident
            rel = -_ridge_sign(K.facets[f1], v1) * _ridge_sign(K.facets[f2], v2)
            adjacency[f1].append((f2, rel, v1))
            adjacency[f2].append((f1, rel, v2))

    # propagate an orientation s over the facet graph
    signs = [0] * len(K.facets)
    signs[0] = 1
    orientable = True
    queue = deque([0])
    while queue:
        fi = queue.popleft()
        for fj, rel, _ in adjacency[fi]:
            want = rel * signs[fi]
            if signs[fj] == 0:
                signs[fj] = want
                queue.append(fj)
            elif signs[fj] != want:
                orientable = False
    if 0 in signs:
        raise NotAPseudomanifoldError("complex is not strongly connected")

    # sheets: components of the lifted star of each vertex
    fpos = {f: i for i, f in enumerate(K.facets)}
    sheet_plus = [[None] * len(f) for f in K.facets]
    for v in range(len(K.vertices)):
        star = [fpos[f] for f in K._facets_at(v)]
        star_set = set(star)
        start = (star[0], signs[star[0]])
        comp = {start}
        queue = deque([start])
        while queue:
            fi, o = queue.popleft()
            for fj, rel, removed in adjacency[fi]:
                if fj not in star_set or removed == v:
                    continue
                node = (fj, rel * o)
                if node not in comp:
                    comp.add(node)
                    queue.append(node)
        for fi in star:
            in_plus = (fi, 1) in comp
            in_minus = (fi, -1) in comp
            if in_plus == in_minus:
                raise NotAPseudomanifoldError(
                    f"star of vertex {K.vertices[v]!r} is not orientable or not strongly connected"
                )
            sheet_plus[fi][K.facets[fi].index(v)] = 0 if in_plus else 1

    sheet_plus_t = tuple(tuple(s) for s in sheet_plus)
    total_facets = []
    for f, sheets in zip(K.facets, sheet_plus_t):
        plus = [(K.vertices[v], s) for v, s in zip(f, sheets)]
        minus = [(K.vertices[v], 1 - s) for v, s in zip(f, sheets)]
        total_facets.extend([plus, minus])

    total = build_complex(total_facets)
    return orientable, DoubleCover(K, total, orientable, sheet_plus_t, tuple(signs), fpos)
