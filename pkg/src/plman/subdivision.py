"""Barycentric subdivision and dual cones.

A vertex of sd(K) is labeled by its carrier, the face of K it is the
barycenter of, so the carrier map is the identity on labels.  A simplex
of sd(K) is a chain of faces c0 < c1 < ... under inclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex import SimplicialComplex, empty_complex, token_key


@dataclass(frozen=True)
class SubdividedComplex:
    complex: SimplicialComplex
    original: SimplicialComplex

    def carrier(self, vertex) -> tuple:
        """Face of the original complex whose barycenter ``vertex`` is."""
        if vertex not in self.complex._vindex:
            raise KeyError(vertex)
        return vertex


def _flag_complex(chains: list[tuple[tuple, ...]]) -> SimplicialComplex:
    """Trusted construction from maximal chains of token-tuple faces."""
    labels = sorted({c for chain in chains for c in chain}, key=token_key)
    index = {c: i for i, c in enumerate(labels)}
    facets = {tuple(sorted(index[c] for c in chain)) for chain in chains}
    return SimplicialComplex(labels, facets)


def _chains_above(base: tuple[int, ...], facet: tuple[int, ...]):
    """All maximal chains base = c0 < c1 < ... < facet, as int-tuple faces."""
    rest = [v for v in facet if v not in base]
    for order in itertools.permutations(rest):
        chain = [tuple(base)] if base else []
        current = set(base)
        for v in order:
            current.add(v)
            chain.append(tuple(sorted(current)))
        yield chain


def barycentric_subdivision(K: SimplicialComplex) -> SubdividedComplex:
    chains = []
    for f in K.facets:
        for chain in _chains_above((), f):
            chains.append(tuple(K._tokens(c) for c in chain))
    if not chains:
        return SubdividedComplex(empty_complex(), K)
    return SubdividedComplex(_flag_complex(chains), K)


@dataclass(frozen=True)
class DualCone:
    base: tuple
    cone_complex: SimplicialComplex
    link_part: SimplicialComplex

    @property
    def apex(self) -> tuple:
        return self.base

    @property
    def dim(self) -> int:
        return self.cone_complex.dim


def dual_cone(K: SimplicialComplex, sigma) -> DualCone:
    """Simplices of sd(K) meeting sigma exactly in its barycenter (closed)."""
    base = K._ids(K.canonical(sigma))
    chains = []
    for f in K.facets_containing(sigma):
        for chain in _chains_above(base, f):
            chains.append(tuple(K._tokens(c) for c in chain))
    cone_complex = _flag_complex(chains)
    base_tokens = K._tokens(base)
    tails = [c[1:] for c in chains if len(c) > 1]
    link_part = _flag_complex(tails) if tails else empty_complex()
    return DualCone(base_tokens, cone_complex, link_part)


def dual_incidence_matrix(K: SimplicialComplex, k: int):
    """Rows: k-simplices s; columns: dual cones D(t) of k-simplices t.

    Entry = number of vertices of sd(K) shared by sd(s) and D(t), that is
    faces r of s with t contained in r.  Both subcomplexes are full, so
    this counts the points of s meeting D(t).
    """
    from .homology.matrix import IntegerMatrix
    faces = K._faces.get(k, ())
    index = K._index.get(k, {})
    data: dict[int, dict[int, int]] = {}
    for i, s in enumerate(faces):
        for r in range(k + 1, len(s) + 1):
            for rho in itertools.combinations(s, r):
                for t in itertools.combinations(rho, k + 1):
                    row = data.setdefault(i, {})
                    row[index[t]] = row.get(index[t], 0) + 1
    return IntegerMatrix(len(faces), len(faces), data)


def is_permutation_matrix(M) -> bool:
    if M.rows != M.cols or len(M.data) != M.rows:
        return False
    cols = set()
    for row in M.data.values():
        if len(row) != 1 or set(row.values()) != {1}:
            return False
        cols.update(row)
    return len(cols) == M.cols
