"""Finite abstract simplicial complexes.

A complex is built from a list of facets and is immutable afterwards.
Vertices are arbitrary hashable tokens; internally each vertex gets an
integer index in canonical token order, and a simplex is a strictly
increasing tuple of those indices.  The public API speaks tokens: a
simplex is a tuple of tokens sorted by :func:`token_key`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

from .errors import (
    EmptyComplexError,
    FacetFileError,
    MalformedFacetError,
    MissingSimplexError,
    TokenCollisionError,
)

#: prefix for vertex tokens generated by cone/suspension; never used by parsers
RESERVED_PREFIX = "^"


def token_key(token):
    """Sort key giving a total order on mixed tokens.

    Digit-only strings and ints sort numerically before other strings;
    tuples (cover tokens) sort componentwise after both.
    """
    if isinstance(token, tuple):
        return (2, 0, tuple(token_key(t) for t in token))
    if isinstance(token, bool):
        raise MalformedFacetError(f"invalid vertex token {token!r}")
    if isinstance(token, int):
        return (0, token, str(token))
    if isinstance(token, str):
        if token.isdigit():
            return (0, int(token), token)
        return (1, 0, token)
    raise MalformedFacetError(f"unsupported vertex token {token!r}")


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` (entries must be distinct)."""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedSimplex:
    simplex: tuple
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("orientation sign must be +1 or -1")
        if not self.simplex:
            raise MalformedFacetError("simplex must be nonempty")

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1

    def reversed(self) -> "OrientedSimplex":
        return OrientedSimplex(self.simplex, -self.sign)


class SimplicialComplex:
    """Immutable finite abstract simplicial complex given by its facets.

    The empty complex (no simplices at all) is representable so that the
    link of a facet has a value; :func:`build_complex` still refuses empty
    input.
    """

    __slots__ = ("vertices", "_vindex", "facets", "_faces", "_index", "_hash", "_vstar")

    def __init__(self, vertices: Sequence[Hashable], facets: Iterable[tuple[int, ...]]):
        # trusted constructor: vertices canonical, facets are maximal sorted int tuples
        self.vertices = tuple(vertices)
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self.facets = tuple(sorted(set(facets), key=lambda f: (len(f), f)))
        faces: dict[int, set] = {}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                bucket = faces.setdefault(r - 1, set())
                bucket.update(itertools.combinations(f, r))
        self._faces = {d: tuple(sorted(s)) for d, s in sorted(faces.items())}
        self._index = {d: {s: i for i, s in enumerate(fs)} for d, fs in self._faces.items()}
        self._hash = None
        self._vstar = None

    # -- basic structure ---------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._faces) if self._faces else -1

    def is_empty(self) -> bool:
        return not self.facets

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._faces.get(d, ())) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def n_faces(self, d: int) -> int:
        return len(self._faces.get(d, ()))

    def faces(self, d: int) -> list[tuple]:
        """Simplices of dimension ``d`` as token tuples, in enumeration order."""
        return [self._tokens(s) for s in self._faces.get(d, ())]

    def simplices(self) -> list[tuple]:
        return [self._tokens(s) for d in self._faces for s in self._faces[d]]

    def facet_list(self) -> list[tuple]:
        return [self._tokens(f) for f in sorted(self.facets)]

    def index(self, simplex: Sequence) -> int:
        """Position of ``simplex`` within its dimension's enumeration."""
        key = self._ids(simplex)
        try:
            return self._index[len(key) - 1][key]
        except KeyError:
            raise MissingSimplexError(f"simplex {tuple(simplex)!r} is not in the complex") from None

    def __contains__(self, simplex) -> bool:
        try:
            key = self._ids(simplex)
        except MissingSimplexError:
            return False
        return key in self._index.get(len(key) - 1, {})

    def _ids(self, simplex: Sequence) -> tuple[int, ...]:
        try:
            ids = sorted(self._vindex[v] for v in simplex)
        except KeyError:
            raise MissingSimplexError(f"simplex {tuple(simplex)!r} is not in the complex") from None
        if not ids or len(set(ids)) != len(ids):
            raise MissingSimplexError(f"simplex {tuple(simplex)!r} is not in the complex")
        return tuple(ids)

    def _tokens(self, ids: Sequence[int]) -> tuple:
        return tuple(self.vertices[i] for i in ids)

    def canonical(self, simplex: Sequence) -> tuple:
        """Sorted token tuple of a simplex of this complex."""
        return self._tokens(self._ids(simplex))

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.facet_list()) == set(other.facet_list())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.facet_list()))
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f_vector={self.f_vector()})"

    # -- local structure ----------------------------------------------------

    def _facets_at(self, v: int) -> list[tuple[int, ...]]:
        if self._vstar is None:
            vstar: dict[int, list] = {}
            for f in self.facets:
                for u in f:
                    vstar.setdefault(u, []).append(f)
            self._vstar = vstar
        return self._vstar.get(v, [])

    def facets_containing(self, simplex: Sequence) -> list[tuple[int, ...]]:
        ids = self._ids(simplex)
        key = set(ids)
        return [f for f in self._facets_at(ids[0]) if key.issubset(f)]

    def link(self, simplex: Sequence) -> "SimplicialComplex":
        """{tau : tau disjoint from sigma, tau | sigma in K}; empty for a facet."""
        if simplex not in self:
            raise MissingSimplexError(f"simplex {tuple(simplex)!r} is not in the complex")
        key = set(self._ids(simplex))
        parts = [tuple(v for v in f if v not in key) for f in self.facets_containing(simplex)]
        return self._sub_from_ids([p for p in parts if p])

    def star(self, simplex: Sequence) -> "SimplicialComplex":
        """Closed star: closure of all simplices containing ``simplex``."""
        if simplex not in self:
            raise MissingSimplexError(f"simplex {tuple(simplex)!r} is not in the complex")
        return self._sub_from_ids(self.facets_containing(simplex))

    def subcomplex(self, simplices: Iterable[Sequence]) -> "SimplicialComplex":
        """Closure of the given simplices of this complex."""
        return self._sub_from_ids([self._ids(s) for s in simplices])

    def _sub_from_ids(self, id_facets: Sequence[tuple[int, ...]]) -> "SimplicialComplex":
        used = sorted({v for f in id_facets for v in f})
        remap = {v: i for i, v in enumerate(used)}
        facets = _maximal({tuple(remap[v] for v in f) for f in id_facets})
        return SimplicialComplex([self.vertices[v] for v in used], facets)

    def relabel(self, mapping) -> "SimplicialComplex":
        """Apply a vertex-token map (dict or callable); must be injective."""
        if isinstance(mapping, dict):
            new = [mapping.get(v, v) for v in self.vertices]
        else:
            new = [mapping(v) for v in self.vertices]
        if len(set(new)) != len(new):
            raise TokenCollisionError("relabeling is not injective")
        return build_complex([[new[i] for i in f] for f in self.facets])

    def one_skeleton_components(self) -> list[list[int]]:
        adj: dict[int, set] = {i: set() for i in range(len(self.vertices))}
        for a, b in self._faces.get(1, ()):
            adj[a].add(b)
            adj[b].add(a)
        seen: set[int] = set()
        comps = []
        for start in range(len(self.vertices)):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.one_skeleton_components()) <= 1


def _maximal(facets: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop sets contained in other sets."""
    unique = set(facets)
    sizes = sorted({len(f) for f in unique}, reverse=True)
    if len(sizes) <= 1:
        return sorted(unique)
    kept: list[tuple[int, ...]] = []
    covered: set[tuple[int, ...]] = set()
    for size in sizes:
        layer = [f for f in unique if len(f) == size and f not in covered]
        kept.extend(layer)
        for f in layer:
            for r in range(1, size):
                covered.update(itertools.combinations(f, r))
    return sorted(kept)


def build_complex(facet_list: Iterable[Sequence[Hashable]]) -> SimplicialComplex:
    """Close a facet list downward; absorbed facets are dropped."""
    raw = [list(f) for f in facet_list]
    if not raw:
        raise EmptyComplexError("facet list is empty")
    for f in raw:
        if not f:
            raise MalformedFacetError("empty facet")
        if len(set(f)) != len(f):
            raise MalformedFacetError(f"duplicate vertex in facet {f!r}")
    tokens = sorted({v for f in raw for v in f}, key=token_key)
    if len({token_key(t) for t in tokens}) != len(tokens):
        raise TokenCollisionError("vertex tokens collide under canonical ordering")
    index = {v: i for i, v in enumerate(tokens)}
    facets = _maximal(tuple(sorted(index[v] for v in f)) for f in raw)
    return SimplicialComplex(tokens, facets)


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex([], [])


# -- constructions ---------------------------------------------------------


def fresh_token(kind: str, avoid: Iterable[Hashable]) -> str:
    avoid = set(avoid)
    i = 0
    while f"{RESERVED_PREFIX}{kind}{i}" in avoid:
        i += 1
    return f"{RESERVED_PREFIX}{kind}{i}"


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join on disjoint vertex sets; either side may be empty."""
    clash = set(K.vertices) & set(L.vertices)
    if clash:
        raise TokenCollisionError(f"join operands share vertex tokens {sorted(clash, key=token_key)[:5]!r}")
    kf = K.facet_list() or [()]
    lf = L.facet_list() or [()]
    facets = [tuple(a) + tuple(b) for a in kf for b in lf]
    facets = [f for f in facets if f]
    if not facets:
        return empty_complex()
    return build_complex(facets)


def cone(K: SimplicialComplex, apex: Hashable | None = None) -> SimplicialComplex:
    if apex is None:
        apex = fresh_token("c", K.vertices)
    elif apex in K._vindex:
        raise TokenCollisionError(f"apex token {apex!r} already a vertex")
    return join(K, build_complex([[apex]]))


def suspension(K: SimplicialComplex, times: int = 1, poles: Sequence[Hashable] | None = None) -> SimplicialComplex:
    out = K
    for _ in range(times):
        if poles is not None and times == 1:
            north, south = poles
        else:
            north = fresh_token("n", out.vertices)
            south = fresh_token("s", out.vertices)
        for p in (north, south):
            if p in out._vindex:
                raise TokenCollisionError(f"pole token {p!r} already a vertex")
        out = join(build_complex([[north], [south]]), out)
    return out


def simplex(d: int, prefix: str = "") -> SimplicialComplex:
    """The full d-simplex on vertices 0..d (tokens as strings)."""
    return build_complex([[f"{prefix}{i}" for i in range(d + 1)]])


def sphere(d: int, prefix: str = "") -> SimplicialComplex:
    """Boundary of the (d+1)-simplex: a d-sphere on d+2 vertices."""
    verts = [f"{prefix}{i}" for i in range(d + 2)]
    return build_complex([[v for v in verts if v != skip] for skip in verts])


# -- facet-list text format -------------------------------------------------


def parse_facets(text: str, path=None) -> SimplicialComplex:
    """One facet per line, whitespace-separated tokens, ``#`` comment lines."""
    facets = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(set(tokens)) != len(tokens):
            raise FacetFileError(f"duplicate vertex in facet {tokens!r}", path, lineno)
        facets.append(tokens)
    if not facets:
        raise FacetFileError("no facets found", path)
    return build_complex(facets)


def read_facets(path) -> SimplicialComplex:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FacetFileError(f"cannot read file: {exc.strerror}", path) from None
    return parse_facets(text, path)


def format_facets(K: SimplicialComplex, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines += [" ".join(str(v) for v in f) for f in K.facet_list()]
    return "\n".join(lines) + "\n"
