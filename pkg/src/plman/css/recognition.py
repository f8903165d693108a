"""Recognition of the homology 3-spheres appearing as links.

A link is first compared with the registered reference triangulations by
a simplicial isomorphism search; a match gives both the class and the
orientation sign relative to the reference.  Otherwise the link gets an
invariant profile (homology, simple-connectivity verdict, finite quotient
orders): verdict yes means the class of S3, anything else gets a fresh
label and is registered as a new reference with its own orientation.
Profiles are invariants, not complete, so distinct fresh labels may name
the same class.  That errs on the side of not conflating classes.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

from ..complex import SimplicialComplex, permutation_sign
from ..cover import orientability_and_double_cover
from ..errors import PreconditionError
from ..homology.chains import reduced_homology_list
from ..homology.descriptor import GroupDescriptor
from ..manifold.presentation import edge_path_presentation
from ..manifold.verdict import UNKNOWN, YES, Budgets, analyze_group
from .theta import POINCARE, S3

SPHERE3_HOMOLOGY = (GroupDescriptor(0), GroupDescriptor(0), GroupDescriptor(0), GroupDescriptor(1))


@dataclass(frozen=True)
class LinkClassLabel:
    name: str
    homology: tuple[str, ...]
    verdict: str
    quotient_orders: tuple[int, ...]

    @property
    def is_sphere(self) -> bool:
        return self.name == S3

    def to_json(self) -> dict:
        return {"name": self.name, "homology": list(self.homology), "verdict": self.verdict,
                "quotient_orders": list(self.quotient_orders)}


S3_LABEL = LinkClassLabel(S3, ("Z", "0", "0", "Z"), YES, ())
POINCARE_LABEL = LinkClassLabel(POINCARE, ("Z", "0", "0", "Z"), "no", (60, 120))


def _ridge_table(K: SimplicialComplex):
    table: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for f in K.facets:
        for i in range(len(f)):
            table.setdefault(f[:i] + f[i + 1:], []).append(f)
    return table


def _degrees(K: SimplicialComplex) -> list[int]:
    deg = [0] * len(K.vertices)
    for f in K.facets:
        for v in f:
            deg[v] += 1
    return deg


def find_isomorphism(L: SimplicialComplex, R: SimplicialComplex) -> dict[int, int] | None:
    """A vertex bijection (ids) carrying the facets of L onto those of R.

    Both complexes must be strongly connected pseudomanifolds of the same
    dimension; the map is grown across ridges from one seed facet.
    """
    if L.f_vector() != R.f_vector() or L.is_empty():
        return None
    dl, dr = _degrees(L), _degrees(R)
    if sorted(dl) != sorted(dr):
        return None
    tl, tr = _ridge_table(L), _ridge_table(R)
    rfacets = set(R.facets)
    seed = L.facets[0]
    seed_deg = [dl[v] for v in seed]
    for G in R.facets:
        if sorted(dr[w] for w in G) != sorted(seed_deg):
            continue
        for perm in itertools.permutations(G):
            if any(dl[v] != dr[w] for v, w in zip(seed, perm)):
                continue
            phi = _grow(seed, perm, tl, tr, rfacets, len(L.facets))
            if phi is not None:
                return phi
    return None


def _grow(seed, image, tl, tr, rfacets, nfacets) -> dict[int, int] | None:
    phi = dict(zip(seed, image))
    used = set(image)
    seen = {seed}
    stack = [seed]
    while stack:
        F = stack.pop()
        for i in range(len(F)):
            r = F[:i] + F[i + 1:]
            others = [x for x in tl[r] if x != F]
            if not others:
                continue
            F2 = others[0]
            v = next(x for x in F2 if x not in r)
            rimg = tuple(sorted(phi[x] for x in r))
            cands = [x for x in tr.get(rimg, ()) if x != tuple(sorted(phi[y] for y in F))]
            if len(cands) != 1:
                return None
            w = next(x for x in cands[0] if x not in rimg)
            if v in phi:
                if phi[v] != w:
                    return None
            else:
                if w in used:
                    return None
                phi[v] = w
                used.add(w)
            if F2 not in seen:
                seen.add(F2)
                stack.append(F2)
    if len(seen) != nfacets:
        return None
    for F in seen:
        if tuple(sorted(phi[x] for x in F)) not in rfacets:
            return None
    return phi


def orientation_sign(phi: dict[int, int], source: dict, target: dict) -> int:
    """+1 if phi carries the source orientation to the target one, -1 if reversed.

    Orientations map sorted id facets to signs relative to sorted order.
    Raises if the comparison is not constant over facets.
    """
    signs = set()
    for F, o in source.items():
        img = tuple(phi[v] for v in F)
        signs.add(o * target[tuple(sorted(img))] * permutation_sign(img))
    if len(signs) != 1:
        raise AssertionError("orientations are not coherent under the isomorphism")
    return signs.pop()


def coherent_orientation(K: SimplicialComplex) -> dict:
    """Orientation of an orientable pseudomanifold with the first facet positive."""
    orientable, cover = orientability_and_double_cover(K)
    if not orientable:
        raise PreconditionError("complex is not orientable")
    return dict(zip(K.facets, cover.facet_signs))


@dataclass
class Reference:
    label: LinkClassLabel
    complex: SimplicialComplex
    orientation: dict = field(repr=False)


@dataclass(frozen=True)
class Recognition:
    label: LinkClassLabel
    sign: int  # orientation of the link relative to the label's reference; 0 for S3
    method: str


class LinkRecognizer:
    """Assigns labels and orientation signs to oriented homology 3-sphere links."""

    def __init__(self, budgets: Budgets | None = None, references=None):
        self.budgets = budgets or Budgets()
        if references is None:
            from ..corpus import poincare
            P = poincare()
            references = [Reference(POINCARE_LABEL, P, coherent_orientation(P))]
        self.references: list[Reference] = list(references)
        self.warnings: list[str] = []
        self._fresh = 0
        self._memo: dict = {}

    def _match(self, L: SimplicialComplex, orientation: dict) -> Recognition | None:
        for ref in self.references:
            phi = find_isomorphism(L, ref.complex)
            if phi is not None:
                return Recognition(ref.label, orientation_sign(phi, orientation, ref.orientation), "isomorphism")
        return None

    def recognize(self, L: SimplicialComplex, orientation: dict, homology=None) -> Recognition:
        """Label and orientation sign of L; ``homology`` is its reduced homology if known."""
        key = frozenset(L.facet_list())
        memo = self._memo.get(key)
        if memo is not None:
            rec, seen = memo
            # orientations of the same connected link agree or disagree everywhere
            G = L.facets[0]
            flip = orientation[G] * seen[tuple(L.vertices[v] for v in G)]
            return Recognition(rec.label, rec.sign * flip, rec.method)
        rec = self._recognize(L, orientation, homology)
        self._memo[key] = (rec, {tuple(L.vertices[v] for v in G): o for G, o in orientation.items()})
        return rec

    def _recognize(self, L: SimplicialComplex, orientation: dict, homology) -> Recognition:
        hom = tuple(homology) if homology is not None else tuple(reduced_homology_list(L))
        if L.dim != 3 or hom != SPHERE3_HOMOLOGY:
            raise PreconditionError(f"link does not have the homology of S3: {[str(g) for g in hom]}")
        found = self._match(L, orientation)
        if found is not None:
            return found
        analysis = analyze_group(edge_path_presentation(L), self.budgets, full_spectrum=True)
        verdict = analysis.verdict.value
        if verdict == YES:
            return Recognition(S3_LABEL, 0, "profile")
        orders = analysis.quotient_orders
        self._fresh += 1
        if verdict != UNKNOWN and {60, 120} <= set(orders):
            name = f"{POINCARE}~{self._fresh}"
            msg = (f"link has the Poincare profile but is not isomorphic to the reference "
                   f"triangulation; labeled {name}")
        else:
            name = f"L{self._fresh}[{verdict}:{','.join(map(str, orders))}]"
            msg = f"unrecognized link profile; labeled {name}"
        self.warnings.append(msg)
        warnings.warn(msg, stacklevel=2)
        label = LinkClassLabel(name, tuple(str(g) for g in homology_of_sphere_link(hom)), verdict, orders)
        self.references.append(Reference(label, L, dict(orientation)))
        return Recognition(label, 1, "profile")


def homology_of_sphere_link(reduced) -> list[GroupDescriptor]:
    """Unreduced homology from a reduced list."""
    out = list(reduced)
    out[0] = GroupDescriptor(out[0].free_rank + 1, out[0].torsion)
    return out


def link_orientation(K: SimplicialComplex, sigma_ids: tuple[int, ...], L: SimplicialComplex, orient) -> dict:
    """Orientation of link(sigma) making sigma followed by the link facet agree
    with the local orientation of the star of sigma."""
    out = {}
    for G in L.facets:
        gk = tuple(K._vindex[L.vertices[v]] for v in G)
        F = tuple(sorted(sigma_ids + gk))
        out[G] = orient.sign(sigma_ids, F) * permutation_sign(sigma_ids + gk)
    return out


def link_class_of(K: SimplicialComplex, sigma, recognizer: LinkRecognizer | None = None,
                  cover=None) -> LinkClassLabel:
    from .conical import LocalOrientation
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    recognizer = recognizer or LinkRecognizer()
    ids = K._ids(K.canonical(sigma))
    L = K.link(sigma)
    return recognizer.recognize(L, link_orientation(K, ids, L, LocalOrientation(cover))).label
