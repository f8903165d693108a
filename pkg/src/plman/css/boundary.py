"""Boundary naturality of the css class, checked in the homology picture.

For a homology manifold K with nonempty boundary, the chain

    c = sum over interior (n-4)-simplices s of  s . [link s]

is a relative cycle of (K, boundary K) with twisted model coefficients,
and its boundary is the css chain of the boundary.  This is the chain
level form of i* css(K) = css(boundary K).

Orientations: the boundary facet R of the facet F = R + w gets the
orientation (-1)^(position of w in F) times that of F, the usual face
sign of the simplicial boundary.  Links in the boundary are oriented from
that, exactly as links in K are oriented from the star of s.  With these
choices the boundary of c is exactly the css chain of the boundary
(``NATURALITY_SIGN`` = +1), asserted entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import SimplicialComplex, permutation_sign
from ..cover import orientability_and_double_cover
from ..errors import PreconditionError
from ..homology.chains import simplicial_chain_complex
from ..manifold.certify import is_homology_manifold
from ..manifold.verdict import Budgets
from .conical import LocalOrientation
from .invariant import _place
from .recognition import LinkRecognizer, link_orientation
from .theta import ThetaModel

NATURALITY_SIGN = 1


@dataclass
class NaturalityReport:
    model: ThetaModel
    relative_cycle: bool
    matches: bool
    chain: dict = field(repr=False)  # interior (n-4)-simplex -> coefficient vector
    boundary_chain: dict = field(repr=False)  # boundary (n-5)-simplex -> expected vector
    mismatches: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.relative_cycle and self.matches

    def to_json(self) -> dict:
        def pairs(d):
            return [[[str(t) for t in s], v] for s, v in d.items() if any(v)]
        return {
            "model": self.model.to_json(),
            "relative_cycle": self.relative_cycle,
            "boundary_matches": self.matches,
            "naturality_holds": self.holds,
            "sign": NATURALITY_SIGN,
            "relative_chain": pairs(self.chain),
            "boundary_css_chain": pairs(self.boundary_chain),
            "mismatches": [[str(t) for t in s] for s in self.mismatches],
            "warnings": list(self.warnings),
        }


def _boundary_link_orientation(K: SimplicialComplex, tau: tuple[int, ...], L: SimplicialComplex,
                               orient: LocalOrientation, facet_of_ridge: dict) -> dict:
    out = {}
    for G in L.facets:
        gk = tuple(K._vindex[L.vertices[v]] for v in G)
        R = tuple(sorted(tau + gk))
        F, w = facet_of_ridge[R]
        o = orient.sign(tau, F) * (-1) ** F.index(w)
        out[G] = o * permutation_sign(tau + gk)
    return out


def boundary_naturality(K: SimplicialComplex, model: ThetaModel | None = None,
                        budgets: Budgets | None = None, report=None) -> NaturalityReport:
    """Check that the boundary of the relative css chain is the css chain of the boundary."""
    report = report or is_homology_manifold(K, singular=False)
    if not report.is_homology_manifold:
        raise PreconditionError("complex is not a certified homology manifold")
    B = report.boundary_subcomplex
    if B.is_empty():
        raise PreconditionError("complex has empty boundary")
    if K.dim < 5:
        raise PreconditionError(f"need dimension >= 5 so the boundary carries css, got {K.dim}")
    model = model or ThetaModel.default()
    _, cover = orientability_and_double_cover(K)
    orient = LocalOrientation(cover)
    recognizer = LinkRecognizer(budgets)
    n = K.dim
    in_boundary = {K._ids(s) for s in B.simplices()}

    interior = {}
    for ids in K._faces.get(n - 4, ()):
        if ids in in_boundary:
            continue
        sigma = K._tokens(ids)
        L = K.link(sigma)
        interior[sigma] = recognizer.recognize(L, link_orientation(K, ids, L, orient))

    facet_of_ridge = {}
    for F in K.facets:
        for i, w in enumerate(F):
            R = F[:i] + F[i + 1:]
            if R in in_boundary:
                facet_of_ridge[R] = (F, w)
    on_boundary = {}
    for ids in K._faces.get(n - 5, ()):
        if ids not in in_boundary:
            continue
        tau = K._tokens(ids)
        L = B.link(tau)
        on_boundary[tau] = recognizer.recognize(L, _boundary_link_orientation(K, ids, L, orient, facet_of_ridge))

    model = _place(model, {**interior, **on_boundary}, True)
    a = len(model.generators)
    C = simplicial_chain_complex(K, model.coefficients(twisted=True), cover)
    vec = [0] * C.width(n - 4)
    chain = {}
    for sigma, rec in interior.items():
        v = [0] * a
        if rec.sign:
            v[model.index(rec.label.name)] = rec.sign
        chain[sigma] = v
        p = C.position(n - 4, sigma)
        vec[p * a:(p + 1) * a] = v
    dc = C.apply(n - 4, vec)
    zero = C.coeffs.is_zero_element
    relative = True
    mismatches = []
    expected = {}
    for p, tau in enumerate(C.labels[n - 5]):
        got = dc[p * a:(p + 1) * a]
        rec = on_boundary.get(tau)
        if rec is None:
            relative = relative and zero(got)
            continue
        want = [0] * a
        if rec.sign:
            want[model.index(rec.label.name)] = rec.sign
        expected[tau] = want
        if not zero([g - NATURALITY_SIGN * w for g, w in zip(got, want)]):
            mismatches.append(tau)
    return NaturalityReport(model, relative, not mismatches, chain, expected, mismatches,
                            list(recognizer.warnings))
