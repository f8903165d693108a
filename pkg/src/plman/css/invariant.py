"""The css cochain, its class, and the dual twisted chain.

Sign convention (fixed once, used by every check):

* a simplex is oriented by its sorted vertex order;
* the dual cone D(s) is oriented so that s followed by D(s) is the local
  orientation eps_s of the star of s (see ``conical``);
* the link L of s is oriented as the boundary of D(s) = cone(L), which
  makes s followed by a link facet G agree with eps_s on s + G;
* the css cochain takes D(s) to sign * [class of L], where sign compares
  this orientation of L with the reference triangulation of its class;
* the twisted chain puts on the chosen lift of s (first vertex on sheet 0)
  the class of the link of that lift, oriented by the lift and the
  canonical orientation of the cover.  Transport from cochain to chain is
  the identity on coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import SimplicialComplex, permutation_sign
from ..cover import DoubleCover, orientability_and_double_cover
from ..errors import MissingRokError, ModelLacksClassError, PreconditionError
from ..homology.chains import ChainComplexData, ClassHandle, simplicial_chain_complex
from ..homology.coefficients import CoefficientSystem
from ..manifold.certify import is_homology_manifold
from ..manifold.verdict import Budgets
from .conical import LocalOrientation, conical_chain_complex
from .recognition import LinkRecognizer, Recognition, link_orientation
from .theta import ThetaModel


@dataclass
class ThetaCochain:
    """A Theta-valued cochain on the dual 4-cones of a closed homology manifold."""

    K: SimplicialComplex = field(repr=False)
    model: ThetaModel
    complex: ChainComplexData = field(repr=False)
    degree: int
    vector: list[int] = field(repr=False)
    recognitions: dict = field(repr=False, default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def cones(self) -> list[tuple]:
        """Base simplices of the dual cones, in basis order."""
        return self.complex.labels[self.degree]

    def value(self, sigma) -> list[int]:
        a = len(self.model.generators)
        p = self.complex.position(self.degree, self.K.canonical(sigma))
        return self.vector[p * a:(p + 1) * a]

    def support(self) -> list[tuple]:
        a = len(self.model.generators)
        out = []
        for p, s in enumerate(self.cones):
            if not self.complex.coeffs.is_zero_element(self.vector[p * a:(p + 1) * a]):
                out.append(s)
        return out

    def with_vector(self, vector) -> "ThetaCochain":
        return ThetaCochain(self.K, self.model, self.complex, self.degree, list(vector),
                            self.recognitions, list(self.warnings))

    def to_json(self) -> dict:
        a = len(self.model.generators)
        values = []
        for p, s in enumerate(self.cones):
            v = self.vector[p * a:(p + 1) * a]
            if any(v):
                values.append([[str(t) for t in s], v])
        return {"dimension": self.degree, "basis": "dual_cones",
                "generators": list(self.model.generators), "values": values}


def _require_closed(K: SimplicialComplex, report=None, min_dim: int = 4):
    if K.dim < min_dim:
        raise PreconditionError(f"need dimension >= {min_dim}, got {K.dim}")
    report = report or is_homology_manifold(K, singular=False)
    if not report.closed:
        raise PreconditionError("complex is not a certified closed homology manifold")
    return report


def _link_homology(K: SimplicialComplex, report) -> dict:
    """Reduced link homology of the (n-4)-simplices, from the certificates."""
    return {c.simplex: c.link_homology for c in report.certificates if len(c.simplex) == K.dim - 3}


def _recognize_all(K: SimplicialComplex, cover: DoubleCover, recognizer: LinkRecognizer, report) -> dict:
    orient = LocalOrientation(cover)
    hom = _link_homology(K, report)
    out: dict[tuple, Recognition] = {}
    for ids in K._faces.get(K.dim - 4, ()):
        sigma = K._tokens(ids)
        L = K.link(sigma)
        out[sigma] = recognizer.recognize(L, link_orientation(K, ids, L, orient), hom.get(sigma))
    return out


def _place(model: ThetaModel, recognitions: dict, auto_extend: bool) -> ThetaModel:
    for rec in recognitions.values():
        if rec.sign and rec.label.name not in model:
            if not auto_extend:
                raise ModelLacksClassError(f"model has no generator for link class {rec.label.name!r}")
            model = model.extended(rec.label.name)
    return model


def css_cochain(K: SimplicialComplex, model: ThetaModel | None = None, auto_extend: bool = True,
                budgets: Budgets | None = None, cover: DoubleCover | None = None,
                report=None, recognizer: LinkRecognizer | None = None) -> ThetaCochain:
    """Value on D(s) for every (n-4)-simplex s: the signed class of link(s)."""
    report = _require_closed(K, report)
    model = model or ThetaModel.default()
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    recognizer = recognizer or LinkRecognizer(budgets)
    recs = _recognize_all(K, cover, recognizer, report)
    model = _place(model, recs, auto_extend)
    C = conical_chain_complex(K, model.coefficients(), cover, cochains=True)
    a = len(model.generators)
    vec = [0] * C.width(4)
    for s, rec in recs.items():
        if rec.sign:
            vec[C.position(4, s) * a + model.index(rec.label.name)] = rec.sign
    return ThetaCochain(K, model, C, 4, vec, recs, list(recognizer.warnings))


def verify_cocycle(cochain: ThetaCochain) -> bool:
    return cochain.complex.is_cycle(cochain.degree, cochain.vector)


@dataclass(frozen=True)
class CssClass:
    handle: ClassHandle
    witness: list[int] | None  # cochain w with delta w = css when the class is zero

    def is_zero(self) -> bool:
        return self.handle.is_zero()


def css_class(K: SimplicialComplex, model: ThetaModel | None = None, cochain: ThetaCochain | None = None,
              **kwargs) -> CssClass:
    cochain = cochain or css_cochain(K, model, **kwargs)
    handle = cochain.complex.class_of(cochain.degree, cochain.vector)
    witness = None
    if handle.is_zero():
        ok, witness = cochain.complex.bounding_witness(cochain.degree, cochain.vector)
        if not ok:
            raise AssertionError("zero class without a coboundary witness")
    return CssClass(handle, witness)


def rokhlin_reduction(cochain: ThetaCochain, model: ThetaModel | None = None) -> list[int]:
    """Entrywise rok of a Theta cochain, as a Z/2 cochain on the same cones."""
    model = model or cochain.model
    a = len(model.generators)
    if a != len(cochain.model.generators):
        raise ValueError("model does not match the cochain")
    n = len(cochain.vector) // a
    used = sorted({g for p in range(n) for g in range(a) if cochain.vector[p * a + g]})
    rok = model.rok_values(used)
    return [sum(cochain.vector[p * a + g] * rok[g] for g in range(a)) % 2 for p in range(n)]


def ksm_complex(cochain: ThetaCochain) -> ChainComplexData:
    """Z/2 dual-cone cochains matching a Theta cochain."""
    K = cochain.K
    _, cover = orientability_and_double_cover(K)
    return conical_chain_complex(K, CoefficientSystem.mod(2), cover, cochains=True)


# -- the twisted homology picture ------------------------------------------------


def _lift_link_orientation(cover: DoubleCover, lift: tuple) -> dict:
    """Orientation of link(lift) in the cover, read from canonical facet orientations.

    Keys are the base facets of the projected link as vertex-id tuples of
    the cover-link complex; returned together with that complex.
    """
    total = cover.total
    link = total.link(lift)
    out = {}
    for G in link.facets:
        g_tokens = tuple(link.vertices[v] for v in G)
        F_tokens = tuple(sorted(lift + g_tokens, key=lambda t: total._vindex[t]))
        o = cover.orientation_of(F_tokens)
        ids = tuple(total._vindex[t] for t in lift + g_tokens)
        out[G] = o * permutation_sign(ids)
    return link, out


@dataclass
class CssChain:
    complex: ChainComplexData = field(repr=False)
    model: ThetaModel
    degree: int
    vector: list[int] = field(repr=False)
    handle: ClassHandle | None = None

    def coefficient(self, sigma) -> list[int]:
        a = len(self.model.generators)
        p = self.complex.position(self.degree, sigma)
        return self.vector[p * a:(p + 1) * a]

    def support(self) -> list[tuple]:
        a = len(self.model.generators)
        return [s for p, s in enumerate(self.complex.labels[self.degree])
                if any(self.vector[p * a:(p + 1) * a])]

    def to_json(self) -> dict:
        a = len(self.model.generators)
        values = []
        for p, s in enumerate(self.complex.labels[self.degree]):
            v = self.vector[p * a:(p + 1) * a]
            if any(v):
                values.append([[str(t) for t in s], v])
        return {"dimension": self.degree, "basis": "simplices",
                "generators": list(self.model.generators), "values": values,
                "class": self.handle.to_json() if self.handle else None}


def css_homology_class(K: SimplicialComplex, model: ThetaModel | None = None, sheet: int = 0,
                       reverse: bool = False, cover: DoubleCover | None = None,
                       recognizer: LinkRecognizer | None = None, report=None,
                       budgets: Budgets | None = None) -> CssChain:
    """The chain sum s . [link s] in C_(n-4)(cover) tensored with the twisted model.

    ``sheet`` picks which lift of every simplex is used; the coefficient is
    then moved to the chosen-lift basis through the twist.  ``reverse``
    uses the opposite canonical orientation of the cover.
    """
    report = _require_closed(K, report)
    model = model or ThetaModel.default()
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    recognizer = recognizer or LinkRecognizer(budgets)
    hom = _link_homology(K, report)
    lifts = cover.chosen_lift_sheets()
    recs = {}
    for ids in K._faces.get(K.dim - 4, ()):
        sigma = K._tokens(ids)
        chosen = tuple((t, s) for t, s in zip(sigma, lifts[ids]))
        lift = chosen if sheet == 0 else tuple(cover.deck(t) for t in chosen)
        link, orient = _lift_link_orientation(cover, lift)
        if reverse:
            orient = {G: -o for G, o in orient.items()}
        base_link = link.relabel({t: t[0] for t in link.vertices})
        base_orient = {tuple(base_link._vindex[link.vertices[v][0]] for v in G): o for G, o in orient.items()}
        rec = recognizer.recognize(base_link, base_orient, hom.get(sigma))
        # the deck image carries -1 times the coefficient in the chosen-lift basis
        recs[sigma] = (rec, 1 if sheet == 0 else -1)
    model = _place(model, {s: r for s, (r, _) in recs.items()}, True)
    C = simplicial_chain_complex(K, model.coefficients(twisted=True), cover)
    d = K.dim - 4
    a = len(model.generators)
    vec = [0] * C.width(d)
    for sigma, (rec, twist) in recs.items():
        if rec.sign:
            vec[C.position(d, sigma) * a + model.index(rec.label.name)] = rec.sign * twist
    handle = C.class_of(d, vec)
    return CssChain(C, model, d, vec, handle)


def duality_match(K: SimplicialComplex, model: ThetaModel | None = None, cochain: ThetaCochain | None = None,
                  chain: CssChain | None = None, budgets: Budgets | None = None,
                  cover: DoubleCover | None = None, report=None) -> bool:
    """Entrywise comparison of the css cochain with the twisted chain."""
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    report = _require_closed(K, report)
    recognizer = LinkRecognizer(budgets)
    cochain = cochain or css_cochain(K, model, cover=cover, report=report, recognizer=recognizer)
    chain = chain or css_homology_class(K, cochain.model, cover=cover, report=report, recognizer=recognizer)
    if chain.model.generators != cochain.model.generators:
        return False
    return all(cochain.value(s) == chain.coefficient(s) for s in cochain.cones)


def missing_rok(cochain: ThetaCochain) -> list[str]:
    """Generators with nonzero coefficients whose rok is unassigned."""
    try:
        rokhlin_reduction(cochain)
    except MissingRokError:
        a = len(cochain.model.generators)
        used = {g for i, x in enumerate(cochain.vector) if x for g in [i % a]}
        return [cochain.model.generators[g] for g in sorted(used) if cochain.model.rok[g] is None]
    return []
