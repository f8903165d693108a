"""One-call css computation with a JSON report."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import SimplicialComplex
from ..cover import orientability_and_double_cover
from ..errors import MissingRokError, NoLiftPossibleError
from ..manifold.certify import is_homology_manifold
from ..manifold.verdict import Budgets
from .conical import conical_builder
from .invariant import (CssChain, CssClass, ThetaCochain, css_class, css_cochain, css_homology_class,
                        rokhlin_reduction, verify_cocycle)
from .obstruction import ObstructionReport, triangulation_obstruction
from .recognition import LinkRecognizer
from .theta import ThetaModel


@dataclass
class CssReport:
    cochain: ThetaCochain = field(repr=False)
    is_cocycle: bool
    css: CssClass | None = field(repr=False)
    ksm: list[int] | None = field(repr=False)
    obstruction: ObstructionReport | None = field(repr=False)
    chain: CssChain | None = field(repr=False)
    duality: bool | None
    notes: list[str] = field(default_factory=list)

    def ksm_support(self) -> list[tuple]:
        if self.ksm is None:
            return []
        return [s for s, x in zip(self.cochain.cones, self.ksm) if x]

    def to_json(self) -> dict:
        out = {
            "dimension": self.cochain.K.dim,
            "model": self.cochain.model.to_json(),
            "cochain": self.cochain.to_json(),
            "support": [[str(t) for t in s] for s in self.cochain.support()],
            "is_cocycle": self.is_cocycle,
            "css_class": self.css.handle.to_json() if self.css else None,
            "css_class_is_zero": self.css.is_zero() if self.css else None,
            "ksm_support": [[str(t) for t in s] for s in self.ksm_support()] if self.ksm is not None else None,
            "obstruction": self.obstruction.to_json() if self.obstruction else None,
            "homology_chain": self.chain.to_json() if self.chain else None,
            "duality_match": self.duality,
            "warnings": list(self.cochain.warnings),
            "notes": list(self.notes),
        }
        return out


def css_report(K: SimplicialComplex, model: ThetaModel | None = None, budgets: Budgets | None = None,
               report=None, jobs: int = 1) -> CssReport:
    report = report or is_homology_manifold(K, jobs=jobs, singular=False)
    _, cover = orientability_and_double_cover(K)
    recognizer = LinkRecognizer(budgets)
    cochain = css_cochain(K, model, cover=cover, report=report, recognizer=recognizer)
    notes = []
    ok = verify_cocycle(cochain)
    cls = css_class(K, cochain=cochain) if ok else None
    ksm = obstruction = None
    try:
        ksm = rokhlin_reduction(cochain)
    except MissingRokError as exc:
        notes.append(f"ksm not computed: {exc}")
    if ksm is not None and ok:
        try:
            obstruction = triangulation_obstruction(conical_builder(K, cover), ksm, cochain.model, 4)
        except (MissingRokError, NoLiftPossibleError) as exc:
            notes.append(f"obstruction not computed: {exc}")
    chain = css_homology_class(K, cochain.model, cover=cover, report=report, recognizer=recognizer)
    duality = all(cochain.value(s) == chain.coefficient(s) for s in cochain.cones)
    return CssReport(cochain, ok, cls, ksm, obstruction, chain, duality, notes)
