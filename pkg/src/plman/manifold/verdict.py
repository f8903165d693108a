"""Three-valued simple-connectivity verdicts with replayable evidence."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import catalog as default_catalog, compose, identity_perm, inverse
from .presentation import GroupPresentation
from .quotients import Epimorphism, quotient_spectrum, verify_epimorphism
from .tietze import replay, simplify

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Budgets:
    tietze_moves: int = 5000
    quotient_bound: int = 120
    seed: int = 0

    def __post_init__(self):
        if self.tietze_moves <= 0 or self.quotient_bound <= 0:
            raise ValueError("budgets must be positive")


@dataclass(frozen=True)
class SCVerdict:
    value: str
    evidence: dict = field(compare=False)

    def to_json(self) -> dict:
        return {"value": self.value, "evidence": self.evidence}


@dataclass(frozen=True)
class GroupAnalysis:
    """Verdict plus the finite quotient orders found up to the bound."""

    verdict: SCVerdict
    quotient_orders: tuple[int, ...]
    epimorphisms: tuple[Epimorphism, ...]


def _lift_epimorphism(G: GroupPresentation, reduced, epi: Epimorphism) -> list:
    """Images of the original generators from an epimorphism of the reduced group."""
    deg = epi.group.degree
    survivors = {g: epi.images[k] for k, g in enumerate(reduced.generators)}
    full = reduced.extend_images(survivors, compose, inverse, identity_perm(deg))
    return [full[g] for g in range(1, G.generators + 1)]


def analyze_group(G: GroupPresentation, budgets: Budgets | None = None,
                  full_spectrum: bool = False) -> GroupAnalysis:
    budgets = budgets or Budgets()
    tz = simplify(G, budgets.tietze_moves)
    if tz.trivialized:
        ev = {"kind": "tietze", "moves": [dict(m) for m in tz.moves]}
        return GroupAnalysis(SCVerdict(YES, ev), (), ())
    reduced = tz.reduced
    small = reduced.compact()
    cat = default_catalog(budgets.quotient_bound)
    epis, exhausted = quotient_spectrum(small, cat, budgets.quotient_bound, first_only=not full_spectrum)
    lifted = []
    for epi in epis:
        images = _lift_epimorphism(G, reduced, epi)
        lifted.append(Epimorphism(epi.group, tuple(images)))
    orders = tuple(sorted({e.group.order for e in lifted}))
    if lifted:
        first = lifted[0]
        if not verify_epimorphism(G, first.group, first.images):
            raise AssertionError("lifted epimorphism failed verification")
        ev = {"kind": "epimorphism", "seed": budgets.seed, **first.to_json()}
        return GroupAnalysis(SCVerdict(NO, ev), orders, tuple(lifted))
    ev = {
        "kind": "budgets",
        "tietze_moves": budgets.tietze_moves,
        "tietze_budget_exhausted": tz.budget_exhausted,
        "quotient_bound": budgets.quotient_bound,
        "search_budget_exhausted": exhausted,
        "reduced_generators": len(reduced.generators),
        "reduced_relators": len(reduced.relators),
        "seed": budgets.seed,
    }
    return GroupAnalysis(SCVerdict(UNKNOWN, ev), (), ())


def simply_connected_verdict(G: GroupPresentation, budgets: Budgets | None = None) -> SCVerdict:
    return analyze_group(G, budgets).verdict


def replay_verdict(G: GroupPresentation, verdict: SCVerdict) -> bool:
    """Independently re-check the evidence attached to a verdict."""
    ev = verdict.evidence
    if verdict.value == YES:
        return ev.get("kind") == "tietze" and replay(G, ev["moves"]).is_empty()
    if verdict.value == NO:
        from .groups import PermutationGroup
        images = [tuple(p) for p in ev["images"]]
        group = PermutationGroup(ev["group"], ev["degree"], images) if images else None
        if group is None or group.order != ev["order"] or ev["order"] < 2:
            return False
        return verify_epimorphism(G, group, images)
    return verdict.value == UNKNOWN and ev.get("kind") == "budgets"
