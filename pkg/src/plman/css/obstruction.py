"""The triangulation obstruction: Bockstein of ksm through the rok sequence.

For a model with rok surjective the sequence is

    0 -> ker(rok) -> model --rok--> Z/2 -> 0

and the obstruction of a Z/2 cocycle x is beta(x) in H^(d+1)(K; ker rok).
It vanishes exactly when x lifts to a model-valued cocycle, which is
checked independently every time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..complex import SimplicialComplex
from ..errors import NoLiftPossibleError
from ..homology.bockstein import CoefficientSequence, _cochains, bockstein, is_liftable
from ..homology.chains import ClassHandle
from ..homology.coefficients import CoefficientSystem
from ..homology.descriptor import GroupDescriptor
from .theta import ThetaModel


@dataclass(frozen=True)
class ObstructionReport:
    handle: ClassHandle
    liftable: bool
    lift: list[int] | None = field(repr=False)
    kernel: GroupDescriptor
    cocycle: list[int] = field(repr=False, default_factory=list)

    def is_zero(self) -> bool:
        return self.handle.is_zero()

    @property
    def group(self) -> GroupDescriptor:
        return self.handle.group

    def to_json(self) -> dict:
        return {
            "obstruction": self.handle.to_json(),
            "obstructed": not self.is_zero(),
            "ksm_lifts": self.liftable,
            "kernel_of_rok": self.kernel.to_json(),
        }


def rok_sequence(model: ThetaModel) -> CoefficientSequence:
    return CoefficientSequence.from_character(model.coefficients(), model.rok_values(), 2)


def triangulation_obstruction(K, ksm: Sequence[int], model: ThetaModel, degree: int = 4,
                              complexes: dict | None = None) -> ObstructionReport:
    """beta(ksm) in H^(degree+1)(K; ker rok), with the exactness check.

    ``K`` is a simplicial complex (simplicial cochains) or a builder
    mapping a coefficient system to a cochain complex.
    """
    seq = rok_sequence(model)
    ksm = [int(x) % 2 for x in ksm]
    cache = complexes if complexes is not None else {}
    for key, coeffs in (("A", seq.A), ("B", seq.B), ("C", seq.C)):
        if key not in cache:
            cache[key] = _cochains(K, coeffs)
    if not model.rok_surjective:
        z2 = cache["C"]
        if not z2.class_of(degree, ksm).is_zero():
            raise NoLiftPossibleError(
                "rok vanishes on the model, so a nonzero ksm class can never lift")
        ksm = [0] * len(ksm)
    result = bockstein(K, degree, ksm, seq, cache)
    ok, lift = is_liftable(K, degree, ksm, seq, cache)
    if ok == (not result.is_zero()):
        raise AssertionError("Bockstein and lift search disagree")
    return ObstructionReport(result.handle, ok, lift, seq.A.descriptor(), result.cocycle)


def z2_cochains(K: SimplicialComplex):
    """The Z/2 simplicial cochain complex, for building ksm inputs."""
    return _cochains(K, CoefficientSystem.mod(2))
