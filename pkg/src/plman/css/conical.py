"""The dual-cone (conical) chain complex of a closed homology manifold.

The degree n - k basis is the dual cones D(s) of the k-simplices s, in
simplex enumeration order.  D(s) is oriented so that s followed by D(s)
is the local orientation of the star of s read off the double cover: for
a facet F containing s, eps_s(F) is the orientation o of F such that the
cover facet (F, o) contains the sheet-0 lift of s.

With that orientation the boundary of D(s) is

    sum over t = s + v of  eps_s(F) eps_t(F) (-1)^(k+1) [t : s] D(t)

for any facet F containing t; the product eps_s eps_t does not depend on
the choice of F.  Transposed, this is the twisted simplicial boundary up
to the sign (-1)^(k+1), which is the duality used throughout the package.
"""

from __future__ import annotations

from ..complex import SimplicialComplex
from ..cover import DoubleCover, orientability_and_double_cover
from ..errors import PreconditionError
from ..homology.chains import ChainComplexData
from ..homology.coefficients import CoefficientSystem
from ..homology.matrix import IntegerMatrix


class LocalOrientation:
    """eps_s(F) from the cached sheet data of a double cover (vertex ids)."""

    def __init__(self, cover: DoubleCover):
        self.cover = cover
        self.lifts = cover.chosen_lift_sheets()
        self.base = cover.base
        self._facet_of: dict[tuple[int, ...], tuple[int, ...]] = {}

    def facet_of(self, ids: tuple[int, ...]) -> tuple[int, ...]:
        f = self._facet_of.get(ids)
        if f is None:
            key = set(ids)
            f = next(c for c in self.base._facets_at(ids[0]) if key.issubset(c))
            self._facet_of[ids] = f
        return f

    def sign(self, ids: tuple[int, ...], facet: tuple[int, ...]) -> int:
        sheets = self.cover.sheet_plus[self.cover.facet_pos[facet]]
        plus = tuple(sheets[facet.index(v)] for v in ids)
        return 1 if plus == self.lifts[ids] else -1

    def relative(self, sigma: tuple[int, ...], tau: tuple[int, ...]) -> int:
        """eps_sigma(F) eps_tau(F) for sigma a face of tau."""
        F = self.facet_of(tau)
        return self.sign(sigma, F) * self.sign(tau, F)


def conical_boundary(K: SimplicialComplex, orient: LocalOrientation, d: int) -> IntegerMatrix:
    """Boundary C_d -> C_(d-1) of the dual-cone complex."""
    n = K.dim
    k = n - d
    rows = K._faces.get(k + 1, ())
    cols = K._faces.get(k, ())
    row_index = K._index.get(k + 1, {})
    data: dict[int, dict[int, int]] = {}
    cofaces: dict[tuple[int, ...], list] = {}
    for t in rows:
        for pos in range(len(t)):
            cofaces.setdefault(t[:pos] + t[pos + 1:], []).append((t, pos))
    base_sign = -1 if (k + 1) % 2 else 1
    for j, s in enumerate(cols):
        for t, pos in cofaces.get(s, ()):
            inc = -1 if pos % 2 else 1
            c = orient.relative(s, t) * base_sign * inc
            data.setdefault(row_index[t], {})[j] = c
    return IntegerMatrix(len(rows), len(cols), data)


def conical_chain_complex(K: SimplicialComplex, coeffs: CoefficientSystem | None = None,
                          cover: DoubleCover | None = None, cochains: bool = False,
                          check: bool = False) -> ChainComplexData:
    """Dual-cone (co)chain complex of a closed homology manifold.

    With ``check`` the link criterion is verified first; callers that have
    already certified K skip it.
    """
    coeffs = coeffs or CoefficientSystem.integers()
    if coeffs.is_twisted:
        raise ValueError("the dual-cone complex takes untwisted coefficients")
    if check:
        from ..manifold.certify import is_homology_manifold
        report = is_homology_manifold(K, singular=False)
        if not report.closed:
            raise PreconditionError("dual cones need a closed homology manifold")
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    orient = LocalOrientation(cover)
    n = K.dim
    labels = {d: K.faces(n - d) for d in range(n + 1)}
    plain = {}
    for d in range(1, n + 1):
        B = conical_boundary(K, orient, d)
        if cochains:
            plain[d - 1] = B.T
        else:
            plain[d] = B
    return ChainComplexData(coeffs, 1 if cochains else -1, labels, plain, basis="dual_cones")


def conical_builder(K: SimplicialComplex, cover: DoubleCover | None = None):
    """A function coeffs -> dual-cone cochain complex, for Bockstein maps."""
    if cover is None:
        _, cover = orientability_and_double_cover(K)
    return lambda coeffs: conical_chain_complex(K, coeffs, cover, cochains=True)
