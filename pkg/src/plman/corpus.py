"""Named example complexes.

Every constructor is deterministic.  The Poincare sphere is a shipped
facet file; the other complexes are built from explicit facet lists or
by cones, suspensions and joins.
"""

from __future__ import annotations

from importlib import resources

from .complex import SimplicialComplex, build_complex, cone, join, parse_facets, simplex, sphere, suspension

# 6-vertex real projective plane (the hemi-icosahedron)
RP2_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
)


def rp2() -> SimplicialComplex:
    return build_complex([[str(v) for v in f] for f in RP2_FACETS])


def torus() -> SimplicialComplex:
    """The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    facets = []
    for i in range(7):
        facets.append([str(1 + i), str(1 + (i + 1) % 7), str(1 + (i + 3) % 7)])
        facets.append([str(1 + i), str(1 + (i + 2) % 7), str(1 + (i + 3) % 7)])
    return build_complex(facets)


def poincare() -> SimplicialComplex:
    """16-vertex Poincare homology sphere, f-vector (16, 106, 180, 90)."""
    text = resources.files("plman.data").joinpath("poincare16.txt").read_text()
    return parse_facets(text, "poincare16.txt")


def sigma2p() -> SimplicialComplex:
    """Double suspension of the Poincare sphere, a join S0 * S0 * P."""
    return suspension(poincare(), 2)


def sigma3rp2() -> SimplicialComplex:
    return suspension(rp2(), 3)


NAMED = {
    "rp2": rp2,
    "torus": torus,
    "poincare": poincare,
    "sigma2p": sigma2p,
    "sigma3rp2": sigma3rp2,
}


def named(name: str) -> SimplicialComplex:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown corpus name {name!r}") from None


__all__ = ["rp2", "torus", "poincare", "sigma2p", "sigma3rp2", "named", "NAMED",
           "sphere", "simplex", "cone", "suspension", "join"]
