"""Homology-manifold certification and css invariants on explicit triangulations."""

from .complex import SimplicialComplex, build_complex, cone, join, read_facets, simplex, sphere, suspension
from .homology.coefficients import CoefficientSystem
from .manifold.certify import is_homology_manifold, singular_vertices

__version__ = "0.1.0"

__all__ = [
    "SimplicialComplex", "build_complex", "cone", "join", "read_facets", "simplex", "sphere", "suspension",
    "CoefficientSystem", "is_homology_manifold", "singular_vertices",
    "__version__",
]
