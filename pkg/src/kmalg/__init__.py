"""kmalg: exact computer algebra for geometric affine Kac-Moody algebras.

Twisted loop algebras with finite Laurent expansions over exact
Gaussian-rational scalars, their two-dimensional central/derivation
extensions, involutions, real forms, Cartan decompositions and duality,
and the verified catalog of rank-one orthogonal symmetric affine
Kac-Moody algebras.
"""

from . import cartan, findim, involution, kmext, loop, osaka, serialize
from .scalars import Scalar

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "cartan",
    "findim",
    "involution",
    "kmext",
    "loop",
    "osaka",
    "serialize",
]
