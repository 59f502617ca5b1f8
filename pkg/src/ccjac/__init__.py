"""Exact checks for Jacobian pairs, centralizer membership and the first Weyl algebra."""

from .coeff import D0, FRAC_D0, QQ, ZZ, Domain, Param, ParamFrac, domain_from_tag
from .poly2 import BiPoly, UniPoly, jacobian
from .weyl import WeylElement, commutator
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "ZZ", "QQ", "D0", "FRAC_D0", "Domain", "Param", "ParamFrac", "domain_from_tag",
    "BiPoly", "UniPoly", "jacobian", "WeylElement", "commutator", "BACKEND",
]
