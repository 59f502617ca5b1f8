"""Random value generators shared by the test modules."""

import random
from fractions import Fraction

from ccjac.coeff import D0, FRAC_D0, QQ, ZZ, Kind, Param, ParamFrac
from ccjac.poly2 import BiPoly, UniPoly
from ccjac.weyl import WeylElement

D0_GENS = [(2, 0), (1, 1), (0, 2), (3, 0), (0, 3)]


def rand_param(rng, degree=3, bound=4, density=0.5):
    """Arbitrary polynomial in a, b (not necessarily in D0)."""
    return Param({(i, d - i): rng.randint(-bound, bound)
                  for d in range(degree + 1) for i in range(d + 1) if rng.random() < density})


def rand_d0(rng, bound=3):
    c = Param(rng.randint(-bound, bound))
    for m in D0_GENS:
        if rng.random() < 0.5:
            c = c + Param({m: rng.randint(-bound, bound)})
    if rng.random() < 0.3:
        c = c * Param({rng.choice(D0_GENS): 1})
    return c


def rand_scalar(rng, dom, bound=5):
    k = dom.kind
    if k is Kind.INTEGER:
        return rng.randint(-bound, bound)
    if k is Kind.RATIONAL:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    if k is Kind.PARAM:
        return rand_d0(rng)
    if dom.base.kind is Kind.INTEGER:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    den = rand_param(rng, 2, 3) or Param(1)
    return ParamFrac(rand_param(rng, 2, 3), den)


def rand_terms(rng, dom, degree, bound=5, density=0.6):
    return {(i, d - i): rand_scalar(rng, dom, bound)
            for d in range(degree + 1) for i in range(d + 1) if rng.random() < density}


def rand_poly(rng, dom=QQ, degree=3, bound=5, density=0.6):
    return BiPoly(dom, rand_terms(rng, dom, degree, bound, density), check=True)


def rand_weyl(rng, dom=ZZ, degree=3, bound=5, density=0.6):
    return WeylElement(dom, rand_terms(rng, dom, degree, bound, density), check=True)


def rand_uni(rng, dom=QQ, degree=3, bound=5):
    return UniPoly(dom, [rand_scalar(rng, dom, bound) for _ in range(degree + 1)])


ALL_DOMAINS = [ZZ, QQ, D0, FRAC_D0]
