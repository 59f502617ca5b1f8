"""Pure-Python sparse product kernels.

Both kernels take and return ``{(i, j): coefficient}`` dicts with no stored
zeros. Coefficients are arbitrary exact ring elements (``int``,
``Fraction``, ``Param``, ``ParamFrac``).
"""

from functools import lru_cache
from math import comb, factorial


def poly_mul(p, q):
    """Commutative product of two sparse bivariate term maps."""
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    qitems = list(q.items())
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in qitems:
            key = (i1 + i2, j1 + j2)
            acc = get(key)
            out[key] = c1 * c2 if acc is None else acc + c1 * c2
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=4096)
def reorder_coefficients(j, i):
    """Coefficients of ``Y^j X^i = sum_k r_k X^(i-k) Y^(j-k)``."""
    return tuple(comb(j, k) * comb(i, k) * factorial(k) for k in range(min(i, j) + 1))


def weyl_mul(p, q):
    """Normal-ordered product in the first Weyl algebra (``X`` left of ``Y``)."""
    out = {}
    get = out.get
    qitems = list(q.items())
    for (a, b), c1 in p.items():
        for (c, d), c2 in qitems:
            c12 = c1 * c2
            if b == 0 or c == 0:
                key = (a + c, b + d)
                acc = get(key)
                out[key] = c12 if acc is None else acc + c12
                continue
            for k, r in enumerate(reorder_coefficients(b, c)):
                key = (a + c - k, b + d - k)
                term = c12 * r if k else c12
                acc = get(key)
                out[key] = term if acc is None else acc + term
    return {k: v for k, v in out.items() if v}
