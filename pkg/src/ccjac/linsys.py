"""Exact linear systems for bounded mate searches.

Systems arrive with coefficients in ``ZZ``, ``QQ``, ``D0`` or ``FRAC_D0``.
Rows are scaled into the underlying integral domain (``int`` or ``Param``)
and eliminated fraction-free (Bareiss), so every intermediate entry stays a
polynomial and each division is exact. Integral solvability over ``ZZ`` is
decided with a Smith normal form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .coeff import Kind, Param, ParamFrac
from .errors import BoundTooLargeForBudget

__all__ = ["solve_over_field", "solve_integer", "solve_unit_image", "DEFAULT_MAX_UNKNOWNS"]

DEFAULT_MAX_UNKNOWNS = 600


def _int_divexact(a, b):
    q, r = divmod(a, b)
    assert not r, "Bareiss division must be exact"
    return q


def _param_divexact(a, b):
    return a.divexact(b)


def _scale_rows_to_ring(rows, parametric):
    """Multiply each row by a common denominator so all entries are ring elements."""
    out = []
    for row in rows:
        if parametric:
            fr = [ParamFrac._coerce(c) for c in row]
            den = Param(1)
            for f in fr:
                if f.den != 1 and den.terms != f.den.terms:
                    try:
                        den.divexact(f.den)
                    except Exception:
                        den = den * f.den
            out.append([f.num * den.divexact(f.den) for f in fr])
        else:
            fr = [Fraction(c) for c in row]
            d = lcm(*(f.denominator for f in fr)) if fr else 1
            out.append([(f * d).numerator for f in fr])
    return out


def solve_over_field(rows, rhs, parametric=False):
    """A particular solution of ``rows @ v = rhs`` over the fraction field.

    Free unknowns are set to zero. Returns ``None`` if the system is
    inconsistent. Entries of the result are ``Fraction`` (or ``ParamFrac``
    when ``parametric``).
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = _scale_rows_to_ring([list(r) + [b] for r, b in zip(rows, rhs)], parametric)
    div = _param_divexact if parametric else _int_divexact
    zero = Param() if parametric else 0
    prev = Param(1) if parametric else 1
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        piv = aug[r][c]
        rowr = aug[r]
        for i in range(r + 1, m):
            rowi = aug[i]
            f = rowi[c]
            if f:
                for j in range(c + 1, n + 1):
                    rowi[j] = div(piv * rowi[j] - f * rowr[j], prev)
            else:
                for j in range(c + 1, n + 1):
                    if rowi[j]:
                        rowi[j] = div(piv * rowi[j], prev)
            rowi[c] = zero
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(aug[i][n] for i in range(r, m)):
        return None
    to_field = (lambda v: ParamFrac._coerce(v)) if parametric else Fraction
    sol = [to_field(zero)] * n
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        row = aug[k]
        acc = to_field(row[n])
        for c2 in pivots[k + 1:]:
            if row[c2]:
                acc = acc - to_field(row[c2]) * sol[c2]
        sol[c] = acc / to_field(row[c])
    return sol


def solve_integer(rows, rhs):
    """An integral solution of ``rows @ v = rhs`` or ``None`` (Smith normal form)."""
    from sympy import Matrix, ZZ as SZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    m = len(rows)
    n = len(rows[0]) if rows else 0
    if n == 0:
        return [] if not any(rhs) else None
    M = Matrix(rows)
    S, U, V = smith_normal_decomp(M, domain=SZZ)
    ub = U * Matrix(rhs)
    z = [0] * n
    for i in range(m):
        s = S[i, i] if i < n else 0
        t = int(ub[i])
        if s == 0:
            if t:
                return None
            continue
        q, rem = divmod(t, int(s))
        if rem:
            return None
        z[i] = q
    v = V * Matrix(z)
    return [int(e) for e in v]


def solve_unit_image(domain, columns, target, max_unknowns=DEFAULT_MAX_UNKNOWNS):
    """Coefficients ``v`` with ``sum v_k columns[k] == target`` over ``domain``.

    ``columns`` and ``target`` are term maps ``{(i, j): coeff}``. Over a field
    any solution is accepted; over ``ZZ`` the solution must be integral; over
    ``D0`` the particular field solution is returned only if its entries lie
    in ``D0``. Returns a list of domain elements or ``None``.
    """
    if len(columns) > max_unknowns:
        raise BoundTooLargeForBudget(
            f"{len(columns)} unknowns exceeds the budget of {max_unknowns}"
        )
    keys = sorted(set(target).union(*(c.keys() for c in columns)))
    zero = domain.zero
    rows = [[col.get(k, zero) for col in columns] for k in keys]
    rhs = [target.get(k, zero) for k in keys]
    parametric = domain.is_parametric
    sol = solve_over_field(rows, rhs, parametric=parametric)
    if sol is None:
        return None
    if domain.is_field:
        return [domain.convert(v) for v in sol]
    if domain.kind is Kind.INTEGER:
        if all(v.denominator == 1 for v in sol):
            return [v.numerator for v in sol]
        isol = solve_integer([[int(e) for e in r] for r in rows], [int(e) for e in rhs])
        return isol
    out = [domain.fraction_in_domain(v) for v in sol]
    if any(v is None for v in out):
        return None
    return out
