"""Sparse bivariate polynomials ``D[x, y]`` and univariate ``D[t]``."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from . import kernels
from .coeff import Domain, Param, ParamFrac, render_scalar
from .errors import DomainMismatch

__all__ = [
    "NEG_INF", "SparseBivariate", "BiPoly", "UniPoly", "jacobian", "partial",
    "substitute", "eval_univariate", "y_degree_and_lead", "x_degree_and_lead",
    "eval_at_origin", "constant_ratio",
]


@total_ordering
class _NegInfinity:
    """Degree of the zero polynomial. Compares below every int; no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "-inf"

    __str__ = __repr__


NEG_INF = _NegInfinity()

_SCALARS = (int, Fraction, Param, ParamFrac)


def field_div(a, b):
    """``a / b`` without ever producing a float."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _grlex_key(mon):
    return (mon[0] + mon[1], mon[0])


def _sign_and_body(c):
    """Split a coefficient into a sign and a magnitude string for rendering."""
    if isinstance(c, (int, Fraction)):
        return ("-" if c < 0 else "+"), render_scalar(abs(c)), False
    if isinstance(c, ParamFrac) and c.den == 1:
        c = c.num
    text = render_scalar(c)
    terms = getattr(c, "terms", None)
    if terms is not None and len(terms) == 1:
        if text.startswith("-"):
            return "-", text[1:], False
        return "+", text, False
    return "+", f"({text})", True


class SparseBivariate:
    """Shared storage and additive structure for ``BiPoly`` and ``WeylElement``.

    ``terms`` maps an exponent pair to a nonzero coefficient of ``domain``.
    Instances are treated as immutable.
    """

    __slots__ = ("domain", "terms")
    VARS = ("x", "y")

    def __init__(self, domain: Domain, terms=None, *, check=False):
        if not isinstance(domain, Domain):
            raise TypeError("first argument must be a Domain")
        self.domain = domain
        if terms is None:
            self.terms = {}
        elif check:
            conv = domain.convert
            out = {}
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("exponents must be nonnegative")
                c = conv(c)
                if c:
                    out[(int(i), int(j))] = c
            self.terms = out
        else:
            self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, domain, terms):
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def zero(cls, domain):
        return cls._raw(domain, {})

    @classmethod
    def const(cls, domain, c):
        c = domain.convert(c)
        return cls._raw(domain, {(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, domain, i, j, c=1):
        c = domain.convert(c)
        return cls._raw(domain, {(i, j): c} if c else {})

    def _same(self, other):
        if type(other) is not type(self):
            return False
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain.tag} vs {other.domain.tag}")
        return True

    def _lift(self, other):
        """``other`` as an element of the same ring, or ``None``."""
        if isinstance(other, SparseBivariate):
            return other if self._same(other) else None
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return type(self).const(self.domain, other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return self._raw(self.domain, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.domain, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c):
        """Multiply every coefficient by the scalar ``c`` of the domain."""
        c = self.domain.convert(c)
        if not c:
            return self._raw(self.domain, {})
        return self._raw(self.domain, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = type(self).const(self.domain, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def change_domain(self, domain):
        conv = domain.convert
        return type(self)._raw(domain, {m: conv(c) for m, c in self.terms.items()})

    def to_field(self):
        return self.change_domain(self.domain.field)

    # degree data
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=NEG_INF)

    def degree_in(self, var):
        idx = self.VARS.index(var)
        return max((m[idx] for m in self.terms), default=NEG_INF)

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_term(self):
        return self.terms.get((0, 0), self.domain.zero)

    def leading_form(self):
        """Top total-degree homogeneous part, as a commutative ``BiPoly``."""
        d = self.total_degree()
        if d is NEG_INF:
            return BiPoly.zero(self.domain)
        return BiPoly._raw(self.domain, {m: c for m, c in self.terms.items() if m[0] + m[1] == d})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        vx, vy = self.VARS
        pieces = []
        for (i, j), c in self.sorted_terms():
            mon = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in ((vx, i), (vy, j)) if e
            )
            sign, body, _ = _sign_and_body(c)
            if mon:
                body = mon if body == "1" else f"{body}*{mon}"
            pieces.append((sign, body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}[{self.domain.tag}]({self})"


class BiPoly(SparseBivariate):
    """Element of ``D[x, y]``."""

    __slots__ = ()

    @classmethod
    def x(cls, domain):
        return cls.monomial(domain, 1, 0)

    @classmethod
    def y(cls, domain):
        return cls.monomial(domain, 0, 1)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            self._same(other)
            return BiPoly._raw(self.domain, kernels.poly_mul(self.terms, other.terms))
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def partial(self, var):
        """Formal partial derivative in ``"x"`` or ``"y"``."""
        out = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "y":
            for (i, j), c in self.terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BiPoly._raw(self.domain, out)

    def degree_and_lead(self, var):
        """``(deg, lead)``: degree in ``var`` and its coefficient, a polynomial in the other variable."""
        d = self.degree_in(var)
        if d is NEG_INF:
            return NEG_INF, BiPoly.zero(self.domain)
        idx = 0 if var == "x" else 1
        return d, BiPoly._raw(self.domain, {
            ((0, m[1]) if idx == 0 else (m[0], 0)): c
            for m, c in self.terms.items() if m[idx] == d
        })


class UniPoly:
    """Element ``c_0 + c_1 t + ... + c_m t^m`` of ``D[t]``; no trailing zeros."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: Domain, coeffs=(), *, check=True):
        self.domain = domain
        cs = [domain.convert(c) for c in coeffs] if check else list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def derivative(self):
        return UniPoly(self.domain, [c * k for k, c in enumerate(self.coeffs)][1:], check=False)

    def __neg__(self):
        return UniPoly(self.domain, [-c for c in self.coeffs], check=False)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.domain == other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, at):
        return eval_univariate(self, at)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return str(_TRender._raw(self.domain, {(k, 0): c for k, c in enumerate(self.coeffs) if c}))

    def __repr__(self):
        return f"UniPoly[{self.domain.tag}]({self})"


class _TRender(SparseBivariate):
    __slots__ = ()
    VARS = ("t", "s")


def partial(p: BiPoly, var: str) -> BiPoly:
    return p.partial(var)


def jacobian(p: BiPoly, q: BiPoly) -> BiPoly:
    """``p_x q_y - p_y q_x``."""
    p._same(q)
    return p.partial("x") * q.partial("y") - p.partial("y") * q.partial("x")


def eval_univariate(u: UniPoly, at):
    """Horner evaluation of ``u`` at a ring element (``BiPoly`` or ``WeylElement``)."""
    if u.domain != at.domain:
        raise DomainMismatch(f"{u.domain.tag} vs {at.domain.tag}")
    cls = type(at)
    if not u.coeffs:
        return cls.zero(at.domain)
    acc = cls.const(at.domain, u.coeffs[-1])
    for c in reversed(u.coeffs[:-1]):
        acc = acc * at
        if c:
            acc = acc + cls._raw(at.domain, {(0, 0): c})
    return acc


def substitute(p: BiPoly, for_x: BiPoly, for_y: BiPoly) -> BiPoly:
    """``p(for_x, for_y)``: powers of ``for_y`` once, then Horner in ``for_x``."""
    p._same(for_x)
    p._same(for_y)
    dom = p.domain
    if not p.terms:
        return BiPoly.zero(dom)
    rows = {}
    for (i, j), c in p.terms.items():
        rows.setdefault(i, {})[j] = c
    max_j = max(j for _, j in p.terms)
    ypow = [BiPoly.const(dom, 1)]
    for _ in range(max_j):
        ypow.append(ypow[-1] * for_y)

    def row_value(i):
        acc = {}
        for j, c in rows.get(i, {}).items():
            for m, v in ypow[j].terms.items():
                acc[m] = acc[m] + c * v if m in acc else c * v
        return BiPoly(dom, acc)

    top = max(rows)
    acc = row_value(top)
    for i in range(top - 1, -1, -1):
        acc = acc * for_x
        if i in rows:
            acc = acc + row_value(i)
    return acc


def y_degree_and_lead(p: BiPoly):
    """``(deg_y p, lead)`` with ``lead`` the coefficient of the top ``y``-power, a ``UniPoly`` in ``x``."""
    d, lead = p.degree_and_lead("y")
    return d, _as_uni(lead, 0)


def x_degree_and_lead(p: BiPoly):
    """``(deg_x p, lead)`` with ``lead`` a ``UniPoly`` in ``y``."""
    d, lead = p.degree_and_lead("x")
    return d, _as_uni(lead, 1)


def _as_uni(p, idx):
    top = max((m[idx] for m in p.terms), default=-1)
    cs = [p.domain.zero] * (top + 1)
    for m, c in p.terms.items():
        cs[m[idx]] = c
    return UniPoly(p.domain, cs, check=False)


def eval_at_origin(p: BiPoly):
    return p.constant_term()


def constant_ratio(target: SparseBivariate, base: SparseBivariate):
    """The field constant ``c`` with ``target == c * base``, or ``None``.

    One coefficient ratio fixes ``c``; the whole identity is then checked.
    Both arguments must have coefficients in a field.
    """
    if not base.terms:
        return None if target.terms else base.domain.zero
    m = max(base.terms, key=_grlex_key)
    if m not in target.terms:
        return None
    c = field_div(target.terms[m], base.terms[m])
    c = base.domain.convert(c)
    if len(target.terms) != len(base.terms):
        return None
    for k, v in base.terms.items():
        t = target.terms.get(k)
        if t is None or t != v * c:
            return None
    return c
