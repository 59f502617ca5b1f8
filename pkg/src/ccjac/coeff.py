"""Exact coefficient domains.

Four kinds of domain are supported:

* ``ZZ`` -- the integers, elements are Python ``int``;
* ``QQ`` -- the rationals, elements are :class:`fractions.Fraction`;
* ``D0`` -- the subring ``Q[a^2, ab, b^2, a^3, b^3]`` of ``Q[a, b]``,
  elements are :class:`Param`;
* ``FRAC_D0`` -- its fraction field ``Q(a, b)``, elements are :class:`ParamFrac`.

Elements are plain immutable values with Python operators. A
:class:`Domain` carries the predicates (membership, units, exact division)
that depend on the ambient ring rather than on the value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import CoefficientNotInDomain, DivisionNotExact, DomainMismatch

__all__ = [
    "Kind", "Domain", "Param", "ParamFrac", "ZZ", "QQ", "D0", "FRAC_D0",
    "d0_member", "d0_monomial_member", "domain_from_tag", "render_scalar",
]


def _norm(c):
    """Collapse integral Fractions to int so the common case stays fast."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grlex(mon):
    # graded lex with a > b
    return (mon[0] + mon[1], mon[0])


# point used to hash parametric values consistently with equality
_HASH_POINT = (Fraction(7919, 1009), Fraction(104729, 3571))


class Param:
    """Sparse polynomial in the parameters ``a``, ``b`` over the rationals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {(0, 0): terms}
        self.terms = {m: _norm(c) for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def a(cls):
        return cls({(1, 0): 1})

    @classmethod
    def b(cls):
        return cls({(0, 1): 1})

    @staticmethod
    def _coerce(other):
        if isinstance(other, Param):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Param._raw({(0, 0): _norm(other)} if other else {})
        return None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Param._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Param._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return Param._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Param(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, ParamFrac):
            return ParamFrac(self) / other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamFrac(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamFrac(o, self)

    def __eq__(self, other):
        if isinstance(other, ParamFrac):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.evaluate(*_HASH_POINT))
        return self._hash

    def evaluate(self, a, b):
        return sum((c * a**i * b**j for (i, j), c in self.terms.items()), Fraction(0))

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant(self):
        return self.terms.get((0, 0), 0)

    def lead(self):
        """Leading ``(monomial, coefficient)`` under graded lex, ``a > b``."""
        m = max(self.terms, key=_grlex)
        return m, self.terms[m]

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def scale(self, c):
        c = _norm(c)
        if not c:
            return Param()
        return Param._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def monomial_content(self):
        """Largest monomial ``a^i b^j`` dividing every term."""
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def shift(self, di, dj):
        return Param._raw({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def divexact(self, other):
        """Exact quotient ``self / other`` in ``Q[a, b]``.

        Raises :class:`DivisionNotExact` when ``other`` does not divide
        ``self``. The test is complete: if ``other`` divides the remainder,
        the remainder's leading monomial is divisible by ``other``'s.
        """
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide Param by {type(other).__name__}")
        if not o:
            raise ZeroDivisionError("Param division by zero")
        (li, lj), lc = o.lead()
        rem = dict(self.terms)
        quo = {}
        while rem:
            (ri, rj) = max(rem, key=_grlex)
            rc = rem[(ri, rj)]
            if ri < li or rj < lj:
                raise DivisionNotExact(f"{o} does not divide {self}")
            qm, qc = (ri - li, rj - lj), _norm(Fraction(rc) / lc)
            quo[qm] = qc
            for (i, j), c in o.terms.items():
                key = (i + qm[0], j + qm[1])
                v = rem.get(key, 0) - qc * c
                if v:
                    rem[key] = _norm(v)
                else:
                    rem.pop(key, None)
        return Param._raw(quo)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _grlex(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            mon = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("a", i), ("b", j)) if e
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mon:
                body = str(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{mag}*{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Param({self})"


class ParamFrac:
    """Element ``num / den`` of ``Q(a, b)``.

    The representation is normalized by cheap means only: an exact division
    is taken when one side divides the other, common monomial factors are
    cancelled and the denominator is made monic under graded lex. It is not
    fully reduced (no polynomial gcd), so equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = Param._coerce(num) if not isinstance(num, Param) else num
        den = Param._coerce(den) if not isinstance(den, Param) else den
        if num is None or den is None:
            raise TypeError("ParamFrac needs Param, int or Fraction parts")
        if not den:
            raise ZeroDivisionError("ParamFrac with zero denominator")
        if not num:
            self.num, self.den = Param(), Param(1)
            return
        if not den.is_constant():
            try:
                num, den = num.divexact(den), Param(1)
            except DivisionNotExact:
                ni, nj = num.monomial_content()
                di, dj = den.monomial_content()
                si, sj = min(ni, di), min(nj, dj)
                if si or sj:
                    num, den = num.shift(-si, -sj), den.shift(-si, -sj)
        _, lc = den.lead()
        if lc != 1:
            inv = 1 / Fraction(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @staticmethod
    def _coerce(other):
        if isinstance(other, ParamFrac):
            return other
        if isinstance(other, Param):
            return ParamFrac(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ParamFrac(Param._coerce(other))
        return None

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ParamFrac(self.num + o.num, self.den)
        return ParamFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamFrac(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("ParamFrac division by zero")
        return ParamFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ParamFrac(self.den**-n, self.num**-n)
        return ParamFrac(self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        d = self.den.evaluate(*_HASH_POINT)
        if not d:
            return 0
        return hash(self.num.evaluate(*_HASH_POINT) / d)

    def is_polynomial(self):
        return self.den.is_constant()

    def as_param(self):
        """The polynomial value, or ``None`` if the denominator does not divide."""
        try:
            return self.num.divexact(self.den)
        except DivisionNotExact:
            return None

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"ParamFrac({self})"


def d0_monomial_member(i, j):
    """Degree rule for ``a^i b^j`` in ``Q[a^2, ab, b^2, a^3, b^3]``."""
    deg = i + j
    if deg == 1:
        return False
    if deg == 3:
        return i == 0 or j == 0
    return True


def d0_member(p):
    """True iff ``p`` lies in ``D0 = Q[a^2, ab, b^2, a^3, b^3]``.

    ``D0`` is spanned by monomials, so membership is decided monomial by
    monomial: degrees 0, 2 and >= 4 are all reachable, degree 1 is not and
    in degree 3 only ``a^3`` and ``b^3`` are.
    """
    if isinstance(p, (int, Fraction)):
        return True
    if isinstance(p, ParamFrac):
        p = p.as_param()
        if p is None:
            return False
    return all(d0_monomial_member(i, j) for i, j in p.terms)


class Kind(enum.Enum):
    INTEGER = "int"
    RATIONAL = "rat"
    PARAM = "d0"
    FRACTION = "frac"


@dataclass(frozen=True)
class Domain:
    """Descriptor for one exact coefficient domain."""

    kind: Kind
    base: Domain | None = None
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0:
            raise ValueError("only characteristic-zero domains are supported")
        if self.kind is Kind.FRACTION:
            if self.base is None or self.base.is_field:
                raise ValueError("fraction field needs an integral-domain base")
        elif self.base is not None:
            raise ValueError(f"{self.kind.name} domain takes no base")

    @property
    def tag(self):
        if self.kind is Kind.FRACTION:
            return "frac-" + self.base.tag
        return self.kind.value

    def __repr__(self):
        return f"Domain({self.tag})"

    @property
    def is_field(self):
        return self.kind in (Kind.RATIONAL, Kind.FRACTION)

    @property
    def is_parametric(self):
        return self.kind is Kind.PARAM or (
            self.kind is Kind.FRACTION and self.base.kind is Kind.PARAM
        )

    @property
    def field(self):
        """The fraction field; a field is its own."""
        if self.is_field:
            return self
        if self.kind is Kind.INTEGER:
            return QQ
        return Domain(Kind.FRACTION, self)

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def contains(self, x):
        if isinstance(x, bool):
            return False
        k = self.kind
        if k is Kind.INTEGER:
            return isinstance(x, int)
        if k is Kind.RATIONAL:
            return isinstance(x, (int, Fraction))
        if k is Kind.PARAM:
            return isinstance(x, Param) and d0_member(x)
        if self.base.kind is Kind.INTEGER:
            return isinstance(x, (int, Fraction))
        return isinstance(x, ParamFrac)

    def convert(self, x):
        """Embed ``x`` into this domain or raise :class:`CoefficientNotInDomain`."""
        if isinstance(x, bool):
            raise CoefficientNotInDomain("booleans are not coefficients")
        k = self.kind
        if k is Kind.INTEGER:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            if isinstance(x, ParamFrac) and x.is_polynomial():
                x = x.as_param()
            if isinstance(x, Param) and x.is_constant():
                x = _norm(Fraction(x.constant()))
            if isinstance(x, int):
                return x
        elif k is Kind.RATIONAL or (k is Kind.FRACTION and self.base.kind is Kind.INTEGER):
            if isinstance(x, ParamFrac) and x.is_polynomial():
                x = x.as_param()
            if isinstance(x, Param) and x.is_constant():
                x = x.constant()
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
        elif k is Kind.PARAM:
            if isinstance(x, ParamFrac):
                x = x.as_param()
            elif isinstance(x, (int, Fraction)):
                x = Param(x)
            if isinstance(x, Param) and d0_member(x):
                return x
        elif isinstance(x, (int, Fraction, Param, ParamFrac)):
            return ParamFrac._coerce(x)
        raise CoefficientNotInDomain(f"{render_scalar(x)} is not in {self.tag}")

    def from_int(self, n):
        return self.convert(int(n))

    def _check(self, *xs):
        for x in xs:
            if not self.contains(x):
                raise DomainMismatch(f"{x!r} is not an element of {self.tag}")

    # ring operations with membership checks; internal code uses operators
    def add(self, x, y):
        self._check(x, y)
        return x + y

    def sub(self, x, y):
        self._check(x, y)
        return x - y

    def mul(self, x, y):
        self._check(x, y)
        return x * y

    def neg(self, x):
        self._check(x)
        return -x

    def eq(self, x, y):
        self._check(x, y)
        return x == y

    def divexact(self, x, y):
        """``x / y`` if the quotient lies in this domain."""
        self._check(x, y)
        if not y:
            raise ZeroDivisionError("division by zero")
        k = self.kind
        if k is Kind.INTEGER:
            q, r = divmod(x, y)
            if r:
                raise DivisionNotExact(f"{x} / {y} is not an integer")
            return q
        if self.is_field:
            return self.convert(Fraction(x) / y if isinstance(x, int) else x / y)
        q = x.divexact(y)
        if not d0_member(q):
            raise DivisionNotExact(f"{x} / {y} = {q} is not in D0")
        return q

    def is_unit(self, x):
        if not x:
            return False
        if self.is_field:
            return True
        if self.kind is Kind.INTEGER:
            return x in (1, -1)
        return x.is_constant()

    def to_field(self, x):
        return self.field.convert(x)

    def fraction_in_domain(self, f):
        """The element of this domain equal to ``f``, or ``None``."""
        if self.is_field:
            return self.convert(f)
        if self.kind is Kind.INTEGER:
            f = Fraction(f) if not isinstance(f, ParamFrac) else f
            if isinstance(f, Fraction) and f.denominator == 1:
                return f.numerator
            return None
        if isinstance(f, (int, Fraction)):
            return Param(f)
        if isinstance(f, Param):
            return f if d0_member(f) else None
        p = f.as_param()
        if p is not None and d0_member(p):
            return p
        return None

    def denominator(self, f):
        """Denominator of a fraction-field element, as an element of the base."""
        if self.kind is Kind.INTEGER:
            return Fraction(f).denominator
        if isinstance(f, ParamFrac):
            return f.den
        return Param(1)


ZZ = Domain(Kind.INTEGER)
QQ = Domain(Kind.RATIONAL)
D0 = Domain(Kind.PARAM)
FRAC_D0 = Domain(Kind.FRACTION, D0)

_TAGS = {"int": ZZ, "rat": QQ, "d0": D0, "frac-d0": FRAC_D0}


def domain_from_tag(tag):
    try:
        return _TAGS[tag]
    except KeyError:
        raise ValueError(f"unknown domain tag {tag!r}; expected one of {sorted(_TAGS)}") from None


def render_scalar(c):
    """Exact text for a coefficient: ``3``, ``-1/3``, ``a^2 + b^2``."""
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def lcm_denominators(fracs):
    return lcm(*(Fraction(f).denominator for f in fracs)) if fracs else 1
