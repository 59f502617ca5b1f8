"""Jacobian pairs, polynomial-in-A membership and tame automorphisms of ``D[x, y]``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .coeff import Kind, Param, d0_member
from .errors import DomainMismatch, InternalContradiction, NotCommuting, NotInQA
from .linsys import DEFAULT_MAX_UNKNOWNS, solve_unit_image
from .poly2 import NEG_INF, BiPoly, UniPoly, constant_ratio, eval_univariate, jacobian, substitute

__all__ = [
    "InAResult", "CCVerdict", "AffineUnit", "ShearX", "ShearY", "TameAutomorphism",
    "is_jacobian_pair", "commutes", "express_in_A", "clear_denominators",
    "mate_search_bounded", "apply_automorphism", "invert_automorphism",
    "membership_via_automorphism", "verify_cc_instance", "peel",
]


@dataclass(frozen=True)
class InAResult:
    """``w = sum c_i A^i`` with ``c_i`` in the fraction field of ``domain``."""

    domain: object
    coefficients: tuple
    in_base_domain: bool
    clearing_denominator: object
    witness: UniPoly

    @classmethod
    def from_coefficients(cls, domain, coeffs):
        field_ = domain.field
        cs = [field_.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        in_base = all(domain.fraction_in_domain(c) is not None for c in cs)
        res = cls(domain, tuple(cs), in_base, domain.one, UniPoly(field_, cs, check=False))
        d, _ = clear_denominators(res)
        return cls(domain, res.coefficients, in_base, d, res.witness)


@dataclass(frozen=True)
class CCVerdict:
    pair_ok: bool
    commutes: bool
    in_QA: InAResult | None
    in_DA: bool
    notes: str = ""


def is_jacobian_pair(A: BiPoly, B: BiPoly) -> bool:
    """True iff ``Jac(A, B)`` is a unit of the coefficient domain."""
    J = jacobian(A, B)
    return J.is_constant() and A.domain.is_unit(J.constant_term())


def commutes(A: BiPoly, w: BiPoly) -> bool:
    """True iff ``Jac(A, w) == 0``; in characteristic zero ``A``, ``w`` are then algebraically dependent."""
    return not jacobian(A, w)


def peel(A, w, degree_and_lead, one, mul):
    """Leading-part peeling shared by the commutative and Weyl procedures.

    ``degree_and_lead(p)`` returns a degree and a leading part that is
    multiplicative for ``mul``; ``A`` and ``w`` have field coefficients.
    Returns the coefficient dict ``{i: c_i}``.
    """
    t, _ = degree_and_lead(A)
    powers = [one, A]
    coeffs = {}
    while w:
        s, ws = degree_and_lead(w)
        if s % t:
            raise NotInQA("degree", f"remainder degree {s} is not a multiple of {t}")
        r = s // t
        while len(powers) <= r:
            powers.append(mul(powers[-1], A))
        _, lead = degree_and_lead(powers[r])
        c = constant_ratio(ws, lead)
        if c is None:
            raise NotInQA("quotient", f"leading part at power {r} is not a constant multiple of A's")
        coeffs[r] = c
        w = w - powers[r].scale(c)
    return coeffs


def _coeff_list(coeffs):
    return [coeffs.get(i, 0) for i in range(max(coeffs) + 1)] if coeffs else []


def express_in_A(A: BiPoly, w: BiPoly) -> InAResult:
    """Decide ``w in Q(D)[A]`` and return the expansion.

    Peels leading coefficients in ``y`` (or in ``x`` when ``A`` does not
    involve ``y``). ``w`` may have coefficients in the fraction field of
    ``A``'s domain. Raises :class:`NotInQA` with the failing stage.
    """
    dom = A.domain
    if w.domain not in (dom, dom.field):
        raise DomainMismatch(f"{dom.tag} vs {w.domain.tag}")
    Af, wf = A.to_field(), w.to_field()
    if Af.is_constant():
        if not wf.is_constant():
            raise NotInQA("constant", "A is constant but w is not")
        return InAResult.from_coefficients(dom, [wf.constant_term()])
    var = "y" if Af.degree_in("y") >= 1 else "x"
    coeffs = peel(
        Af, wf, lambda p: p.degree_and_lead(var),
        BiPoly.const(Af.domain, 1), lambda p, q: p * q,
    )
    return InAResult.from_coefficients(dom, _coeff_list(coeffs))


def clear_denominators(res: InAResult):
    """``(d, scaled)`` with ``d * c_i`` in the base domain for every ``i``.

    Over ``ZZ`` ``d`` is the least common multiple of the reduced
    denominators; over ``D0`` it is the product of the distinct monic
    denominators, times ``a^4`` when that is needed to land in ``D0``.
    """
    dom = res.domain
    cs = res.coefficients
    if dom.is_field:
        return dom.one, UniPoly(dom, cs)
    if dom.kind is Kind.INTEGER:
        d = lcm(*(Fraction(c).denominator for c in cs)) if cs else 1
        return d, UniPoly(dom, [Fraction(c) * d for c in cs])
    d = Param(1)
    seen = []
    for c in cs:
        den = c.den
        if den != 1 and all(den.terms != s.terms for s in seen):
            seen.append(den)
            d = d * den
    scaled = [(c * d).as_param() for c in cs]
    if not d0_member(d) or not all(d0_member(s) for s in scaled):
        pad = Param({(4, 0): 1})
        d = d * pad
        scaled = [s * pad for s in scaled]
    return d, UniPoly(dom, scaled)


def _monomial_basis(max_total_degree):
    return [(i, d - i) for d in range(max_total_degree + 1) for i in range(d, -1, -1)]


def mate_search_bounded(A: BiPoly, max_total_degree: int, *, max_unknowns=DEFAULT_MAX_UNKNOWNS):
    """A Jacobian mate of ``A`` of total degree at most the bound, or ``None``.

    ``None`` only means no mate exists within the bound. The unknowns are the
    coefficients of ``B``; ``Jac(A, B) = 1`` is linear in them. Solving for 1
    suffices for every unit: ``B`` can be rescaled by the unit afterwards.
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be >= 0")
    dom = A.domain
    basis = _monomial_basis(max_total_degree)
    columns = [jacobian(A, BiPoly.monomial(dom, i, j)).terms for i, j in basis]
    sol = solve_unit_image(dom, columns, {(0, 0): dom.one}, max_unknowns=max_unknowns)
    if sol is None:
        return None
    B = BiPoly(dom, {m: c for m, c in zip(basis, sol)})
    if not is_jacobian_pair(A, B):
        raise InternalContradiction("mate search produced a non-mate", {"A": str(A), "B": str(B)})
    return B


# --- tame automorphisms -------------------------------------------------------

@dataclass(frozen=True)
class AffineUnit:
    """``(x, y) -> (m11 x + m12 y + t1, m21 x + m22 y + t2)`` with unit determinant."""

    m11: object
    m12: object
    m21: object
    m22: object
    t1: object = 0
    t2: object = 0

    def images(self, dom):
        x, y = BiPoly.x(dom), BiPoly.y(dom)
        return (x.scale(self.m11) + y.scale(self.m12) + self.t1,
                x.scale(self.m21) + y.scale(self.m22) + self.t2)

    def validate(self, dom):
        det = dom.convert(self.m11) * dom.convert(self.m22) - dom.convert(self.m12) * dom.convert(self.m21)
        if not dom.is_unit(det):
            raise ValueError(f"affine determinant {det} is not a unit of {dom.tag}")
        for v in (self.t1, self.t2):
            dom.convert(v)

    def inverse(self, dom):
        det = dom.convert(self.m11) * dom.convert(self.m22) - dom.convert(self.m12) * dom.convert(self.m21)
        inv = dom.divexact(dom.one, det)
        n11, n12 = self.m22 * inv, -self.m12 * inv
        n21, n22 = -self.m21 * inv, self.m11 * inv
        return AffineUnit(n11, n12, n21, n22,
                          -(n11 * self.t1 + n12 * self.t2), -(n21 * self.t1 + n22 * self.t2))


@dataclass(frozen=True)
class ShearX:
    """``(x, y) -> (x + f(y), y)``."""

    f: UniPoly

    def images(self, dom):
        y = BiPoly.y(dom)
        return BiPoly.x(dom) + eval_univariate(self.f, y), y

    def validate(self, dom):
        if self.f.domain != dom:
            raise DomainMismatch(f"shear polynomial over {self.f.domain.tag}, word over {dom.tag}")

    def inverse(self, dom):
        return ShearX(-self.f)


@dataclass(frozen=True)
class ShearY:
    """``(x, y) -> (x, y + f(x))``."""

    f: UniPoly

    def images(self, dom):
        x = BiPoly.x(dom)
        return x, BiPoly.y(dom) + eval_univariate(self.f, x)

    validate = ShearX.validate

    def inverse(self, dom):
        return ShearY(-self.f)


@dataclass(frozen=True)
class TameAutomorphism:
    """A word of elementary automorphisms, applied left to right.

    ``apply(g, p)`` substitutes the first step into ``p``, then the second
    into the result, and so on; ``g(x)`` and ``g(y)`` are the images of the
    coordinates, and ``apply(g, p) == p(g(x), g(y))``.
    """

    domain: object
    word: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        for step in self.word:
            step.validate(self.domain)

    @classmethod
    def identity(cls, domain):
        return cls(domain, ())

    def images(self):
        dom = self.domain
        return apply_automorphism(self, BiPoly.x(dom)), apply_automorphism(self, BiPoly.y(dom))


def apply_automorphism(g: TameAutomorphism, p: BiPoly) -> BiPoly:
    if g.domain != p.domain:
        raise DomainMismatch(f"automorphism over {g.domain.tag}, polynomial over {p.domain.tag}")
    for step in g.word:
        fx, fy = step.images(g.domain)
        p = substitute(p, fx, fy)
    return p


def invert_automorphism(g: TameAutomorphism) -> TameAutomorphism:
    return TameAutomorphism(g.domain, tuple(s.inverse(g.domain) for s in reversed(g.word)))


def membership_via_automorphism(g: TameAutomorphism, w: BiPoly) -> InAResult:
    """Expand ``w`` in ``A = g(x)`` by pulling back to the centralizer of ``x``.

    ``u = g^{-1}(w)`` commutes with ``x``, so ``u`` lies in ``D[x]``; its
    coefficients are those of ``w`` as a polynomial in ``A``.
    """
    A = apply_automorphism(g, BiPoly.x(g.domain))
    if not commutes(A, w):
        raise NotCommuting(f"Jac(A, w) = {jacobian(A, w)}")
    u = apply_automorphism(invert_automorphism(g), w)
    if u.degree_in("y") not in (NEG_INF, 0):
        raise InternalContradiction(
            "pull-back of a commuting element is not in D[x]",
            {"A": str(A), "w": str(w), "u": str(u), "word": repr(g.word)},
        )
    top = u.degree_in("x")
    coeffs = [] if top is NEG_INF else [u.terms.get((i, 0), 0) for i in range(top + 1)]
    return InAResult.from_coefficients(g.domain, coeffs)


def verify_cc_instance(A: BiPoly, B: BiPoly, w: BiPoly) -> CCVerdict:
    """Check the premises of the centralizer conjecture on one instance and test its conclusion."""
    A._same(B)
    A._same(w)
    pair_ok = is_jacobian_pair(A, B)
    comm = commutes(A, w)
    notes = []
    in_qa = None
    if comm:
        try:
            in_qa = express_in_A(A, w)
        except NotInQA as exc:
            if pair_ok:
                raise InternalContradiction(
                    "Jacobian pair with commuting w outside Q(D)[A]",
                    {"A": str(A), "B": str(B), "w": str(w), "stage": exc.stage,
                     "domain": A.domain.tag},
                ) from exc
            notes.append(f"w not in Q(D)[A]: {exc.stage} stage")
    else:
        notes.append("Jac(A, w) != 0")
    if not pair_ok:
        notes.append("(A, B) is not a Jacobian pair")
    in_da = in_qa is not None and in_qa.in_base_domain
    return CCVerdict(pair_ok, comm, in_qa, in_da, "; ".join(notes))
