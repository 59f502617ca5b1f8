"""The first Weyl algebra ``A_1(D)``: ``[Y, X] = 1``, normal order ``X^i Y^j``."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import kernels
from .centralizer import CCVerdict, InAResult, _coeff_list, _monomial_basis, peel
from .errors import DomainMismatch, InternalContradiction, NotCommuting, NotInQA, RelationViolation
from .linsys import DEFAULT_MAX_UNKNOWNS, solve_unit_image
from .poly2 import _SCALARS, NEG_INF, SparseBivariate, UniPoly, eval_univariate

__all__ = [
    "WeylElement", "weyl_mul", "commutator", "useful_equation", "is_dixmier_pair",
    "dixmier_mate_search_bounded", "weyl_express_in_A", "ShearYW", "ShearXW",
    "UnitScale", "LinearSymplectic", "WeylAutomorphism", "weyl_apply", "weyl_invert",
    "weyl_membership_via_automorphism", "verify_weyl_instance", "dixmier_automorphism_images",
]


class WeylElement(SparseBivariate):
    """Normal-ordered element ``sum c_ij X^i Y^j`` of ``A_1(D)``."""

    __slots__ = ()
    VARS = ("X", "Y")

    @classmethod
    def X(cls, domain):
        return cls.monomial(domain, 1, 0)

    @classmethod
    def Y(cls, domain):
        return cls.monomial(domain, 0, 1)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            self._same(other)
            return WeylElement._raw(self.domain, kernels.weyl_mul(self.terms, other.terms))
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def degree_and_lead(self):
        """Total degree and top homogeneous form; forms multiply without cancellation."""
        return self.total_degree(), self.leading_form()


def weyl_mul(P: WeylElement, Q: WeylElement) -> WeylElement:
    return P * Q


def commutator(P: WeylElement, Q: WeylElement) -> WeylElement:
    """``[P, Q] = PQ - QP``."""
    return P * Q - Q * P


def useful_equation(t: UniPoly, i: int) -> WeylElement:
    """Closed form of ``[t(Y), X^i] = sum_{m>=1} C(i, m) X^(i-m) t^(m)(Y)``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    dom = t.domain
    out = WeylElement.zero(dom)
    deriv = t
    for m in range(1, i + 1):
        deriv = deriv.derivative()
        if not deriv.coeffs:
            break
        k = comb(i, m)
        out = out + WeylElement._raw(
            dom, {(i - m, j): c * k for j, c in enumerate(deriv.coeffs) if c}
        )
    return out


def is_dixmier_pair(A: WeylElement, B: WeylElement) -> bool:
    """True iff ``[A, B]`` is a unit of the coefficient domain."""
    C = commutator(A, B)
    return C.is_constant() and A.domain.is_unit(C.constant_term())


def dixmier_mate_search_bounded(A: WeylElement, max_total_degree: int, *,
                                max_unknowns=DEFAULT_MAX_UNKNOWNS):
    """``B`` of total degree at most the bound with ``[A, B] = 1``, or ``None``.

    ``None`` means none within the bound, not global nonexistence.
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be >= 0")
    dom = A.domain
    basis = _monomial_basis(max_total_degree)
    columns = [commutator(A, WeylElement.monomial(dom, i, j)).terms for i, j in basis]
    sol = solve_unit_image(dom, columns, {(0, 0): dom.one}, max_unknowns=max_unknowns)
    if sol is None:
        return None
    B = WeylElement(dom, {m: c for m, c in zip(basis, sol)})
    if not is_dixmier_pair(A, B):
        raise InternalContradiction("mate search produced a non-mate", {"A": str(A), "B": str(B)})
    return B


def weyl_express_in_A(A: WeylElement, w: WeylElement) -> InAResult:
    """Decide ``w in Q(D)[A]`` by peeling top forms of the total-degree filtration.

    ``w`` may have coefficients in the fraction field of ``A``'s domain.
    """
    dom = A.domain
    if w.domain not in (dom, dom.field):
        raise DomainMismatch(f"{dom.tag} vs {w.domain.tag}")
    Af, wf = A.to_field(), w.to_field()
    if commutator(Af, wf):
        raise NotCommuting("[A, w] != 0")
    if Af.is_constant():
        if not wf.is_constant():
            raise NotInQA("constant", "A is constant but w is not")
        return InAResult.from_coefficients(dom, [wf.constant_term()])
    coeffs = peel(
        Af, wf, WeylElement.degree_and_lead,
        WeylElement.const(Af.domain, 1), lambda p, q: p * q,
    )
    return InAResult.from_coefficients(dom, _coeff_list(coeffs))


# --- automorphisms ------------------------------------------------------------

def _relation_check(dom, imgX, imgY, step):
    if commutator(imgY, imgX) != WeylElement.const(dom, 1):
        raise RelationViolation(f"{step!r} does not preserve [Y, X] = 1 over {dom.tag}")


@dataclass(frozen=True)
class ShearYW:
    """``(X, Y) -> (X, Y + f(X))``."""

    f: UniPoly

    def images(self, dom):
        X = WeylElement.X(dom)
        return X, WeylElement.Y(dom) + eval_univariate(self.f, X)

    def inverse(self, dom):
        return ShearYW(-self.f)


@dataclass(frozen=True)
class ShearXW:
    """``(X, Y) -> (X + g(Y), Y)``."""

    g: UniPoly

    def images(self, dom):
        Y = WeylElement.Y(dom)
        return WeylElement.X(dom) + eval_univariate(self.g, Y), Y

    def inverse(self, dom):
        return ShearXW(-self.g)


@dataclass(frozen=True)
class UnitScale:
    """``(X, Y) -> (lam X, lam^-1 Y)`` for a unit ``lam``."""

    lam: object

    def images(self, dom):
        inv = dom.divexact(dom.one, dom.convert(self.lam))
        return WeylElement.X(dom).scale(self.lam), WeylElement.Y(dom).scale(inv)

    def inverse(self, dom):
        return UnitScale(dom.divexact(dom.one, dom.convert(self.lam)))


@dataclass(frozen=True)
class LinearSymplectic:
    """``(X, Y) -> (m11 X + m12 Y, m21 X + m22 Y)`` with ``m11 m22 - m12 m21 = 1``."""

    m11: object
    m12: object
    m21: object
    m22: object

    def images(self, dom):
        X, Y = WeylElement.X(dom), WeylElement.Y(dom)
        return X.scale(self.m11) + Y.scale(self.m12), X.scale(self.m21) + Y.scale(self.m22)

    def inverse(self, dom):
        return LinearSymplectic(self.m22, -self.m12, -self.m21, self.m11)


@dataclass(frozen=True)
class WeylAutomorphism:
    """Word of elementary Weyl automorphisms, applied left to right.

    Each step is checked against ``[Y, X] = 1`` at construction.
    """

    domain: object
    word: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        for step in self.word:
            f = getattr(step, "f", None) or getattr(step, "g", None)
            if f is not None and f.domain != self.domain:
                raise DomainMismatch(f"step polynomial over {f.domain.tag}, word over {self.domain.tag}")
            try:
                imgX, imgY = step.images(self.domain)
            except Exception as exc:
                raise RelationViolation(f"{step!r} is not defined over {self.domain.tag}: {exc}") from exc
            _relation_check(self.domain, imgX, imgY, step)

    @classmethod
    def identity(cls, domain):
        return cls(domain, ())

    def images(self):
        dom = self.domain
        return weyl_apply(self, WeylElement.X(dom)), weyl_apply(self, WeylElement.Y(dom))


def _weyl_substitute(P, imgX, imgY):
    """``sum c_ij imgX^i imgY^j``, keeping the X-before-Y order of each term."""
    dom = P.domain
    if not P.terms:
        return P
    max_i = max(i for i, _ in P.terms)
    max_j = max(j for _, j in P.terms)
    xp = [WeylElement.const(dom, 1)]
    for _ in range(max_i):
        xp.append(xp[-1] * imgX)
    yp = [WeylElement.const(dom, 1)]
    for _ in range(max_j):
        yp.append(yp[-1] * imgY)
    # group by i so each X-power multiplies a single Y-combination
    rows = {}
    for (i, j), c in P.terms.items():
        rows.setdefault(i, {})[j] = c
    out = WeylElement.zero(dom)
    for i, row in rows.items():
        acc = {}
        for j, c in row.items():
            for m, v in yp[j].terms.items():
                acc[m] = acc[m] + c * v if m in acc else c * v
        out = out + xp[i] * WeylElement(dom, acc)
    return out


def weyl_apply(g: WeylAutomorphism, P: WeylElement) -> WeylElement:
    if g.domain != P.domain:
        raise DomainMismatch(f"automorphism over {g.domain.tag}, element over {P.domain.tag}")
    for step in g.word:
        imgX, imgY = step.images(g.domain)
        P = _weyl_substitute(P, imgX, imgY)
    return P


def weyl_invert(g: WeylAutomorphism) -> WeylAutomorphism:
    return WeylAutomorphism(g.domain, tuple(s.inverse(g.domain) for s in reversed(g.word)))


def weyl_membership_via_automorphism(g: WeylAutomorphism, w: WeylElement) -> InAResult:
    """Expand ``w`` in ``A = g(X)`` through ``u = g^{-1}(w)``, which must lie in ``D[X]``."""
    A = weyl_apply(g, WeylElement.X(g.domain))
    if commutator(A, w):
        raise NotCommuting("[A, w] != 0")
    u = weyl_apply(weyl_invert(g), w)
    if u.degree_in("Y") not in (NEG_INF, 0):
        raise InternalContradiction(
            "pull-back of a commuting element is not in D[X]",
            {"A": str(A), "w": str(w), "u": str(u), "word": repr(g.word)},
        )
    top = u.degree_in("X")
    coeffs = [] if top is NEG_INF else [u.terms.get((i, 0), 0) for i in range(top + 1)]
    return InAResult.from_coefficients(g.domain, coeffs)


def dixmier_automorphism_images(A: WeylElement, B: WeylElement):
    """Images ``(A, lam B)`` of ``X``, ``Y`` for a Dixmier pair, with ``lam = [B, A]^-1``.

    The scaling makes ``[lam B, A] = 1``, the relation an endomorphism must keep.
    """
    if not is_dixmier_pair(A, B):
        raise ValueError("(A, B) is not a Dixmier pair")
    dom = A.domain
    lam = dom.divexact(dom.one, commutator(B, A).constant_term())
    return A, B.scale(lam)


def verify_weyl_instance(A: WeylElement, B: WeylElement, w: WeylElement) -> CCVerdict:
    """Weyl counterpart of :func:`ccjac.centralizer.verify_cc_instance`."""
    A._same(B)
    A._same(w)
    pair_ok = is_dixmier_pair(A, B)
    comm = not commutator(A, w)
    notes = []
    in_qa = None
    if comm:
        try:
            in_qa = weyl_express_in_A(A, w)
        except NotInQA as exc:
            if pair_ok:
                raise InternalContradiction(
                    "Dixmier pair with commuting w outside Q(D)[A]",
                    {"A": str(A), "B": str(B), "w": str(w), "stage": exc.stage,
                     "domain": A.domain.tag},
                ) from exc
            notes.append(f"w not in Q(D)[A]: {exc.stage} stage")
    else:
        notes.append("[A, w] != 0")
    if not pair_ok:
        notes.append("(A, B) is not a Dixmier pair")
    in_da = in_qa is not None and in_qa.in_base_domain
    return CCVerdict(pair_ok, comm, in_qa, in_da, "; ".join(notes))
