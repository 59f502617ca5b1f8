import random
from fractions import Fraction

import pytest

from ccjac.coeff import D0, QQ, ZZ
from ccjac.errors import InternalContradiction, NotCommuting, NotInQA, RelationViolation
from ccjac.expr import parse_weyl
from ccjac.harness import GenConfig, gen_weyl_centralizer_element, gen_weyl_pair
from ccjac.poly2 import UniPoly, eval_univariate
from ccjac.weyl import (
    LinearSymplectic, ShearXW, ShearYW, UnitScale, WeylAutomorphism, WeylElement,
    commutator, dixmier_automorphism_images, dixmier_mate_search_bounded, is_dixmier_pair,
    useful_equation, verify_weyl_instance, weyl_apply, weyl_express_in_A, weyl_invert,
    weyl_membership_via_automorphism, weyl_mul,
)

from helpers import rand_uni, rand_weyl


def W(text, dom=ZZ):
    return parse_weyl(text, dom)


# --- independent oracle: X acts as t*, Y as d/dt on polynomials in t ----------

def _act_monomial(i, j, f):
    for _ in range(j):
        f = {n - 1: c * n for n, c in f.items() if n}
    return {n + i: c for n, c in f.items()}


def act(P, f):
    out = {}
    for (i, j), c in P.terms.items():
        for n, v in _act_monomial(i, j, f).items():
            out[n] = out.get(n, 0) + c * v
    return {n: c for n, c in out.items() if c}


def test_multiplication_examples():
    X, Y = WeylElement.X(ZZ), WeylElement.Y(ZZ)
    assert Y * X == W("X*Y + 1")
    assert X * Y == WeylElement.monomial(ZZ, 1, 1)
    assert str(weyl_mul(Y * Y, X * X)) == "X^2*Y^2 + 4*X*Y + 2"


def test_faithful_action_oracle_on_200_pairs():
    rng = random.Random(11)
    for _ in range(200):
        P = rand_weyl(rng, ZZ, degree=5, density=0.4)
        Q = rand_weyl(rng, ZZ, degree=5, density=0.4)
        PQ = P * Q
        for n in range(11):
            assert act(PQ, {n: 1}) == act(P, act(Q, {n: 1}))


def test_square_of_y_times_square_of_x_matches_oracle():
    prod = W("Y^2") * W("X^2")
    for n in range(5):
        assert act(prod, {n: 1}) == act(W("Y^2"), act(W("X^2"), {n: 1}))


def test_commutator_examples():
    assert commutator(W("Y"), W("X")) == WeylElement.const(ZZ, 1)
    P = W("X^2*Y + 3*Y^2")
    assert not commutator(P, P)
    # b_11 = 1 in the closed form gives -3 X^0 Y^1
    assert commutator(W("X*Y"), W("2+3*Y")) == W("-3*Y")


def test_ring_axioms_on_200_triples():
    rng = random.Random(12)
    for dom in (ZZ, QQ):
        for _ in range(100):
            P, Q, R = (rand_weyl(rng, dom, degree=3, density=0.5) for _ in range(3))
            assert (P * Q) * R == P * (Q * R)
            assert P * (Q + R) == P * Q + P * R
            assert (P + Q) * R == P * R + Q * R
            assert commutator(P, Q) == -commutator(Q, P)
            assert not (commutator(commutator(P, Q), R) + commutator(commutator(Q, R), P)
                        + commutator(commutator(R, P), Q))
            assert commutator(P, Q * R) == commutator(P, Q) * R + Q * commutator(P, R)


def test_ring_axioms_over_d0():
    rng = random.Random(13)
    for _ in range(20):
        P, Q, R = (rand_weyl(rng, D0, degree=2, density=0.5) for _ in range(3))
        assert (P * Q) * R == P * (Q * R)
        assert commutator(P, Q * R) == commutator(P, Q) * R + Q * commutator(P, R)


def test_useful_equation_examples():
    assert useful_equation(UniPoly(ZZ, [0, 1]), 2) == W("2*X")
    assert useful_equation(UniPoly(ZZ, [0, 0, 1]), 1) == W("2*Y")
    for i in range(5):
        assert not useful_equation(UniPoly(ZZ, [7]), i)
    with pytest.raises(ValueError):
        useful_equation(UniPoly(ZZ, [1]), -1)


def test_useful_equation_matches_commutator():
    rng = random.Random(14)
    Y = WeylElement.Y(ZZ)
    for _ in range(10):
        t = UniPoly(ZZ, [rng.randint(-5, 5) for _ in range(7)])
        tY = eval_univariate(t, Y)
        for i in range(7):
            assert useful_equation(t, i) == commutator(tY, WeylElement.monomial(ZZ, i, 0))


def test_bracket_closed_form_on_50_random_elements():
    rng = random.Random(15)
    A = W("2+3*Y")
    for _ in range(50):
        B = rand_weyl(rng, ZZ, degree=4)
        expect = WeylElement(ZZ, {(i - 1, j): -3 * i * c for (i, j), c in B.terms.items() if i})
        assert commutator(B, A) == expect


def test_leading_forms_multiply_on_200_pairs():
    rng = random.Random(16)
    for _ in range(200):
        P = rand_weyl(rng, ZZ, degree=4, density=0.5)
        Q = rand_weyl(rng, ZZ, degree=4, density=0.5)
        if not P or not Q:
            continue
        assert (P * Q).leading_form() == P.leading_form() * Q.leading_form()


def test_dixmier_pair_examples():
    assert is_dixmier_pair(W("Y"), W("X"))
    rng = random.Random(17)
    for _ in range(50):
        assert not is_dixmier_pair(W("2+3*Y"), rand_weyl(rng, ZZ, degree=3))
    assert not is_dixmier_pair(W("X^2"), W("X"))
    assert is_dixmier_pair(W("X", QQ), W("-Y/2", QQ)) and not is_dixmier_pair(W("X"), W("-2*Y"))


def test_dixmier_mate_search_examples():
    assert dixmier_mate_search_bounded(W("Y"), 1) == W("X")
    assert dixmier_mate_search_bounded(W("2+3*Y"), 6) is None
    assert dixmier_mate_search_bounded(W("(a*X+b*Y)^2", D0), 4) is None
    B = dixmier_mate_search_bounded(W("2+3*Y", QQ), 1)
    assert B is not None and commutator(W("2+3*Y", QQ), B) == WeylElement.const(QQ, 1)


def test_weyl_express_in_a_examples():
    res = weyl_express_in_A(W("2+3*Y"), W("1+Y"))
    assert res.coefficients == (Fraction(1, 3), Fraction(1, 3)) and not res.in_base_domain
    assert weyl_express_in_A(W("X"), W("X^3")).coefficients == (0, 0, 0, 1)
    with pytest.raises(NotInQA) as exc:
        weyl_express_in_A(W("(a*X+b*Y)^2", D0), W("(a*X+b*Y)^3", D0.field))
    assert exc.value.stage == "degree"
    with pytest.raises(NotCommuting):
        weyl_express_in_A(W("X"), W("Y"))
    with pytest.raises(NotInQA) as exc:
        weyl_express_in_A(WeylElement.const(ZZ, 2), W("X"))
    assert exc.value.stage == "constant"


def test_automorphism_examples():
    P = W("X^2*Y + 5")
    assert weyl_apply(WeylAutomorphism.identity(ZZ), P) == P
    g = WeylAutomorphism(ZZ, [ShearYW(UniPoly(ZZ, [0, 0, 1]))])
    X, Y = g.images()
    assert Y == W("Y + X^2")
    assert commutator(Y, X) == WeylElement.const(ZZ, 1)


def test_relation_violations_at_construction():
    with pytest.raises(RelationViolation):
        WeylAutomorphism(ZZ, [UnitScale(2)])
    with pytest.raises(RelationViolation):
        WeylAutomorphism(ZZ, [LinearSymplectic(1, 1, 1, 1)])
    WeylAutomorphism(QQ, [UnitScale(Fraction(2))])
    WeylAutomorphism(ZZ, [LinearSymplectic(2, 1, 1, 1), UnitScale(-1)])


def test_round_trip_on_100_random_automorphisms():
    cfg = GenConfig(seed=5, word_length_max=3)
    rng = random.Random(18)
    for i in range(100):
        g, A, B = gen_weyl_pair(cfg, cfg.rng("weyl-inverse", i))
        assert commutator(B, A) == WeylElement.const(ZZ, 1)
        P = rand_weyl(rng, ZZ, degree=2)
        h = weyl_invert(g)
        assert weyl_apply(h, weyl_apply(g, P)) == P


def test_membership_via_automorphism_examples():
    ident = WeylAutomorphism.identity(ZZ)
    assert weyl_membership_via_automorphism(ident, W("X^2+1")).coefficients == (1, 0, 1)
    g = WeylAutomorphism(ZZ, [ShearXW(UniPoly(ZZ, [0, 0, 1]))])
    A = weyl_apply(g, WeylElement.X(ZZ))
    assert A == W("X + Y^2")
    assert weyl_membership_via_automorphism(g, A * A).coefficients == (0, 0, 1)
    with pytest.raises(NotCommuting):
        weyl_membership_via_automorphism(g, W("Y"))


def test_peeling_agrees_with_automorphism_route():
    cfg = GenConfig(seed=6, word_length_max=3)
    for i in range(60):
        rng = cfg.rng("weyl-agree", i)
        g, A, B = gen_weyl_pair(cfg, rng)
        w, p = gen_weyl_centralizer_element(A, cfg, rng)
        peeled = weyl_express_in_A(A, w)
        conj = weyl_membership_via_automorphism(g, w)
        assert peeled.coefficients == conj.coefficients == p.coeffs
        assert peeled.in_base_domain
        v = verify_weyl_instance(A, B, w)
        assert v.pair_ok and v.commutes and v.in_DA


def test_commuting_elements_over_q_lie_in_q_of_a():
    rng = random.Random(19)
    cfg = GenConfig(seed=19, domain="rat", word_length_max=2, shear_degree_max=2)
    for i in range(30):
        g, A, B = gen_weyl_pair(cfg, cfg.rng("weyl-rat", i))
        p = rand_uni(rng, QQ, 3)
        w = eval_univariate(p, A)
        assert is_dixmier_pair(A, B)
        assert weyl_express_in_A(A, w).coefficients == p.coeffs


def test_dixmier_images_scale_by_inverse_bracket():
    A, B = W("X", QQ), W("-Y/2", QQ)
    imgX, imgY = dixmier_automorphism_images(A, B)
    assert imgX == A and commutator(imgY, imgX) == WeylElement.const(QQ, 1)
    with pytest.raises(ValueError):
        dixmier_automorphism_images(W("X"), W("X"))


def test_verify_weyl_instance_contradiction(monkeypatch):
    from ccjac import weyl

    def fake(A, w):
        raise NotInQA("quotient", "forced")

    monkeypatch.setattr(weyl, "weyl_express_in_A", fake)
    with pytest.raises(InternalContradiction):
        verify_weyl_instance(W("X"), W("Y"), W("X^2"))
