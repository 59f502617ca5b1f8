"""The ten acceptance criteria, each timed against its runtime limit.

Every criterion records one ``PASS``/``FAIL`` line; the lines are printed in
the terminal summary (and immediately with ``-s``).
"""

import json
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE_LINES

from ccjac.centralizer import express_in_A, membership_via_automorphism
from ccjac.cli import run_command
from ccjac.coeff import D0, QQ, ZZ
from ccjac.expr import parse_poly, parse_weyl
from ccjac.harness import (
    GenConfig, gen_centralizer_element, gen_tame_pair, gen_weyl_centralizer_element,
    gen_weyl_pair,
)
from ccjac.poly2 import BiPoly, UniPoly, eval_at_origin, eval_univariate, jacobian, partial
from ccjac.weyl import (
    WeylElement, commutator, useful_equation, weyl_express_in_A,
    weyl_membership_via_automorphism,
)

from helpers import rand_d0, rand_poly, rand_weyl


@contextmanager
def criterion(n, title, limit=None):
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = limit is None or elapsed < limit
        detail = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
        if not ok:
            raise AssertionError(f"criterion {n} took {elapsed:.2f}s, limit {limit}s")
    except AssertionError as exc:
        detail = detail or f"assertion failed: {exc}"
        raise
    finally:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)


def cli(*argv):
    code, out, err = run_command(list(argv) + ["--format", "structured"])
    assert not err or code == 3, err
    return code, json.loads(out)["result"]


def test_criterion_01_linear_commutative_example():
    with criterion(1, "linear commutative non-counterexample", 1):
        code, r = cli("in-a", "--domain", "int", "2+3*y", "1+y")
        assert code == 1
        assert r["coefficients"] == ["1/3", "1/3"]
        assert r["clearing_denominator"] == "3" and r["in_da"] is False
        code, r = cli("mate-search", "--domain", "int", "--max-deg", "6", "2+3*y")
        assert code == 1 and r["mate"] is None
        code, r = cli("mate-search", "--domain", "rat", "--max-deg", "1", "2+3*y")
        assert code == 0 and r["mate"] is not None
        J = jacobian(parse_poly("2+3*y", QQ), parse_poly(r["mate"], QQ))
        assert J.is_constant() and QQ.is_unit(J.constant_term())


def test_criterion_02_square_commutative_example():
    with criterion(2, "square commutative non-counterexample over D0", 5):
        rng = random.Random("criterion-2")
        A = parse_poly("(a*x+b*y)^2", D0)
        L1 = parse_poly("a^2*x + a*b*y", D0)
        L2 = parse_poly("b^2*y + a*b*x", D0)
        for _ in range(20):
            B = BiPoly(D0, {(i, d - i): rand_d0(rng) for d in range(4) for i in range(d + 1)},
                       check=True)
            J = jacobian(A, B)
            assert J.scale(Fraction(1, 2)) == L1 * partial(B, "y") - L2 * partial(B, "x")
            assert not eval_at_origin(J)
        code, r = cli("in-a", "--domain", "d0", "(a*x+b*y)^2", "(a*x+b*y)^3")
        assert code == 1 and r["in_qa"] is False and r["stage"] == "degree"


def test_criterion_03_linear_weyl_example():
    with criterion(3, "linear Weyl non-counterexample", 5):
        code, r = cli("weyl", "in-a", "--domain", "int", "2+3*Y", "1+Y")
        assert code == 1 and r["coefficients"] == ["1/3", "1/3"] and r["in_da"] is False
        rng = random.Random("criterion-3")
        A = parse_weyl("2+3*Y", ZZ)
        for _ in range(50):
            B = rand_weyl(rng, ZZ, degree=4)
            expect = WeylElement(ZZ, {(i - 1, j): -3 * i * c for (i, j), c in B.terms.items() if i})
            assert commutator(B, A) == expect
        code, r = cli("weyl", "mate-search", "--domain", "int", "--max-deg", "6", "2+3*Y")
        assert code == 1 and r["mate"] is None


def test_criterion_04_square_weyl_example():
    with criterion(4, "square Weyl non-counterexample over D0", 30):
        code, r = cli("weyl", "in-a", "--domain", "d0", "(a*X+b*Y)^2", "(a*X+b*Y)^3")
        assert code == 1 and r["in_qa"] is False and r["stage"] == "degree"
        code, r = cli("weyl", "mate-search", "--domain", "d0", "--max-deg", "4", "(a*X+b*Y)^2")
        assert code == 1 and r["mate"] is None


def test_criterion_05_chain_rule():
    with criterion(5, "chain rule on 200 random triples over Q", 10):
        rng = random.Random("criterion-5")
        for _ in range(200):
            h = rand_poly(rng, QQ, degree=3)
            B = rand_poly(rng, QQ, degree=3)
            u = UniPoly(QQ, [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(5)])
            lhs = jacobian(eval_univariate(u, h), B)
            assert lhs == eval_univariate(u.derivative(), h) * jacobian(h, B)


def test_criterion_06_useful_equation():
    with criterion(6, "useful equation for i <= 6 and 50 random t", 10):
        rng = random.Random("criterion-6")
        Y = WeylElement.Y(ZZ)
        for _ in range(50):
            t = UniPoly(ZZ, [rng.randint(-9, 9) for _ in range(7)])
            tY = eval_univariate(t, Y)
            for i in range(7):
                assert useful_equation(t, i) == commutator(tY, WeylElement.monomial(ZZ, i, 0))


def test_criterion_07_automorphism_round_trips():
    with criterion(7, "100 tame and 100 Weyl automorphism instances over Z", 60):
        cfg = GenConfig(seed=42)
        for i in range(100):
            rng = cfg.rng("criterion-7-tame", i)
            g, A, B = gen_tame_pair(cfg, rng)
            w, p = gen_centralizer_element(A, cfg, rng)
            peeled = express_in_A(A, w)
            conj = membership_via_automorphism(g, w)
            assert peeled.in_base_domain and conj.in_base_domain
            assert peeled.coefficients == conj.coefficients == p.coeffs
        for i in range(100):
            rng = cfg.rng("criterion-7-weyl", i)
            g, A, B = gen_weyl_pair(cfg, rng)
            w, p = gen_weyl_centralizer_element(A, cfg, rng)
            peeled = weyl_express_in_A(A, w)
            conj = weyl_membership_via_automorphism(g, w)
            assert peeled.in_base_domain and conj.in_base_domain
            assert peeled.coefficients == conj.coefficients == p.coeffs
        code, r = cli("fuzz", "--seed", "42", "--count", "100")
        assert code == 0 and r["contradictions"] == [] and r["failures"] == []
        assert r["groups"]["tame"]["pass"] == 100 and r["groups"]["weyl"]["pass"] == 100


def _act(P, f):
    out = {}
    for (i, j), c in P.terms.items():
        g = f
        for _ in range(j):
            g = {n - 1: v * n for n, v in g.items() if n}
        for n, v in g.items():
            out[n + i] = out.get(n + i, 0) + c * v
    return {n: v for n, v in out.items() if v}


def test_criterion_08_normal_ordering_oracle():
    with criterion(8, "normal ordering against the differential-operator action", 10):
        rng = random.Random("criterion-8")
        for _ in range(200):
            P = rand_weyl(rng, ZZ, degree=5, density=0.4)
            Q = rand_weyl(rng, ZZ, degree=5, density=0.4)
            PQ = P * Q
            for n in range(11):
                assert _act(PQ, {n: 1}) == _act(P, _act(Q, {n: 1}))


def test_criterion_09_axiom_suites():
    with criterion(9, "derivation, Jacobian, Weyl ring and bracket axioms", 30):
        rng = random.Random("criterion-9")
        for _ in range(200):
            p, q, r = (rand_poly(rng, QQ, degree=3) for _ in range(3))
            for v in ("x", "y"):
                assert partial(p * q, v) == partial(p, v) * q + p * partial(q, v)
                assert partial(p + q, v) == partial(p, v) + partial(q, v)
            assert jacobian(p, q) == -jacobian(q, p)
            assert jacobian(p, q * r) == jacobian(p, q) * r + q * jacobian(p, r)
        for _ in range(200):
            P, Q, R = (rand_weyl(rng, ZZ, degree=3, density=0.5) for _ in range(3))
            assert (P * Q) * R == P * (Q * R)
            assert not (commutator(commutator(P, Q), R) + commutator(commutator(Q, R), P)
                        + commutator(commutator(R, P), Q))
            assert commutator(P, Q * R) == commutator(P, Q) * R + Q * commutator(P, R)
            if P and Q:
                assert (P * Q).leading_form() == P.leading_form() * Q.leading_form()


def _cli_bytes(*argv):
    env = {k: v for k, v in os.environ.items() if k != "CCJAC_PURE_PYTHON"}
    proc = subprocess.run([sys.executable, "-m", "ccjac", *argv, "--format", "structured"],
                          capture_output=True, env=env, check=False)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_criterion_10_determinism():
    with criterion(10, "byte-identical structured reports across two runs"):
        for argv in (["verify-paper-examples"], ["fuzz", "--seed", "42", "--count", "100"]):
            first, second = _cli_bytes(*argv), _cli_bytes(*argv)
            assert first == second and first
