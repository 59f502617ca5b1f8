"""Differential tests: the compiled kernels must agree with the pure-Python ones."""

import random
from fractions import Fraction

import pytest

from ccjac import _kernels_py as py
from ccjac import kernels
from ccjac.coeff import Param

c_kernels = pytest.importorskip("ccjac._kernels_c")


def rand_dict(rng, n, degree, make):
    out = {}
    for _ in range(n):
        c = make()
        if c:
            out[(rng.randint(0, degree), rng.randint(0, degree))] = c
    return out


MAKERS = {
    "small": lambda rng: lambda: rng.randint(-9, 9),
    "int64-edge": lambda rng: lambda: rng.choice((1, -1)) * rng.randint(2 ** 29, 2 ** 31),
    "huge": lambda rng: lambda: rng.randint(-(10 ** 30), 10 ** 30),
    "rational": lambda rng: lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
    "param": lambda rng: lambda: Param({(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)}),
}


@pytest.mark.parametrize("kind", sorted(MAKERS))
def test_poly_and_weyl_mul_agree(kind):
    rng = random.Random(kind)
    make = MAKERS[kind](rng)
    for _ in range(150):
        p = rand_dict(rng, rng.randint(0, 12), 6, make)
        q = rand_dict(rng, rng.randint(0, 12), 6, make)
        assert c_kernels.poly_mul(p, q) == py.poly_mul(p, q)
        assert c_kernels.weyl_mul(p, q) == py.weyl_mul(p, q)


def test_overflow_boundary_values():
    big = 2 ** 62
    for a, b in [(2 ** 31, 2 ** 31), (2 ** 31 - 1, 2 ** 31 - 1), (big - 1, 1), (big, 1),
                 (-(2 ** 40), 2 ** 21), (3 ** 39, 3)]:
        p = {(0, 0): a, (1, 0): -a, (0, 3): a}
        q = {(0, 0): b, (2, 1): b, (1, 0): -b}
        assert c_kernels.poly_mul(p, q) == py.poly_mul(p, q)
        assert c_kernels.weyl_mul(p, q) == py.weyl_mul(p, q)
    # many equal terms landing in one cell
    p = {(i, 10 - i): 2 ** 28 for i in range(11)}
    q = {(10 - i, i): 2 ** 28 for i in range(11)}
    assert c_kernels.poly_mul(p, q) == py.poly_mul(p, q)
    assert c_kernels.weyl_mul(p, q) == py.weyl_mul(p, q)


def test_results_have_no_zero_coefficients_and_python_ints():
    p, q = {(1, 0): 1, (0, 1): 1}, {(1, 0): 1, (0, 1): -1}
    got = c_kernels.poly_mul(p, q)
    assert got == {(2, 0): 1, (0, 2): -1}
    assert all(type(v) is int for v in got.values())
    assert c_kernels.weyl_mul({(0, 1): 1}, {(1, 0): 1}) == {(1, 1): 1, (0, 0): 1}


def test_reorder_coefficients_agree():
    for j in range(8):
        for i in range(8):
            assert c_kernels.reorder_coefficients(j, i) == py.reorder_coefficients(j, i)


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.poly_mul({(0, 0): 2}, {(1, 1): 3}) == {(1, 1): 6}


def test_pure_python_fallback_end_to_end():
    import os
    import subprocess
    import sys
    env = {**os.environ, "CCJAC_PURE_PYTHON": "1"}
    code = ("from ccjac import kernels; from ccjac.cli import run_command; "
            "c, out, _ = run_command(['weyl', 'mul', 'Y^2', 'X^2']); "
            "print(kernels.BACKEND, out.strip())")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "python product: X^2*Y^2 + 4*X*Y + 2"
