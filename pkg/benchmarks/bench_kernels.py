"""Compare the compiled and pure-Python product kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends; results are checked equal before
timings are printed.
"""

import argparse
import random
import timeit
from fractions import Fraction

from ccjac import _kernels_py

try:
    from ccjac import _kernels_c
except ImportError:
    _kernels_c = None


def dense(rng, degree, rational):
    out = {}
    for d in range(degree + 1):
        for i in range(d + 1):
            c = rng.randint(-9, 9)
            if rational and c:
                c = Fraction(c, rng.randint(1, 7))
            if c:
                out[(i, d - i)] = c
    return out


WORKLOADS = [
    ("poly_mul int deg 12 x 12", "poly_mul", 12, False),
    ("poly_mul rat deg 8 x 8", "poly_mul", 8, True),
    ("weyl_mul int deg 8 x 8", "weyl_mul", 8, False),
    ("weyl_mul rat deg 6 x 6", "weyl_mul", 6, True),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'workload':28s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn, deg, rational in WORKLOADS:
        p, q = dense(rng, deg, rational), dense(rng, deg, rational)
        py = getattr(_kernels_py, fn)
        t_py = min(timeit.repeat(lambda: py(p, q), number=1, repeat=args.repeat)) * 1e3
        if _kernels_c is None:
            print(f"{name:28s} {t_py:10.2f} {'n/a':>10s} {'n/a':>8s}")
            continue
        c = getattr(_kernels_c, fn)
        assert c(p, q) == py(p, q), f"backends disagree on {name}"
        t_c = min(timeit.repeat(lambda: c(p, q), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:28s} {t_py:10.2f} {t_c:10.2f} {t_py / t_c:7.2f}x")


if __name__ == "__main__":
    main()
