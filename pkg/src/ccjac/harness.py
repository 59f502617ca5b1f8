"""Random instance generation and fuzz campaigns.

Every instance is drawn from its own generator seeded by
``"{seed}:{group}:{index}"``, so a campaign is a pure function of its
configuration and instances can run in any order or in parallel.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .centralizer import (
    AffineUnit, ShearX, ShearY, TameAutomorphism, express_in_A, mate_search_bounded,
    membership_via_automorphism, verify_cc_instance,
)
from .coeff import Kind, Param, domain_from_tag
from .errors import CCJacError, InternalContradiction
from .instance import word_to_json
from .poly2 import BiPoly, UniPoly, eval_univariate
from .report import Report, scalars
from .weyl import (
    LinearSymplectic, ShearXW, ShearYW, UnitScale, WeylAutomorphism, WeylElement,
    verify_weyl_instance, weyl_membership_via_automorphism,
)

__all__ = [
    "GenConfig", "CampaignReport", "gen_tame_pair", "gen_centralizer_element",
    "gen_weyl_pair", "gen_weyl_centralizer_element", "run_instance", "campaign", "PREAMBLE",
]

PREAMBLE = (
    "Generated pairs are images of x, y (or X, Y) under random tame automorphisms. "
    "No construction of a Jacobian pair that is not an automorphism pair is known, "
    "so that case is not exercised."
)

_D0_MONOMIALS = [(2, 0), (1, 1), (0, 2), (3, 0), (0, 3)]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    word_length_max: int = 4
    shear_degree_max: int = 3
    coefficient_bound: int = 3
    p_degree_max: int = 4
    instance_count: int = 100
    domain: str = "int"
    degree_budget: int = 12
    weyl: bool = True
    jobs: int = 1

    def __post_init__(self):
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        for name in ("word_length_max", "p_degree_max", "instance_count"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        for name in ("shear_degree_max", "coefficient_bound", "degree_budget", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        domain_from_tag(self.domain)

    @property
    def dom(self):
        return domain_from_tag(self.domain)

    def rng(self, group, index):
        return random.Random(f"{self.seed}:{group}:{index}")


# --- random scalars -----------------------------------------------------------

def _rand_scalar(rng, dom, bound):
    n = rng.randint(-bound, bound)
    if dom.kind is Kind.RATIONAL and n and rng.random() < 0.3:
        return Fraction(n, rng.randint(1, bound))
    if dom.is_parametric and n and rng.random() < 0.5:
        return dom.convert(Param({rng.choice(_D0_MONOMIALS): n}))
    return dom.from_int(n)


def _rand_unit(rng, dom, bound):
    sign = rng.choice((1, -1))
    if dom.kind is Kind.INTEGER:
        return sign
    return dom.convert(Fraction(sign * rng.randint(1, bound), rng.randint(1, bound)))


def _rand_uni(rng, dom, max_degree, bound):
    return UniPoly(dom, [_rand_scalar(rng, dom, bound) for _ in range(rng.randint(0, max_degree) + 1)])


def _rand_shear_poly(rng, dom, max_degree, bound):
    """Random polynomial of degree 1..max_degree with a nonzero top coefficient."""
    cs = [_rand_scalar(rng, dom, bound) for _ in range(rng.randint(1, max_degree))]
    top = dom.from_int(rng.choice((1, -1)) * rng.randint(1, bound))
    return UniPoly(dom, cs + [top])


# --- commutative generation ---------------------------------------------------

def _rand_tame_step(rng, cfg, dom):
    bound = cfg.coefficient_bound
    kind = rng.choice(("affine", "shear_x", "shear_y"))
    if kind == "affine":
        u1, u2 = _rand_unit(rng, dom, bound), _rand_unit(rng, dom, bound)
        k = _rand_scalar(rng, dom, bound)
        shape = rng.choice(("upper", "lower", "swap"))
        if shape == "upper":
            m = (u1, k, dom.zero, u2)
        elif shape == "lower":
            m = (u1, dom.zero, k, u2)
        else:
            m = (dom.zero, u1, u2, dom.zero)
        return AffineUnit(*m, _rand_scalar(rng, dom, bound), _rand_scalar(rng, dom, bound))
    f = _rand_shear_poly(rng, dom, cfg.shear_degree_max, bound)
    return ShearX(f) if kind == "shear_x" else ShearY(f)


def _grow_word(rng, cfg, dom, make_step, build):
    """Append random steps, resampling any step that breaks the degree budget."""
    word = []
    n = cfg.word_length_max
    for _ in range(rng.randint(n // 2, n) if n else 0):
        for _attempt in range(8):
            step = make_step(rng, cfg, dom)
            g = build(dom, word + [step])
            A, B = g.images()
            if max(A.total_degree(), B.total_degree()) <= cfg.degree_budget:
                word.append(step)
                break
    g = build(dom, word)
    return (g, *g.images())


def gen_tame_pair(cfg: GenConfig, rng=None):
    """A random tame automorphism ``g`` with ``A = g(x)``, ``B = g(y)``."""
    rng = rng or random.Random(cfg.seed)
    return _grow_word(rng, cfg, cfg.dom, _rand_tame_step, TameAutomorphism)


def gen_centralizer_element(A: BiPoly, cfg: GenConfig, rng=None):
    """``(w, p)`` with ``w = p(A)`` for a random ``p``; ``Jac(A, w) = 0`` by construction."""
    rng = rng or random.Random(cfg.seed)
    p = _rand_uni(rng, A.domain, cfg.p_degree_max, cfg.coefficient_bound)
    return eval_univariate(p, A), p


# --- Weyl generation ----------------------------------------------------------

def _rand_weyl_step(rng, cfg, dom):
    bound = cfg.coefficient_bound
    kind = rng.choice(("shear_x", "shear_y", "scale", "symplectic"))
    if kind == "scale":
        return UnitScale(_rand_unit(rng, dom, bound))
    if kind == "symplectic":
        k = _rand_scalar(rng, dom, bound)
        shape = rng.choice(("upper", "lower", "rotate"))
        if shape == "upper":
            return LinearSymplectic(dom.one, k, dom.zero, dom.one)
        if shape == "lower":
            return LinearSymplectic(dom.one, dom.zero, k, dom.one)
        return LinearSymplectic(dom.zero, dom.one, -dom.one, dom.zero)
    f = _rand_shear_poly(rng, dom, cfg.shear_degree_max, bound)
    return ShearXW(f) if kind == "shear_x" else ShearYW(f)


def gen_weyl_pair(cfg: GenConfig, rng=None):
    """A random ``WeylAutomorphism`` ``g`` with ``A = g(X)``, ``B = g(Y)``."""
    rng = rng or random.Random(cfg.seed)
    return _grow_word(rng, cfg, cfg.dom, _rand_weyl_step, WeylAutomorphism)


def gen_weyl_centralizer_element(A: WeylElement, cfg: GenConfig, rng=None):
    rng = rng or random.Random(cfg.seed)
    p = _rand_uni(rng, A.domain, cfg.p_degree_max, cfg.coefficient_bound)
    return eval_univariate(p, A), p


# --- instances ----------------------------------------------------------------

def _field_coeffs(p):
    f = p.domain.field
    return tuple(f.convert(c) for c in p.coeffs)


def _repro(**kw):
    out = {}
    for k, v in kw.items():
        if isinstance(v, (TameAutomorphism, WeylAutomorphism)):
            out[k] = json.dumps(word_to_json(v), sort_keys=True)
        elif isinstance(v, UniPoly):
            out[k] = scalars(v.coeffs)
        else:
            out[k] = str(v)
    return out


def _check_automorphism_instance(A, B, w, g, p, verify, via_conjugation):
    verdict = verify(A, B, w)
    conj = via_conjugation(g, w)
    expected = _field_coeffs(p)
    problems = []
    if not verdict.pair_ok:
        problems.append("generated pair is not a pair")
    if not verdict.commutes:
        problems.append("w does not commute with A")
    if verdict.in_QA is None or verdict.in_QA.coefficients != expected:
        problems.append("peeling coefficients differ from p")
    if conj.coefficients != expected:
        problems.append("conjugation coefficients differ from p")
    if not verdict.in_DA or not conj.in_base_domain:
        problems.append("in_DA is false")
    return problems


def _instance_tame(cfg, index):
    rng = cfg.rng("tame", index)
    g, A, B = gen_tame_pair(cfg, rng)
    w, p = gen_centralizer_element(A, cfg, rng)
    repro = lambda: _repro(A=A, B=B, w=w, p=p, word=g)  # noqa: E731
    return _run_checked(lambda: _check_automorphism_instance(
        A, B, w, g, p, verify_cc_instance, membership_via_automorphism), repro)


def _instance_weyl(cfg, index):
    rng = cfg.rng("weyl", index)
    g, A, B = gen_weyl_pair(cfg, rng)
    w, p = gen_weyl_centralizer_element(A, cfg, rng)
    repro = lambda: _repro(A=A, B=B, w=w, p=p, word=g)  # noqa: E731
    return _run_checked(lambda: _check_automorphism_instance(
        A, B, w, g, p, verify_weyl_instance, weyl_membership_via_automorphism), repro)


def _instance_scaled(cfg, index):
    """``w = p(A) / k``: coefficients leave ``D`` unless ``k`` divides them."""
    rng = cfg.rng("scaled", index)
    g, A, B = gen_tame_pair(cfg, rng)
    w, p = gen_centralizer_element(A, cfg, rng)
    k = rng.randint(2, cfg.coefficient_bound + 1)
    dom = A.domain
    wq = w.to_field().scale(Fraction(1, k))
    expected = tuple(c / k for c in _field_coeffs(p))
    expected_in_d = all(dom.fraction_in_domain(c) is not None for c in expected)

    def check():
        res = express_in_A(A, wq)
        problems = []
        if res.coefficients != expected:
            problems.append("peeling coefficients differ from p/k")
        if res.in_base_domain != expected_in_d:
            problems.append("in_DA verdict differs from the expected one")
        return problems

    return _run_checked(check, lambda: _repro(A=A, B=B, w=wq, p=p, k=k, word=g))


def _instance_control(cfg, index):
    """``A = c + m*y`` with ``m`` a non-unit: never a pair, ``w = y + k`` commutes."""
    rng = cfg.rng("control", index)
    dom = cfg.dom
    bound = cfg.coefficient_bound
    if dom.kind is Kind.INTEGER:
        m = rng.choice((1, -1)) * rng.randint(2, bound + 1)
    else:
        m = dom.convert(Param({rng.choice(_D0_MONOMIALS): rng.choice((1, -1)) * rng.randint(1, bound)}))
    c = _rand_scalar(rng, dom, bound)
    k = _rand_scalar(rng, dom, bound)
    y = BiPoly.y(dom)
    A = y.scale(m) + c
    B = -BiPoly.x(dom)
    w = y + k
    f = dom.field
    expected = (f.convert(k) - f.convert(c) / f.convert(m), f.one / f.convert(m))

    def check():
        verdict = verify_cc_instance(A, B, w)
        problems = []
        if verdict.pair_ok:
            problems.append("control pair reported as a pair")
        if not verdict.commutes or verdict.in_QA is None:
            problems.append("control w should commute and lie in Q(D)[A]")
        elif verdict.in_QA.coefficients != expected:
            problems.append("control coefficients differ")
        if verdict.in_DA:
            problems.append("control in_DA should be false")
        if mate_search_bounded(A, 2) is not None:
            problems.append("control A has a mate")
        return problems

    return _run_checked(check, lambda: _repro(A=A, B=B, w=w))


def _fingerprint(data):
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]


def _run_checked(check, repro):
    """Run ``check``; every record carries a fingerprint of the instance data."""
    data = repro()
    fp = _fingerprint(data)
    try:
        problems = check()
    except InternalContradiction as exc:
        return {"status": "contradiction", "fingerprint": fp, "detail": str(exc),
                "reproduction": {**data, **{k: str(v) for k, v in exc.reproduction.items()}}}
    except CCJacError as exc:
        return {"status": "fail", "fingerprint": fp, "detail": f"{type(exc).__name__}: {exc}",
                "reproduction": data}
    if problems:
        return {"status": "fail", "fingerprint": fp, "detail": "; ".join(problems), "reproduction": data}
    return {"status": "pass", "fingerprint": fp}


_RUNNERS = {
    "tame": _instance_tame,
    "weyl": _instance_weyl,
    "scaled": _instance_scaled,
    "control": _instance_control,
}


def run_instance(cfg: GenConfig, group: str, index: int) -> dict:
    """Run one instance; the record depends only on ``cfg``, ``group`` and ``index``."""
    rec = _RUNNERS[group](cfg, index)
    return {"group": group, "index": index, **rec}


def _run_task(args):
    return run_instance(*args)


# --- campaigns ----------------------------------------------------------------

def _group_sizes(cfg):
    n = cfg.instance_count
    dom = cfg.dom
    sizes = {"tame": n}
    if cfg.weyl:
        sizes["weyl"] = n
    if not dom.is_field:
        sizes["scaled"] = n // 10
        sizes["control"] = n // 10
    return sizes


@dataclass
class CampaignReport:
    config: GenConfig
    groups: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    contradictions: list = field(default_factory=list)
    digest: str = ""

    @property
    def ok(self):
        return not self.failures and not self.contradictions

    def to_report(self):
        r = Report("fuzz")
        r["preamble"] = PREAMBLE
        r["config"] = {k: v for k, v in asdict(self.config).items() if k != "jobs"}
        r["groups"] = self.groups
        r["failures"] = self.failures
        r["contradictions"] = self.contradictions
        r["digest"] = self.digest
        r["ok"] = self.ok
        return r


def campaign(cfg: GenConfig) -> CampaignReport:
    """Run every group; records are merged in (group, index) order."""
    tasks = [(cfg, g, i) for g, n in _group_sizes(cfg).items() for i in range(n)]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))
    else:
        records = [_run_task(t) for t in tasks]
    out = CampaignReport(cfg)
    h = hashlib.sha256()
    for rec in records:
        grp = out.groups.setdefault(rec["group"], {"count": 0, "pass": 0, "fail": 0, "contradiction": 0})
        grp["count"] += 1
        grp[rec["status"]] += 1
        if rec["status"] == "fail":
            out.failures.append(rec)
        elif rec["status"] == "contradiction":
            out.contradictions.append(rec)
        h.update(json.dumps(rec, sort_keys=True).encode())
    out.digest = h.hexdigest()
    return out
