"""Instance files: versioned JSON documents naming a task and its inputs.

Every number is an exact string (``"3"``, ``"-1/2"``, ``"a^2 + b^2"``) so that
nothing passes through floating point. Example::

    {
      "version": "ccjac/1",
      "task": "cc-verify",
      "domain": "int",
      "A": "x + y^2",
      "B": "y",
      "w": "(x + y^2)^2",
      "word": [{"step": "shear_x", "f": ["0", "0", "1"]}]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

from .centralizer import AffineUnit, ShearX, ShearY, TameAutomorphism
from .coeff import domain_from_tag, render_scalar
from .errors import InstanceError
from .expr import parse_poly, parse_scalar, parse_weyl
from .poly2 import UniPoly
from .weyl import LinearSymplectic, ShearXW, ShearYW, UnitScale, WeylAutomorphism

__all__ = [
    "VERSION", "TASKS", "SCHEMA", "Instance", "load_instance", "parse_instance",
    "word_to_json", "word_from_json",
]

VERSION = "ccjac/1"
TASKS = (
    "jac", "pair", "dep", "in-a", "mate-search", "cc-verify", "auto",
    "weyl-comm", "weyl-in-a", "weyl-mate-search", "weyl-cc-verify",
)
COMMUTATIVE_STEPS = ("affine", "shear_x", "shear_y")
WEYL_STEPS = ("weyl_shear_x", "weyl_shear_y", "unit_scale", "symplectic")

_num = {"type": "string", "minLength": 1}
_pair = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_matrix = {"type": "array", "items": _pair, "minItems": 2, "maxItems": 2}
_coeffs = {"type": "array", "items": _num}


def _step(name, props, required):
    return {
        "type": "object",
        "properties": {"step": {"const": name}, **props},
        "required": ["step", *required],
        "additionalProperties": False,
    }


SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": VERSION},
        "task": {"enum": list(TASKS)},
        "domain": {"enum": ["int", "rat", "d0", "frac-d0"]},
        "A": {"type": "string"},
        "B": {"type": "string"},
        "w": {"type": "string"},
        "P": {"type": "string"},
        "max_degree": {"type": "integer", "minimum": 0},
        "word": {
            "type": "array",
            "items": {
                "oneOf": [
                    _step("affine", {"matrix": _matrix, "translation": _pair}, ["matrix"]),
                    _step("shear_x", {"f": _coeffs}, ["f"]),
                    _step("shear_y", {"f": _coeffs}, ["f"]),
                    _step("weyl_shear_x", {"f": _coeffs}, ["f"]),
                    _step("weyl_shear_y", {"f": _coeffs}, ["f"]),
                    _step("unit_scale", {"lambda": _num}, ["lambda"]),
                    _step("symplectic", {"matrix": _matrix}, ["matrix"]),
                ]
            },
        },
    },
    "required": ["version", "task", "domain"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Instance:
    task: str
    domain: object
    A: object = None
    B: object = None
    w: object = None
    P: object = None
    max_degree: int | None = None
    word: object = None

    @property
    def weyl(self):
        return self.task.startswith("weyl-") or isinstance(self.word, WeylAutomorphism)


def _uni(dom, coeffs):
    return UniPoly(dom, [parse_scalar(c, dom) for c in coeffs])


def _step_from_json(dom, s):
    kind = s["step"]
    if kind == "affine":
        (m11, m12), (m21, m22) = [[parse_scalar(c, dom) for c in row] for row in s["matrix"]]
        t1, t2 = [parse_scalar(c, dom) for c in s.get("translation", ["0", "0"])]
        return AffineUnit(m11, m12, m21, m22, t1, t2)
    if kind == "shear_x":
        return ShearX(_uni(dom, s["f"]))
    if kind == "shear_y":
        return ShearY(_uni(dom, s["f"]))
    if kind == "weyl_shear_x":
        return ShearXW(_uni(dom, s["f"]))
    if kind == "weyl_shear_y":
        return ShearYW(_uni(dom, s["f"]))
    if kind == "unit_scale":
        return UnitScale(parse_scalar(s["lambda"], dom))
    (m11, m12), (m21, m22) = [[parse_scalar(c, dom) for c in row] for row in s["matrix"]]
    return LinearSymplectic(m11, m12, m21, m22)


def word_from_json(dom, steps):
    """Build a ``TameAutomorphism`` or ``WeylAutomorphism`` from step dicts."""
    kinds = {s["step"] for s in steps}
    if kinds & set(COMMUTATIVE_STEPS) and kinds & set(WEYL_STEPS):
        raise InstanceError("a word cannot mix commutative and Weyl steps")
    word = [_step_from_json(dom, s) for s in steps]
    if kinds & set(WEYL_STEPS):
        return WeylAutomorphism(dom, word)
    return TameAutomorphism(dom, word)


def _uni_json(f):
    return [render_scalar(c) for c in f.coeffs]


def word_to_json(g):
    """Step dicts for ``g``; the inverse of :func:`word_from_json`."""
    out = []
    for s in g.word:
        if isinstance(s, AffineUnit):
            out.append({
                "step": "affine",
                "matrix": [[render_scalar(s.m11), render_scalar(s.m12)],
                           [render_scalar(s.m21), render_scalar(s.m22)]],
                "translation": [render_scalar(s.t1), render_scalar(s.t2)],
            })
        elif isinstance(s, ShearX):
            out.append({"step": "shear_x", "f": _uni_json(s.f)})
        elif isinstance(s, ShearY):
            out.append({"step": "shear_y", "f": _uni_json(s.f)})
        elif isinstance(s, ShearXW):
            out.append({"step": "weyl_shear_x", "f": _uni_json(s.g)})
        elif isinstance(s, ShearYW):
            out.append({"step": "weyl_shear_y", "f": _uni_json(s.f)})
        elif isinstance(s, UnitScale):
            out.append({"step": "unit_scale", "lambda": render_scalar(s.lam)})
        elif isinstance(s, LinearSymplectic):
            out.append({
                "step": "symplectic",
                "matrix": [[render_scalar(s.m11), render_scalar(s.m12)],
                           [render_scalar(s.m21), render_scalar(s.m22)]],
            })
        else:
            raise TypeError(f"unknown step {s!r}")
    return out


def parse_instance(doc) -> Instance:
    """Validate a decoded document against the schema, then evaluate it."""
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InstanceError(f"{where}: {exc.message}") from None
    dom = domain_from_tag(doc["domain"])
    word = word_from_json(dom, doc["word"]) if "word" in doc else None
    weyl = doc["task"].startswith("weyl-") or isinstance(word, WeylAutomorphism)
    if doc["task"].startswith("weyl-") and isinstance(word, TameAutomorphism):
        if word.word:
            raise InstanceError("Weyl task with a commutative word")
        word = WeylAutomorphism.identity(dom)
    parse = parse_weyl if weyl else parse_poly
    exprs = {k: parse(doc[k], dom) for k in ("A", "B", "w", "P") if k in doc}
    return Instance(doc["task"], dom, max_degree=doc.get("max_degree"), word=word, **exprs)


def load_instance(path) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: invalid JSON at {exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_instance(doc)
