import json
from fractions import Fraction

import pytest

from ccjac.centralizer import TameAutomorphism, apply_automorphism
from ccjac.coeff import D0, QQ, ZZ, Param
from ccjac.errors import InstanceError, RelationViolation
from ccjac.expr import parse_poly, parse_weyl
from ccjac.harness import GenConfig, gen_tame_pair, gen_weyl_pair
from ccjac.instance import load_instance, parse_instance, word_from_json, word_to_json
from ccjac.report import FORMAT, Report
from ccjac.weyl import WeylAutomorphism, weyl_apply


def doc(**kw):
    base = {"version": "ccjac/1", "task": "cc-verify", "domain": "int"}
    base.update(kw)
    return base


def test_parse_valid_instance():
    inst = parse_instance(doc(A="x + y^2", B="y", w="(x + y^2)^2",
                              word=[{"step": "shear_x", "f": ["0", "0", "1"]}]))
    assert inst.A == parse_poly("x + y^2", ZZ)
    assert isinstance(inst.word, TameAutomorphism) and not inst.weyl
    assert apply_automorphism(inst.word, parse_poly("x", ZZ)) == inst.A


def test_weyl_instance():
    inst = parse_instance(doc(task="weyl-cc-verify", A="X", B="Y", w="X^2"))
    assert inst.weyl and inst.A == parse_weyl("X", ZZ)
    assert isinstance(inst.word, WeylAutomorphism) or inst.word is None
    inst = parse_instance(doc(task="weyl-cc-verify", A="X", word=[]))
    assert isinstance(inst.word, WeylAutomorphism) and inst.word.word == ()


@pytest.mark.parametrize("bad", [
    {"version": "ccjac/2", "task": "jac", "domain": "int"},
    doc(task="nope"),
    doc(domain="complex"),
    doc(extra="1"),
    doc(max_degree=-1),
    doc(word=[{"step": "shear_x"}]),
    doc(word=[{"step": "shear_x", "f": ["1"], "g": ["1"]}]),
    doc(word=[{"step": "unit_scale", "lambda": 2}]),
    doc(word=[{"step": "affine", "matrix": [["1", "0"]]}]),
    {"task": "jac", "domain": "int"},
])
def test_schema_rejections(bad):
    with pytest.raises(InstanceError):
        parse_instance(bad)


def test_mixed_words_rejected():
    with pytest.raises(InstanceError):
        parse_instance(doc(word=[{"step": "shear_x", "f": ["0", "1"]},
                                 {"step": "unit_scale", "lambda": "1"}]))
    with pytest.raises(InstanceError):
        parse_instance(doc(task="weyl-in-a", word=[{"step": "shear_x", "f": ["0", "1"]}]))


def test_invalid_steps_raise_domain_errors():
    with pytest.raises(RelationViolation):
        parse_instance(doc(word=[{"step": "unit_scale", "lambda": "2"}]))
    with pytest.raises(ValueError):
        parse_instance(doc(word=[{"step": "affine", "matrix": [["2", "0"], ["0", "1"]]}]))


def test_load_instance_reports_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"version\": ", encoding="utf-8")
    with pytest.raises(InstanceError, match="invalid JSON"):
        load_instance(path)
    path.write_text(json.dumps(doc(A="x")), encoding="utf-8")
    assert load_instance(path).A == parse_poly("x", ZZ)


@pytest.mark.parametrize("domain", ["int", "rat", "d0"])
def test_word_json_round_trip(domain):
    cfg = GenConfig(seed=9, domain=domain)
    for i in range(25):
        g, A, _ = gen_tame_pair(cfg, cfg.rng("json", i))
        data = json.loads(json.dumps(word_to_json(g)))
        h = word_from_json(cfg.dom, data)
        assert h.word == g.word
        assert apply_automorphism(h, parse_poly("x", cfg.dom)) == A
        gw, AW, _ = gen_weyl_pair(cfg, cfg.rng("json-weyl", i))
        hw = word_from_json(cfg.dom, json.loads(json.dumps(word_to_json(gw))))
        assert hw.word == gw.word
        assert weyl_apply(hw, parse_weyl("X", cfg.dom)) == AW


def test_report_structured_and_text():
    rep = Report("in-a", {"coefficients": [Fraction(1, 3), Fraction(1, 3)],
                          "clearing_denominator": 3, "in_da": False, "mate": None,
                          "nested": {"a2": Param({(2, 0): 1}), "items": [{"k": True}]}})
    data = json.loads(rep.render("structured"))
    assert data == {"format": FORMAT, "command": "in-a", "result": {
        "coefficients": ["1/3", "1/3"], "clearing_denominator": 3, "in_da": False,
        "mate": None, "nested": {"a2": "a^2", "items": [{"k": True}]}}}
    text = rep.render("text").splitlines()
    assert text == ["coefficients: [1/3, 1/3]", "clearing_denominator: 3", "in_da: false",
                    "mate: none", "nested.a2: a^2", "nested.items[0].k: true"]


def test_report_is_byte_stable():
    def build():
        return Report("x", {"v": [Fraction(-1, 2), 3], "p": str(parse_poly("a^2*x", D0))})
    assert build().render("structured") == build().render("structured")
    assert "." not in json.dumps(json.loads(build().render("structured"))["result"]["v"])
