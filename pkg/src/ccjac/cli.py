"""Command-line front end.

Exit codes: 0 success or a true verdict, 1 a false or negative verdict,
2 usage, parse or domain errors, 3 an internal contradiction (an instance
that violates a proven statement; the report carries reproduction data).
"""

from __future__ import annotations

import argparse
import json
import sys

from .centralizer import (
    InAResult, apply_automorphism, clear_denominators, express_in_A, invert_automorphism,
    is_jacobian_pair, mate_search_bounded, membership_via_automorphism, verify_cc_instance,
)
from .coeff import domain_from_tag
from .errors import (
    BoundTooLargeForBudget, CCJacError, CoefficientNotInDomain, DomainMismatch,
    InstanceError, InternalContradiction, NotCommuting, NotInQA, ParseError, RelationViolation,
)
from .expr import parse_poly, parse_scalar, parse_weyl
from .golden import run_golden
from .harness import GenConfig, campaign
from .instance import load_instance, word_to_json
from .poly2 import jacobian
from .report import Report, scalar, scalars
from .weyl import (
    WeylAutomorphism, commutator, dixmier_mate_search_bounded, is_dixmier_pair,
    verify_weyl_instance, weyl_apply, weyl_express_in_A, weyl_invert,
    weyl_membership_via_automorphism,
)

__all__ = ["main", "run_command", "build_parser"]

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_CONTRADICTION = 0, 1, 2, 3
DOMAIN_TAGS = ("int", "rat", "d0", "frac-d0")


class _Usage(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    """Raises instead of exiting so ``run_command`` can return exit code 2."""

    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


# --- helpers ------------------------------------------------------------------

def _dom(args):
    return domain_from_tag(args.domain or "int")


def _lower_maybe_field(parse, text, dom):
    """Lower ``text`` into ``dom``, falling back to its fraction field.

    Returns ``(value, in_domain)``.
    """
    try:
        return parse(text, dom), True
    except CoefficientNotInDomain:
        if dom.is_field:
            raise
        return parse(text, dom.field), False


def _in_a_fields(rep, res: InAResult):
    rep["in_qa"] = True
    rep["coefficients"] = scalars(res.coefficients)
    d, scaled = clear_denominators(res)
    rep["clearing_denominator"] = scalar(d)
    rep["scaled"] = scalars(scaled.coeffs)
    rep["in_da"] = res.in_base_domain


def _in_a(rep, decide, A, w):
    try:
        res = decide(A, w)
    except NotCommuting:
        rep["commutes"] = False
        rep["in_qa"] = None
        rep["in_da"] = False
        return EXIT_FALSE
    except NotInQA as exc:
        rep.fields.setdefault("commutes", True)
        rep["in_qa"] = False
        rep["stage"] = exc.stage
        rep["in_da"] = False
        return EXIT_FALSE
    rep.fields.setdefault("commutes", True)
    _in_a_fields(rep, res)
    return EXIT_TRUE if res.in_base_domain else EXIT_FALSE


# --- commutative commands -----------------------------------------------------

def cmd_jac(args, rep):
    dom = _dom(args)
    A, B = parse_poly(args.A, dom), parse_poly(args.B, dom)
    rep["jacobian"] = str(jacobian(A, B))
    return EXIT_TRUE


def cmd_pair(args, rep):
    dom = _dom(args)
    A, B = parse_poly(args.A, dom), parse_poly(args.B, dom)
    J = jacobian(A, B)
    ok = is_jacobian_pair(A, B)
    rep["jacobian"] = str(J)
    rep["pair_ok"] = ok
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_dep(args, rep):
    dom = _dom(args)
    A, w = parse_poly(args.A, dom), parse_poly(args.w, dom)
    J = jacobian(A, w)
    rep["jacobian"] = str(J)
    rep["commutes"] = not J
    return EXIT_FALSE if J else EXIT_TRUE


def cmd_in_a(args, rep):
    dom = _dom(args)
    A = parse_poly(args.A, dom)
    w, w_in_d = _lower_maybe_field(parse_poly, args.w, dom)
    rep["A"], rep["w"], rep["w_in_d"] = str(A), str(w), w_in_d
    # peeling decides membership without assuming Jac(A, w) = 0
    rep["commutes"] = not jacobian(A.to_field(), w.to_field())
    return _in_a(rep, express_in_A, A, w)


def cmd_clear_denoms(args, rep):
    dom = _dom(args)
    cs = [parse_scalar(c, dom.field) for c in args.coefficients]
    res = InAResult.from_coefficients(dom, cs)
    d, scaled = clear_denominators(res)
    rep["coefficients"] = scalars(res.coefficients)
    rep["clearing_denominator"] = scalar(d)
    rep["scaled"] = scalars(scaled.coeffs)
    rep["in_da"] = res.in_base_domain
    return EXIT_TRUE


def _mate(rep, search, A, N, budget):
    B = search(A, N, max_unknowns=budget)
    rep["max_degree"] = N
    rep["mate"] = None if B is None else str(B)
    if B is None:
        rep["note"] = f"no mate up to total degree {N}"
        return EXIT_FALSE
    return EXIT_TRUE


def cmd_mate_search(args, rep):
    dom = _dom(args)
    A = parse_poly(args.A, dom)
    code = _mate(rep, mate_search_bounded, A, args.max_deg, args.max_unknowns)
    if code == EXIT_TRUE:
        rep["jacobian"] = str(jacobian(A, parse_poly(rep["mate"], dom)))
    return code


# --- automorphisms and instance files -----------------------------------------

def _load(args):
    inst = load_instance(args.file)
    if args.domain and args.domain != inst.domain.tag:
        raise InstanceError(f"--domain {args.domain} conflicts with the file's domain {inst.domain.tag}")
    return inst


def cmd_auto(args, rep):
    inst = load_instance(args.word)
    if args.domain and args.domain != inst.domain.tag:
        raise InstanceError(f"--domain {args.domain} conflicts with the file's domain {inst.domain.tag}")
    g = inst.word
    if g is None:
        raise InstanceError("the word file has no 'word' field")
    weyl = isinstance(g, WeylAutomorphism)
    rep["domain"] = inst.domain.tag
    if args.action == "invert":
        h = weyl_invert(g) if weyl else invert_automorphism(g)
        rep["word"] = json.dumps(word_to_json(h))
        imgs = h.images()
    else:
        text = getattr(args, "P", None)
        if text is None and inst.P is None:
            raise InstanceError("auto apply needs P on the command line or in the file")
        parse = parse_weyl if weyl else parse_poly
        P = parse(text, inst.domain) if text is not None else inst.P
        rep["P"] = str(P)
        rep["image"] = str(weyl_apply(g, P) if weyl else apply_automorphism(g, P))
        imgs = g.images()
    rep["images"] = [str(imgs[0]), str(imgs[1])]
    return EXIT_TRUE


def _verify(rep, inst):
    weyl = inst.weyl
    if inst.A is None or inst.B is None or inst.w is None:
        raise InstanceError("cc-verify needs A, B and w")
    verdict = (verify_weyl_instance if weyl else verify_cc_instance)(inst.A, inst.B, inst.w)
    rep["algebra"] = "weyl" if weyl else "commutative"
    rep["domain"] = inst.domain.tag
    rep["A"], rep["B"], rep["w"] = str(inst.A), str(inst.B), str(inst.w)
    rep["pair_ok"] = verdict.pair_ok
    rep["commutes"] = verdict.commutes
    if verdict.in_QA is not None:
        _in_a_fields(rep, verdict.in_QA)
    else:
        rep["in_qa"] = False if verdict.commutes else None
        rep["in_da"] = False
    if verdict.notes:
        rep["notes"] = verdict.notes
    if inst.word is not None and inst.word.word and verdict.commutes:
        matches = inst.word.images()[0] == inst.A
        rep["word_matches_A"] = matches
        if not matches:
            return _verdict_code(verdict)
        conj = (weyl_membership_via_automorphism if weyl else membership_via_automorphism)(inst.word, inst.w)
        rep["conjugation_coefficients"] = scalars(conj.coefficients)
        agree = verdict.in_QA is not None and conj.coefficients == verdict.in_QA.coefficients
        rep["routes_agree"] = agree
        if not agree:
            raise InternalContradiction(
                "peeling and conjugation disagree",
                {"A": str(inst.A), "B": str(inst.B), "w": str(inst.w),
                 "word": json.dumps(word_to_json(inst.word))},
            )
    return _verdict_code(verdict)


def _verdict_code(verdict):
    return EXIT_TRUE if verdict.pair_ok and verdict.commutes and verdict.in_DA else EXIT_FALSE


def cmd_cc_verify(args, rep):
    return _verify(rep, _load(args))


# --- Weyl commands ------------------------------------------------------------

def cmd_weyl_mul(args, rep):
    dom = _dom(args)
    rep["product"] = str(parse_weyl(args.P, dom) * parse_weyl(args.Q, dom))
    return EXIT_TRUE


def cmd_weyl_comm(args, rep):
    dom = _dom(args)
    C = commutator(parse_weyl(args.P, dom), parse_weyl(args.Q, dom))
    rep["commutator"] = str(C)
    rep["commutes"] = not C
    return EXIT_TRUE


def cmd_weyl_pair(args, rep):
    dom = _dom(args)
    A, B = parse_weyl(args.A, dom), parse_weyl(args.B, dom)
    ok = is_dixmier_pair(A, B)
    rep["commutator"] = str(commutator(A, B))
    rep["pair_ok"] = ok
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_weyl_in_a(args, rep):
    dom = _dom(args)
    A = parse_weyl(args.A, dom)
    w, w_in_d = _lower_maybe_field(parse_weyl, args.w, dom)
    rep["A"], rep["w"], rep["w_in_d"] = str(A), str(w), w_in_d
    return _in_a(rep, weyl_express_in_A, A, w)


def cmd_weyl_mate_search(args, rep):
    dom = _dom(args)
    A = parse_weyl(args.A, dom)
    code = _mate(rep, dixmier_mate_search_bounded, A, args.max_deg, args.max_unknowns)
    if code == EXIT_TRUE:
        rep["commutator"] = str(commutator(A, parse_weyl(rep["mate"], dom)))
    return code


# --- campaigns ----------------------------------------------------------------

def cmd_verify_paper_examples(args, rep):
    ok, golden = run_golden()
    rep.fields.update(golden.fields)
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_fuzz(args, rep):
    cfg = GenConfig(
        seed=args.seed, word_length_max=args.word_length_max,
        shear_degree_max=args.shear_degree_max, coefficient_bound=args.coefficient_bound,
        p_degree_max=args.p_degree_max, instance_count=args.count,
        domain=args.domain or "int", degree_budget=args.degree_budget,
        weyl=not args.no_weyl, jobs=args.jobs,
    )
    out = campaign(cfg)
    rep.fields.update(out.to_report().fields)
    if out.contradictions:
        return EXIT_CONTRADICTION
    return EXIT_TRUE if out.ok else EXIT_FALSE


# --- parser -------------------------------------------------------------------

def build_parser():
    common = _ArgParser(add_help=False)
    common.add_argument("--domain", choices=DOMAIN_TAGS, default=None,
                        help="coefficient domain (default: int)")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    def mate_args(p):
        p.add_argument("A")
        p.add_argument("--max-deg", type=int, required=True, dest="max_deg")
        p.add_argument("--max-unknowns", type=int, default=600, dest="max_unknowns",
                       help="refuse searches with more unknowns than this")

    parser = _ArgParser(prog="ccjac", description="Jacobian pairs, centralizers and Weyl algebra checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("jac", cmd_jac, "Jacobian determinant of A, B")
    p.add_argument("A"), p.add_argument("B")
    p = add("pair", cmd_pair, "is Jac(A, B) a unit?")
    p.add_argument("A"), p.add_argument("B")
    p = add("dep", cmd_dep, "is Jac(A, w) zero?")
    p.add_argument("A"), p.add_argument("w")
    p = add("in-a", cmd_in_a, "express w as a polynomial in A")
    p.add_argument("A"), p.add_argument("w")
    p = add("clear-denoms", cmd_clear_denoms, "common denominator of coefficients")
    p.add_argument("coefficients", nargs="+")
    mate_args(add("mate-search", cmd_mate_search, "bounded Jacobian mate search"))

    p = sub.add_parser("auto", help="apply or invert an automorphism word")
    asub = p.add_subparsers(dest="action", required=True, parser_class=_ArgParser)
    for action, help_ in (("apply", "image of P under the word"), ("invert", "inverse word")):
        q = asub.add_parser(action, parents=[common], help=help_)
        q.set_defaults(fn=cmd_auto)
        q.add_argument("--word", required=True, help="instance file holding the word")
        if action == "apply":
            q.add_argument("P", nargs="?", default=None)

    p = add("cc-verify", cmd_cc_verify, "verify one instance file")
    p.add_argument("file")

    p = sub.add_parser("weyl", help="first Weyl algebra commands")
    wsub = p.add_subparsers(dest="weyl_command", required=True, parser_class=_ArgParser)

    def wadd(name, fn, help_):
        q = wsub.add_parser(name, parents=[common], help=help_)
        q.set_defaults(fn=fn)
        return q

    q = wadd("mul", cmd_weyl_mul, "normal-ordered product P*Q")
    q.add_argument("P"), q.add_argument("Q")
    q = wadd("comm", cmd_weyl_comm, "commutator [P, Q]")
    q.add_argument("P"), q.add_argument("Q")
    q = wadd("pair", cmd_weyl_pair, "is [A, B] a unit?")
    q.add_argument("A"), q.add_argument("B")
    q = wadd("in-a", cmd_weyl_in_a, "express w as a polynomial in A")
    q.add_argument("A"), q.add_argument("w")
    mate_args(wadd("mate-search", cmd_weyl_mate_search, "bounded Dixmier mate search"))

    add("verify-paper-examples", cmd_verify_paper_examples, "run the golden checks")

    p = add("fuzz", cmd_fuzz, "random campaign of automorphism instances")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--word-length-max", type=int, default=4)
    p.add_argument("--shear-degree-max", type=int, default=3)
    p.add_argument("--coefficient-bound", type=int, default=3)
    p.add_argument("--p-degree-max", type=int, default=4)
    p.add_argument("--degree-budget", type=int, default=12)
    p.add_argument("--no-weyl", action="store_true", help="skip the Weyl group")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _command_name(args):
    if args.command == "weyl":
        return f"weyl {args.weyl_command}"
    if args.command == "auto":
        return f"auto {args.action}"
    return args.command


def run_command(argv):
    """Run one command; returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        return EXIT_USAGE, "", f"{exc}\n"
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    rep = Report(_command_name(args))
    if getattr(args, "domain", None) and args.command not in ("auto", "cc-verify"):
        rep["domain"] = args.domain
    try:
        code = args.fn(args, rep)
    except InternalContradiction as exc:
        rep["contradiction"] = str(exc)
        rep["reproduction"] = {k: str(v) for k, v in sorted(exc.reproduction.items())}
        text = rep.render(args.format)
        return EXIT_CONTRADICTION, text, text
    except (ParseError, CoefficientNotInDomain, DomainMismatch, InstanceError,
            BoundTooLargeForBudget, RelationViolation, ValueError, OSError) as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    except CCJacError as exc:
        return EXIT_USAGE, "", f"error: {type(exc).__name__}: {exc}\n"
    return code, rep.render(args.format), ""


def main(argv=None):
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err and err != out:
        sys.stderr.write(err)
    elif err:
        sys.stderr.write("internal contradiction: reproduction data above\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
