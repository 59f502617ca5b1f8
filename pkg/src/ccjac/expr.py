"""Expression parser and lowering into ``BiPoly`` / ``WeylElement``.

Grammar, loosest binding first::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Multiplication must be written out: ``a*b``, never ``ab`` or ``2x``.
Division is only by nonzero constants, which makes ``p/q`` literals and
rendered rational-function coefficients parse back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import Param
from .errors import CoefficientNotInDomain, ExponentNegative, ParseError, VariableNotAllowed
from .poly2 import BiPoly
from .weyl import WeylElement

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Pow", "parse", "lower",
    "parse_poly", "parse_weyl", "parse_scalar", "CONTEXTS",
]

CONTEXTS = ("commutative", "weyl", "scalar")
_VARIABLES = {"commutative": ("x", "y"), "weyl": ("X", "Y"), "scalar": ()}
_PARAMS = ("a", "b")


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = (1, 1)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = (1, 1)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple = (1, 1)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: tuple = (1, 1)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple = (1, 1)


_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()])")


def _tokenize(text):
    line, col0 = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        where = (line, pos - col0 + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", *where)
        kind = m.lastgroup
        if kind == "nl":
            line, col0 = line + 1, m.end()
        elif kind != "ws":
            yield kind, m.group(), where
        pos = m.end()
    yield "eof", "", (line, pos - col0 + 1)


class _Parser:
    def __init__(self, text, context, domain):
        if context not in CONTEXTS:
            raise ValueError(f"unknown context {context!r}")
        self.tokens = list(_tokenize(text))
        self.i = 0
        allowed = list(_VARIABLES[context])
        if domain.is_parametric:
            allowed += _PARAMS
        self.allowed = set(allowed)
        self.context = context
        self.domain = domain

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, text, pos = self.tok
        if text != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", *pos)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, text, pos = self.tok
        if kind != "eof":
            if kind in ("int", "name") or text == "(":
                raise ParseError("explicit '*' required between factors", *pos)
            raise ParseError(f"unexpected {text!r}", *pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok[1] in ("+", "-") and self.tok[0] == "op":
            _, op, pos = self.advance()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok[1] in ("*", "/") and self.tok[0] == "op":
            _, op, pos = self.advance()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        if self.tok[0] == "op" and self.tok[1] == "-":
            _, _, pos = self.advance()
            return Neg(self.unary(), pos)
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            _, _, pos = self.advance()
            kind, text, epos = self.tok
            if kind == "op" and text == "-":
                raise ExponentNegative("exponents must be nonnegative integers", *epos)
            if kind != "int":
                raise ParseError("exponent must be an integer literal", *epos)
            self.advance()
            base = Pow(base, int(text), pos)
            if self.tok[0] == "op" and self.tok[1] == "^":
                raise ParseError("chained '^' is ambiguous; use parentheses", *self.tok[2])
        return base

    def atom(self):
        kind, text, pos = self.tok
        if kind == "int":
            self.advance()
            return Num(int(text), pos)
        if kind == "name":
            if text not in self.allowed:
                if len(text) > 1 and set(text) <= self.allowed:
                    raise ParseError(f"{text!r}: explicit '*' required between factors", *pos)
                raise VariableNotAllowed(
                    f"variable {text!r} not allowed in {self.context} context over {self.domain.tag}", *pos
                )
            self.advance()
            return Var(text, pos)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {text or 'end of input'!r}", *pos)


def parse(text: str, context: str, domain):
    """Parse ``text`` into an AST; variables are checked against the context."""
    return _Parser(text, context, domain).parse()


def lower(ast, context: str, domain):
    """Evaluate an AST exactly into ``domain``.

    Evaluation runs over the fraction field so intermediate values such as
    ``a*x`` may leave ``D0``; only the final value must lie in ``domain``.
    Weyl products keep operand order.
    """
    cls = WeylElement if context == "weyl" else BiPoly
    work = domain.field
    gens = {}
    if context != "scalar":
        vx, vy = _VARIABLES[context]
        gens[vx] = cls.monomial(work, 1, 0)
        gens[vy] = cls.monomial(work, 0, 1)
    if domain.is_parametric:
        gens["a"] = cls.const(work, Param.a())
        gens["b"] = cls.const(work, Param.b())

    def ev(node):
        if isinstance(node, Num):
            return cls.const(work, node.value)
        if isinstance(node, Var):
            return gens[node.name]
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        left, right = ev(node.left), ev(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if not right.is_constant() or not right:
            raise ParseError("division is only by nonzero constants", *node.pos)
        return left.scale(work.one / right.constant_term())

    value = ev(ast)
    try:
        return value.change_domain(domain)
    except CoefficientNotInDomain as exc:
        raise CoefficientNotInDomain(f"{value} has a coefficient outside {domain.tag}: {exc}") from None


def parse_poly(text: str, domain) -> BiPoly:
    return lower(parse(text, "commutative", domain), "commutative", domain)


def parse_weyl(text: str, domain) -> WeylElement:
    return lower(parse(text, "weyl", domain), "weyl", domain)


def parse_scalar(text: str, domain):
    """A coefficient of ``domain`` written as an expression in the parameters."""
    return lower(parse(text, "scalar", domain), "scalar", domain).constant_term()
