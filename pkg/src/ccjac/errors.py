"""Exception hierarchy shared by every ccjac module."""


class CCJacError(Exception):
    """Base class for all toolkit errors."""


class DomainMismatch(CCJacError, TypeError):
    """Operands live in different coefficient domains."""


class DivisionNotExact(CCJacError, ArithmeticError):
    """An exact division would leave the domain."""


class CoefficientNotInDomain(CCJacError, ValueError):
    """A value cannot be represented in the requested domain."""


class NotInQA(CCJacError):
    """``w`` is not a polynomial in ``A`` over the fraction field.

    ``stage`` names where peeling stopped: ``"degree"`` when the degree of
    the remainder is not a multiple of the degree of ``A``, ``"quotient"``
    when the leading parts are not constant multiples of each other, and
    ``"constant"`` when ``A`` is a constant but ``w`` is not.
    """

    def __init__(self, stage, detail=""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"not in Q(D)[A] ({stage} stage){': ' + detail if detail else ''}")


class NotCommuting(CCJacError):
    """``A`` and ``w`` do not commute (Jacobian or bracket is nonzero)."""


class InternalContradiction(CCJacError):
    """An instance contradicted a proven statement; carries reproduction data."""

    def __init__(self, message, reproduction=None):
        self.reproduction = dict(reproduction or {})
        super().__init__(message)


class BoundTooLargeForBudget(CCJacError, ValueError):
    """A bounded search would exceed its configured size guard."""


class RelationViolation(CCJacError, ValueError):
    """A Weyl substitution does not preserve ``[Y, X] = 1``."""


class ParseError(CCJacError, SyntaxError):
    """Expression text could not be parsed; ``line``/``column`` are 1-based."""

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class VariableNotAllowed(ParseError):
    pass


class ExponentNegative(ParseError):
    pass


class InstanceError(CCJacError, ValueError):
    """An instance file failed schema validation."""
