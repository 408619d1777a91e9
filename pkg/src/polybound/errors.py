"""Exception hierarchy shared by the kernel, the deciders and the CLI."""


class PolyboundError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(PolyboundError, ZeroDivisionError):
    pass


class RegistryMismatch(PolyboundError):
    pass


class UnknownVariable(PolyboundError):
    pass


class NonRational(PolyboundError):
    pass


class VariableCollision(PolyboundError):
    pass


class NonSquare(PolyboundError):
    pass


class NotASuffix(PolyboundError):
    pass


class ResourceLimit(PolyboundError):
    """A Groebner computation exceeded its configured budget."""


class ConstantPolynomial(PolyboundError):
    pass


class DimensionMismatch(PolyboundError):
    pass


class ZeroPolynomial(PolyboundError):
    pass


class NotGeneric(PolyboundError):
    """The sampled point is degenerate for the input; another point should be tried."""


class ZeroEliminationIdeal(NotGeneric):
    """No nonzero univariate polynomial lies in the elimination ideal."""


class NotSquareFree(PolyboundError):
    pass


class EndpointIsRoot(PolyboundError):
    pass


class Inconclusive(PolyboundError):
    """Every sampled point failed the T-goodness test."""


class MultivariateInput(PolyboundError):
    pass


class ParseError(PolyboundError, SyntaxError):
    """Malformed polynomial expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NonPolynomial(ParseError):
    pass
