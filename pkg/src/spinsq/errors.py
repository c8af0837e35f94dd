"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class SpinsqError(Exception):
    """Base class for all errors raised by spinsq."""


class ParameterError(SpinsqError, ValueError):
    """An argument is outside its allowed range."""


class PreconditionError(SpinsqError, ValueError):
    """An input does not satisfy the structural assumption of an operation."""


class ResourceLimitError(ParameterError):
    """The request exceeds a configured size ceiling."""


class NumericalError(SpinsqError, ArithmeticError):
    """A numerical routine failed to converge or produced inconsistent output."""


class VerificationError(SpinsqError):
    """Two independent computations disagree beyond tolerance."""

    def __init__(self, quantity, deviation, tolerance, context=""):
        self.quantity = quantity
        self.deviation = deviation
        self.tolerance = tolerance
        msg = f"{quantity}: deviation {deviation:.3e} exceeds {tolerance:.1e}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
