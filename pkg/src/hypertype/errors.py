"""Exception hierarchy shared by all modules."""


class HypertypeError(Exception):
    """Base class for every error raised by this package."""


class ConstraintViolation(HypertypeError, ValueError):
    """Parameters violate the admissibility conditions of a sigma-case."""

    def __init__(self, kind, inequality, alpha, beta):
        self.kind = kind
        self.inequality = inequality
        super().__init__(
            f"sigma(s) = {kind.label}: constraint '{inequality}' violated "
            f"(alpha={alpha}, beta={beta})"
        )


class OutOfDomain(HypertypeError, ValueError):
    pass


class IndexOutOfRange(HypertypeError, IndexError):
    pass


class NumericalInstability(HypertypeError, ArithmeticError):
    pass


class DivergentMoment(HypertypeError, ArithmeticError):
    pass


class PowerMismatch(HypertypeError, ValueError):
    """An operator was applied to a function with the wrong kappa-power."""


class DimensionError(HypertypeError, ValueError):
    pass


class IntegrationFailure(HypertypeError, ArithmeticError):
    pass


class TruncationError(HypertypeError, ArithmeticError):
    pass


class UnsupportedCase(HypertypeError, ValueError):
    """The operation is only defined for some of the six sigma-cases."""
