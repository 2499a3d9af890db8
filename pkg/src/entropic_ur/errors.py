"""Exception types raised across the package."""


class EntropicURError(Exception):
    """Base class for all package errors."""


class DomainError(EntropicURError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NonconvergedQuadrature(EntropicURError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class GridTooSmall(EntropicURError, ValueError):
    """A sampled grid has too few points for a discrete transform."""


class InvalidScenario(EntropicURError):
    """A scenario's internal consistency check failed."""


class BudgetExhausted(EntropicURError):
    """The optimizer ran out of evaluations before converging.

    The best point found so far is attached as ``optimum``.
    """

    def __init__(self, message, optimum=None):
        super().__init__(message)
        self.optimum = optimum
