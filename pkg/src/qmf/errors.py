"""Exception hierarchy.

Everything derives from :class:`QMFError`; the CLI maps these to exit code 1.
"""


class QMFError(Exception):
    """Base class for domain errors raised by the library."""


class DomainError(QMFError, ValueError):
    pass


class NonIntegralCoefficient(QMFError, ArithmeticError):
    pass


class RankDeficient(QMFError):
    pass


class PrecisionExhausted(QMFError):
    """Not enough coefficients were supplied to settle the question asked."""


class EntryBoundViolated(QMFError):
    pass


class BudgetExceeded(QMFError):
    pass


class NotFoundWithinBudget(QMFError):
    pass


class NotInSpace(QMFError):
    pass


class UnderDetermined(QMFError):
    pass


class NoProgress(QMFError):
    """A descent step failed to shrink the bound.

    The attempted step is kept on ``step`` so callers can still record it.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
