"""Exception types shared across the package."""


class AbcError(Exception):
    """Base class for all package errors."""


class BudgetExceeded(AbcError):
    """Factoring gave up after spending its iteration budget."""

    def __init__(self, n, budget):
        super().__init__(f"could not factor {n} within {budget} rho iterations")
        self.n = n
        self.budget = budget


class MagnitudeOverflow(AbcError, OverflowError):
    """An input or intermediate value exceeds the supported magnitude cap."""


class NotCoprime(AbcError, ValueError):
    pass


class Degenerate(AbcError, ValueError):
    pass


class InvalidTrace(AbcError, ValueError):
    pass


class PerfectPower(AbcError, ValueError):
    pass


class EmptySample(AbcError, ValueError):
    pass
