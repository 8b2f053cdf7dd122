"""Exception types raised by the toolkit."""


class QSCError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgumentError(QSCError, ValueError):
    pass


class DegenerateCouplingError(InvalidArgumentError):
    """Both couplings vanish, so the mixing angle is undefined."""


class OutOfRangeError(InvalidArgumentError):
    pass


class InvalidCombinationError(InvalidArgumentError):
    pass


class NumericalError(QSCError, RuntimeError):
    """A numerical procedure failed (divergence, bracketing, infeasibility)."""


class IntegrationDivergedError(NumericalError):
    pass


class BracketError(NumericalError):
    pass


class InfeasibleTimeError(NumericalError):
    pass
