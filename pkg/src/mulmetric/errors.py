"""Exception hierarchy shared by all mulmetric modules."""


class MulMetricError(Exception):
    """Base class for all package errors."""


class DomainError(MulMetricError):
    """An input value lies outside the mathematical domain of an operation."""


class ShapeError(MulMetricError):
    """Mismatched lengths or grids between two operands."""


class InputError(MulMetricError):
    """A structurally invalid argument (empty sequence, bad window, ...)."""


class EstimationError(MulMetricError):
    """A sampling-based estimate could not be formed (all pairs degenerate)."""


class PreconditionError(MulMetricError):
    """A solver precondition failed before iterating.

    Carries the measured quantity that violated the precondition.
    """

    def __init__(self, message, measured=None):
        super().__init__(message)
        self.measured = measured


class InvariantBreachError(MulMetricError):
    """A runtime invariant was violated mid-run (typically a wrong lambda)."""
