"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """A parameter is outside its documented domain."""


class DimensionError(ValueError):
    """Mode counts or index sets do not line up."""


class PhysicalityError(ValueError):
    """A covariance matrix violates the uncertainty principle."""


class CutoffError(RuntimeError):
    """A Fock truncation cannot reach the requested accuracy.

    Parameters
    ----------
    message : str
        Human readable diagnostic.
    suggested : int or None
        A cutoff that would satisfy the tolerance, when one is feasible.
    """

    def __init__(self, message, suggested=None):
        super().__init__(message)
        self.suggested = suggested
