"""Exception types shared across the package."""


class HoradamError(Exception):
    """Base class for errors raised by this package."""


class DomainError(HoradamError, ValueError):
    """Input lies outside the mathematical domain an operation supports."""


class PrecisionError(HoradamError, ArithmeticError):
    """A numeric result failed its precision-derived sanity check."""


class InconsistencyError(HoradamError, ArithmeticError):
    """Two routes that must agree exactly did not."""


class NoConvergence(HoradamError):
    def __init__(self, n_max, tol):
        super().__init__(f"tolerance {tol} not reached for n <= {n_max}")
        self.n_max = n_max
        self.tol = tol


class CapExceeded(HoradamError, ValueError):
    """Requested size exceeds a hard cap that guards against runaway growth."""
