"""Exception types raised by the nls5 package."""


class NLS5Error(Exception):
    """Base class for all package errors."""


class SpectralDataError(NLS5Error, ValueError):
    """Invalid spectral data or equation coefficients."""


class ContractError(NLS5Error, ValueError):
    """A closed-form routine was called outside its gauge or parameter contract."""


class KernelOverflowError(NLS5Error, OverflowError):
    """The unscaled kernel matrix cannot be represented in double precision."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class NumericalDegeneracyError(NLS5Error, ArithmeticError):
    """The kernel matrix is numerically singular at some (x, t)."""

    def __init__(self, message, x=None, t=None):
        super().__init__(message)
        self.x = x
        self.t = t


class DomainTooSmallError(NLS5Error, ValueError):
    """The sampled field does not decay at the grid boundary."""

    def __init__(self, message, boundary_abs=None):
        super().__init__(message)
        self.boundary_abs = boundary_abs


class GridError(NLS5Error, ValueError):
    """Grid metadata violates the grid invariants."""


class BlowUpError(NLS5Error, FloatingPointError):
    """Time integration produced non-finite values."""

    def __init__(self, message, step, last_frame=None):
        super().__init__(message)
        self.step = step
        self.last_frame = last_frame


class AmbiguousPeakError(NLS5Error, ValueError):
    """A frame has more than one global maximum of |q|."""
