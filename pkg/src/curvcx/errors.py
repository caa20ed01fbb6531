"""Exception types shared across the package."""


class CurvcxError(Exception):
    """Base class for all curvcx errors."""


class ComplexError(CurvcxError):
    """Raised when input data does not define a valid polygonal complex."""


class GeneratorError(CurvcxError):
    """Raised when a generator cannot build the requested complex."""


class UntrustedRegionError(CurvcxError):
    """Raised when an operation would need cells outside the certified region.

    The truncation discipline: an operation whose answer could be changed by
    cells that were never built must refuse to answer rather than return a
    value that is only probably correct.
    """


class BudgetExceededError(CurvcxError):
    """Raised when an enumeration or build would exceed its work budget."""
