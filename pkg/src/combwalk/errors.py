"""Exception hierarchy shared by all modules."""


class CombwalkError(Exception):
    pass


class ParameterError(CombwalkError, ValueError):
    """Invalid construction parameters (k > n, odd Mobius ladder, ...)."""


class ValidationError(CombwalkError, ValueError):
    """An object is not a member of the combinatorial family it was given to."""


class RangeError(CombwalkError, IndexError):
    """Index outside [0, M)."""


class DimensionError(CombwalkError, ValueError):
    pass


class CapacityError(CombwalkError):
    """Requested dimension exceeds what can be materialised."""


class NoSolutionError(CombwalkError):
    """Search with nothing marked."""


class NumericalValidationError(CombwalkError):
    """A numerical self-check exceeded its tolerance."""
