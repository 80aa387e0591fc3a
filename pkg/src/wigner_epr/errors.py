"""Exception types raised by the library."""


class ShellViolationError(ValueError):
    """A four-momentum is not on the requested mass shell."""


class InvalidTransformError(ValueError):
    """A matrix is not a restricted Lorentz transformation."""


class NotInLittleGroupError(ValueError):
    """A transformation does not fix the standard momentum."""


class DomainError(ValueError):
    """A closed-form expression was evaluated outside its domain."""


class UndefinedMaximumError(ValueError):
    """The requested maximum does not exist (the function is identically zero)."""


class ConditioningError(ValueError):
    """Conditioning on a measurement outcome that has zero probability."""
