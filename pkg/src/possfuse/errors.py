"""Exception types shared across the package."""


class PossfuseError(Exception):
    """Base class for all library-specific errors."""


class ValidationError(PossfuseError, ValueError):
    """An input violates a documented contract."""


class RuleMismatchError(ValidationError):
    """A validification rule was applied to an incompatible ranking."""


class NumericsError(PossfuseError, RuntimeError):
    """A numerical routine could not meet its accuracy contract."""
