"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class TagMismatchError(ValueError):
    """Two values with incompatible variable tags were combined."""


class SingularPathError(DomainError):
    """A continuation path touches a singular point of the operator."""


class PrecisionExhausted(RuntimeError):
    """Error balls grew beyond tolerance; retry at higher precision."""
