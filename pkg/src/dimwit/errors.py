"""Exception types raised by dimwit."""


class PreconditionError(ValueError):
    """An input violates a documented precondition (Hermiticity, normalization, ...)."""


class DegenerateSettingError(ValueError):
    """A construction needs a nonzero operator or outcome probability and got zero."""


class InfeasibleValueError(ValueError):
    """An observed Bell value exceeds what quantum theory allows."""


class ConsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagree."""
