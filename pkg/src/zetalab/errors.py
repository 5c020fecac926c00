"""Exception types shared across the package.

Everything derives from ZetalabError so callers can catch the package's
failures with one except clause; the subclasses also inherit from the
matching builtin (ValueError, ArithmeticError) so generic handling keeps
working.
"""


class ZetalabError(Exception):
    """Base class for errors raised by zetalab."""


class DomainError(ZetalabError, ValueError):
    """An argument violates a documented precondition."""


class PoleError(DomainError):
    """Evaluation was requested exactly at (or too close to) a pole."""


class CapacityError(ZetalabError, ValueError):
    """A request exceeds a configured size or memory budget."""


class PrecisionError(ZetalabError, ArithmeticError):
    """The requested accuracy is not achievable with the given parameters."""


class DivisionInstabilityError(ZetalabError, ArithmeticError):
    """A divisor is too close to zero for the quotient to be trusted."""
