"""Exception hierarchy.

Every error raised by the library derives from ``ModeError`` so the CLI can
map the two families (configuration vs. numerics) onto exit codes.
"""


class ModeError(Exception):
    pass


class DomainError(ModeError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class OutOfRegimeError(DomainError):
    """An approximation was evaluated where it yields a non-physical value."""


class ShapeError(ModeError, ValueError):
    """Two correlation matrices do not share a grid."""


class InvariantError(ModeError, ValueError):
    """A correlation matrix violates Hermiticity or positivity of intensity."""


class NumericError(ModeError, ArithmeticError):
    """Iteration failed to converge or detected a non-unimodal objective."""


class TruncationError(NumericError):
    """Grid too narrow: the kernel has not decayed at the grid edge."""


class ConfigError(ModeError):
    """Malformed or incomplete configuration file."""
