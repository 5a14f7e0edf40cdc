"""Error types shared across the package.

Every failure mode is a signaled exception, never a sentinel value.
"""


class HIntegralError(Exception):
    """Base class for all package errors."""


class UndefinedSumError(HIntegralError):
    """Adding two values with equal dimension and second coordinates {+inf, -inf}."""


class EmptyListError(HIntegralError):
    """Supremum requested over an empty collection."""


class UnknownSetError(HIntegralError):
    """A set primitive is not part of the space it is evaluated in."""


class NonDisjointError(HIntegralError):
    """Structural overlap detected between pieces that must be disjoint."""


class UnsupportedExpressionError(HIntegralError):
    """A function or set left the closed expression grammar."""


class UnsupportedScenarioError(HIntegralError):
    """A deficiency scenario cannot be reduced to an exact simple integral."""


class ParseError(HIntegralError):
    """Malformed input text or scenario file."""
