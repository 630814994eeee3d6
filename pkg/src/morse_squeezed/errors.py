"""Exception and warning types raised by the library."""


class MorseError(Exception):
    """Base class for all library errors."""


class ParameterError(MorseError, ValueError):
    """Invalid model or state parameter (including out-of-domain level indices)."""


class OutOfRegimeError(MorseError):
    """The requested state cannot be represented on the bound-state space."""


class EmptyStateError(MorseError):
    """A construction annihilated the state entirely."""


class UndefinedStatisticError(MorseError, ArithmeticError):
    """A ratio statistic has a vanishing denominator."""


class RegimeWarning(UserWarning):
    """The state has appreciable weight at the top of the truncated space."""
