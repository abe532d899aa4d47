"""Exception and warning classes shared by every tomox module."""


class TomoxError(Exception):
    """Base class for all tomox errors."""


class InvalidArgument(TomoxError, ValueError):
    pass


class IncompatibleGrids(TomoxError, ValueError):
    pass


class DomainError(TomoxError, ValueError):
    """Signal or field is in the wrong domain / of the wrong kind."""


class DegenerateInput(TomoxError, ValueError):
    pass


class IllConditionedInversion(TomoxError, ArithmeticError):
    pass


class NonAdmissibleWavelet(TomoxError, ValueError):
    pass


class FormatError(TomoxError, ValueError):
    pass


class GridError(TomoxError, ValueError):
    pass


class ConfigError(TomoxError, ValueError):
    pass


class FieldIOError(TomoxError, OSError):
    pass


class TomoxWarning(UserWarning):
    pass


class TruncationWarning(TomoxWarning):
    """Part of the integrand mass lies outside the sampled grid."""


class ContractWarning(TomoxWarning):
    """An input violates a soft precondition; results are still computed."""


class CoverageWarning(TomoxWarning):
    """Scale grid does not cover the signal band well enough to invert."""
