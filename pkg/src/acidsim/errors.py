"""Exception types raised across the package."""


class AcidsimError(Exception):
    """Base class for all package errors."""


class NonDivisibleSpacing(AcidsimError, ValueError):
    pass


class NonpositiveDiffusivity(AcidsimError, ValueError):
    pass


class UnsupportedKind(AcidsimError, ValueError):
    pass


class NegativeField(AcidsimError, ValueError):
    """A field that must be nonnegative carries a significant negative value."""


class ConfigError(AcidsimError, ValueError):
    pass


class InvalidExponentRange(AcidsimError, ValueError):
    pass


class ExponentDomainError(AcidsimError, ValueError):
    """An exponent denominator of a closed-form bound is not positive."""


class UnknownScenario(AcidsimError, KeyError):
    pass
