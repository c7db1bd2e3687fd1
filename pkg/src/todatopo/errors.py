"""Exception types shared across the package."""


class TodatopoError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedTypeError(TodatopoError):
    """Unknown or out-of-range (type, rank) combination."""


class InvalidCartanMatrixError(TodatopoError):
    """Matrix fails the structural or finite-type requirements."""


class GroupOrderCapError(TodatopoError):
    """Weyl group enumeration exceeded the configured order cap."""


class NotInSubgroupError(TodatopoError):
    """A Weyl element was used outside the parabolic subgroup it must lie in."""


class CorruptComplexError(TodatopoError):
    """A chain complex failed an internal consistency check."""


class IncidenceError(TodatopoError):
    """Incidence-number preconditions violated for a pair of critical points."""


class RankGateError(TodatopoError):
    """Morse-complex computation requested beyond the validated rank gate."""


class ConfigError(TodatopoError):
    """Invalid run configuration."""
