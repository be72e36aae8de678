"""Exception types shared across the package."""


class AlcoveError(Exception):
    """Base class for all package errors."""


class InvalidType(AlcoveError):
    """Unsupported (series, rank) combination."""


class NotACoroot(AlcoveError):
    """Argument is not a coroot of the given root datum."""


class RankTooLarge(AlcoveError):
    """Enumeration refused beyond the supported rank cap."""


class InfiniteParabolic(AlcoveError):
    """The requested parabolic subgroup is not finite."""


class NotDominant(AlcoveError):
    """A dominant weight was required."""


class NonExactDivision(AlcoveError):
    """Division left a nonzero remainder; signals a bug upstream."""


class NotInvariant(AlcoveError):
    """Input failed a required (anti-)invariance check."""


class PointsNotSeparated(AlcoveError):
    """Two interpolation points coincide on T/W."""


class IdealTooComplex(AlcoveError):
    """Ideal-membership reduction exceeded its degree cap."""


class InsufficientTruncation(AlcoveError):
    """A fixed-point family does not cover the needed coset representatives."""


class UsageError(AlcoveError):
    """Bad command-line arguments."""
