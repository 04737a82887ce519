"""Exception hierarchy shared across the package."""


class CantorlabError(Exception):
    """Base class for all package errors."""


class NonPositiveEntry(CantorlabError):
    """A gap sequence produced a value <= 0."""


class TableTooShort(CantorlabError):
    """A custom table does not cover the requested number of levels."""


class DegenerateGap(CantorlabError):
    """Sibling intervals would overlap: b_n - k*b_{n+1} <= 0 at some level."""


class LevelExceedsDepth(CantorlabError):
    """A level beyond the constructed depth was requested."""


class MismatchedLevels(CantorlabError):
    """Two interval nodes from different levels (or the same node) were paired."""


class GridMisaligned(CantorlabError):
    """The path's time grid does not contain the interval endpoints needed."""


class OracleCapExceeded(CantorlabError):
    """Exact Gaussian oracle requested above its pairwise-integral cap."""


class ZeroSecondMoment(CantorlabError):
    """Paley-Zygmund bound is undefined when E(Z^2) = 0."""


class TimesOutsideSegment(CantorlabError):
    """Bridge refinement times fall outside the chosen segment."""


class TimesNotOnGrid(CantorlabError):
    """Rescaling endpoints must be existing grid times."""


class AnchorNotEndpoint(CantorlabError):
    """LIL profiles are anchored at interval endpoints only."""


class RegimeMismatch(CantorlabError):
    """Operation requires a summable sequence regime that does not hold."""


class ConfigError(CantorlabError):
    """Malformed or inconsistent experiment configuration."""


class NumericFailure(CantorlabError):
    """A NaN or overflow was detected in a result table."""
