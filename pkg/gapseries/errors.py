"""
Exception hierarchy for gapseries.

Every error raised on purpose by the library derives from GapSeriesError, so
the command host can map it onto an exit code in one place.
"""


class GapSeriesError(Exception):
    pass


class ConfigurationError(GapSeriesError, ValueError):
    pass


class TruncationError(GapSeriesError, ValueError):
    """A coefficient was requested above the truncation order."""


class NotInvertibleError(GapSeriesError, ValueError):
    """The constant term is not a unit of the integers."""


class EnumerationLimitError(GapSeriesError, ValueError):
    pass


class MembershipError(GapSeriesError, ValueError):
    """A value is not a member of the class it was declared in."""


class DimensionError(GapSeriesError, ValueError):
    pass


class HypothesisError(GapSeriesError, ValueError):
    """The request lies outside the hypotheses of the reciprocity theorem."""


class UsageError(GapSeriesError):
    """Invalid flag or argument combination on the command line."""

    def __init__(self, message: str, flag: str = None) -> None:
        super().__init__(message)
        self.flag = flag
