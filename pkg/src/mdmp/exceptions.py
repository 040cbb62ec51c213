"""Error types raised across the package.

Two families matter to callers: :class:`DataError` covers malformed or
degenerate inputs (bad CSV cells, labels that make a metric undefined),
:class:`InfeasibleError` covers structurally impossible requests (window
longer than the series, more neighbors than the exclusion zones permit).
The command line maps the families to distinct exit codes.
"""


class MdmpError(Exception):
    """Base class for every error raised by this package."""


class DataError(MdmpError, ValueError):
    """Input data is malformed or degenerate."""


class InfeasibleError(MdmpError, ValueError):
    """The requested computation cannot exist for these arguments."""


class InvalidWindow(InfeasibleError):
    """Window length is outside ``1 <= m <= n`` (or ``m < 2`` where a
    z-normalization needs at least two points)."""


class StatsMismatch(InfeasibleError):
    """Precomputed window statistics do not match the series or window."""


class SeriesTooShort(InfeasibleError):
    """Series cannot host a single query window plus its exclusion zone."""


class InfeasibleK(InfeasibleError):
    """Fewer than ``k`` neighbors are selectable under the exclusion rule."""


class DimMismatch(InfeasibleError):
    """Two series that must share a dimension count do not."""


class RankOutOfRange(InfeasibleError):
    """A profile column (dimension rank) was requested that does not exist."""


class SpecInvalid(InfeasibleError):
    """A synthetic fixture description is internally inconsistent."""


class ParseError(DataError):
    """A CSV cell or row could not be parsed; names the row and column."""


class NonFiniteValue(DataError):
    """A value cell is NaN or infinite and imputation was not requested."""


class NonMonotonicTimestamp(DataError):
    """Timestamps are not strictly increasing."""


class DegenerateLabels(DataError):
    """A label vector with no positives or no negatives makes the metric
    undefined."""


class NoAnomalyRange(DataError):
    """Range-based metrics need at least one labeled anomaly range."""


class NoAnomalyInTrainLabels(DataError):
    """Supervised search needs at least one labeled anomaly in train."""
