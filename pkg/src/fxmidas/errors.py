"""Exception hierarchy for the package.

Every error raised by the library derives from :class:`FxError` so callers
can catch one base class. Errors that carry diagnostic payloads (an offending
row, a condition-number estimate) expose them as attributes.
"""


class FxError(Exception):
    """Base class for all errors raised by this package."""


# --- calendar / series construction ---------------------------------------

class SeriesTooShort(FxError):
    """A time series does not have enough observations for the operation."""


class NonPositiveValue(FxError):
    """A value that must be strictly positive is zero or negative."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"non-positive value at index {index}")


class FrequencyMismatch(FxError):
    """Two series or periods with different frequencies were combined."""


class WrongFrequency(FxError):
    """The operation requires a series of a different frequency."""


class EmptyOverlap(FxError):
    """Series have no common span."""


class NoCompleteQuarter(FxError):
    """A monthly series does not cover a single complete quarter."""


# --- frequency alignment ---------------------------------------------------

class NotDivisible(FxError):
    """High-frequency length is not a multiple of the frequency ratio."""


class TooShort(FxError):
    """Not enough high-frequency observations for the requested lags."""


class NotInvertible(FxError):
    """The stacked matrix cannot be unstacked without loss."""


# --- regression ------------------------------------------------------------

class DimensionMismatch(FxError):
    """Array shapes are inconsistent for the operation."""


class RankDeficient(FxError):
    """The design matrix is numerically rank deficient."""

    def __init__(self, condition_estimate: float, message: str | None = None):
        self.condition_estimate = condition_estimate
        super().__init__(
            message
            or f"rank-deficient design (condition estimate {condition_estimate:.3e})"
        )


class InvalidShape(FxError):
    """A parameter is outside its admissible region."""


# --- model construction / forecasting --------------------------------------

class IllegalRestriction(FxError):
    """A coefficient restriction is not defined for the chosen model."""


class InsufficientSpan(FxError):
    """The assembled series do not cover the requested sample."""


class InsufficientHistory(FxError):
    """Too few estimation rows are available at the forecast origin."""


class InvalidWindow(FxError):
    """A rolling-window length is non-positive or exceeds the sample."""


# --- statistics ------------------------------------------------------------

class EmptyInput(FxError):
    """An input sequence is empty."""


class DegenerateVariance(FxError):
    """A variance estimate is numerically zero, the statistic is undefined."""


class OrderNotFound(FxError):
    """No integration order up to the allowed maximum satisfied both tests."""

    def __init__(self, max_order: int, message: str | None = None):
        self.max_order = max_order
        super().__init__(
            message or f"no integration order found up to d={max_order}"
        )


# --- ingestion / persistence ----------------------------------------------

class ParseError(FxError):
    """A file or manifest entry could not be parsed."""

    def __init__(self, row: int | None, message: str | None = None):
        self.row = row
        where = f" at row {row}" if row is not None else ""
        super().__init__(message or f"parse error{where}")


class MissingValue(FxError):
    """An observation is missing where one is required."""

    def __init__(self, row: int | None = None, message: str | None = None):
        self.row = row
        where = f" at row {row}" if row is not None else ""
        super().__init__(message or f"missing value{where}")


class NonMonotonicDates(FxError):
    """Dates in a source file do not strictly increase."""

    def __init__(self, row: int | None, message: str | None = None):
        self.row = row
        where = f" at row {row}" if row is not None else ""
        super().__init__(message or f"dates out of order{where}")


class MissingRole(FxError):
    """A manifest does not provide a series for a required role."""

    def __init__(self, role, message: str | None = None):
        self.role = role
        super().__init__(message or f"manifest is missing a series for role {role}")


class VersionMismatch(FxError):
    """A snapshot was written by an incompatible format version."""


class ChecksumFailure(FxError):
    """A snapshot's payload does not match its recorded checksum."""


class NumericalFailure(FxError):
    """A numerical error occurred while evaluating a named model."""

    def __init__(self, model: str, cause: FxError):
        self.model = model
        self.cause = cause
        super().__init__(f"{model}: {cause}")
