"""Calendar-indexed time series at monthly and quarterly frequency.

A :class:`Period` is an immutable (year, index) pair at a fixed frequency,
with ordinal arithmetic so that ``p.advance(k)`` and ``p2 - p1`` behave like
integers. A :class:`TimeSeries` couples a start period with a read-only
float64 vector; all transformations return new objects.

Timing convention: a quarterly period ``1994Q4`` covers months ``1994-10``
through ``1994-12``; aggregation never looks across a quarter boundary.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyOverlap,
    FrequencyMismatch,
    MissingValue,
    NoCompleteQuarter,
    NonPositiveValue,
    SeriesTooShort,
    WrongFrequency,
)

MONTHS_PER_QUARTER = 3


class Frequency(enum.Enum):
    """Observation frequency; the value is the number of periods per year."""

    MONTHLY = 12
    QUARTERLY = 4

    @property
    def periods_per_year(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return self.name.lower()


class AggregationMethod(enum.Enum):
    """How a quarter summarises its three months."""

    LAST_OF_QUARTER = "last_of_quarter"
    QUARTER_MEAN = "quarter_mean"


_QUARTER_RE = re.compile(r"^(\d{4})-?Q(\d)$", re.IGNORECASE)
_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})(?:-\d{2})?$")


@dataclass(frozen=True)
class Period:
    """One calendar period: ``index`` runs 1..12 (monthly) or 1..4 (quarterly)."""

    year: int
    index: int
    freq: Frequency

    def __post_init__(self):
        if not 1 <= self.index <= self.freq.periods_per_year:
            raise ValueError(
                f"period index {self.index} outside 1..{self.freq.periods_per_year}"
            )

    @classmethod
    def parse(cls, text: str) -> "Period":
        """Parse ``'1994Q4'`` / ``'1994-Q4'`` (quarterly) or ``'1994-10'`` (monthly)."""
        m = _QUARTER_RE.match(text.strip())
        if m:
            return cls(int(m.group(1)), int(m.group(2)), Frequency.QUARTERLY)
        m = _MONTH_RE.match(text.strip())
        if m:
            return cls(int(m.group(1)), int(m.group(2)), Frequency.MONTHLY)
        raise ValueError(f"cannot parse period {text!r}")

    def _ordinal(self) -> int:
        return self.year * self.freq.periods_per_year + self.index - 1

    def advance(self, k: int) -> "Period":
        year, idx = divmod(self._ordinal() + k, self.freq.periods_per_year)
        return Period(year, idx + 1, self.freq)

    def _check_freq(self, other: "Period") -> None:
        if self.freq is not other.freq:
            raise FrequencyMismatch(
                f"cannot compare {self.freq.label} and {other.freq.label} periods"
            )

    def __sub__(self, other: "Period") -> int:
        self._check_freq(other)
        return self._ordinal() - other._ordinal()

    def __lt__(self, other: "Period") -> bool:
        self._check_freq(other)
        return self._ordinal() < other._ordinal()

    def __le__(self, other: "Period") -> bool:
        self._check_freq(other)
        return self._ordinal() <= other._ordinal()

    def __gt__(self, other: "Period") -> bool:
        return not self <= other

    def __ge__(self, other: "Period") -> bool:
        return not self < other

    def to_quarter(self) -> "Period":
        """The quarter containing this month."""
        if self.freq is Frequency.QUARTERLY:
            return self
        return Period(self.year, (self.index - 1) // MONTHS_PER_QUARTER + 1,
                      Frequency.QUARTERLY)

    def first_month(self) -> "Period":
        """First month of a quarterly period."""
        if self.freq is not Frequency.QUARTERLY:
            raise WrongFrequency("first_month is defined for quarterly periods")
        return Period(self.year, (self.index - 1) * MONTHS_PER_QUARTER + 1,
                      Frequency.MONTHLY)

    def last_month(self) -> "Period":
        """Last month of a quarterly period."""
        return self.first_month().advance(MONTHS_PER_QUARTER - 1)

    def __str__(self) -> str:
        if self.freq is Frequency.QUARTERLY:
            return f"{self.year}Q{self.index}"
        return f"{self.year}-{self.index:02d}"


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Contiguous observations starting at ``start``, stored as read-only float64."""

    start: Period
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if arr.size < 1:
            raise SeriesTooShort("a series needs at least one observation")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise MissingValue(int(bad[0]),
                               f"non-finite value at position {int(bad[0])}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def freq(self) -> Frequency:
        return self.start.freq

    @property
    def end(self) -> Period:
        return self.start.advance(len(self) - 1)

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return self.start == other.start and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return (f"TimeSeries({self.start}..{self.end}, "
                f"{self.freq.label}, n={len(self)})")

    def period(self, k: int) -> Period:
        return self.start.advance(k)

    def index_of(self, p: Period) -> int:
        if p.freq is not self.freq:
            raise FrequencyMismatch(
                f"{p} is {p.freq.label}, series is {self.freq.label}")
        k = p - self.start
        if not 0 <= k < len(self):
            raise KeyError(f"{p} outside span {self.start}..{self.end}")
        return k

    def value_at(self, p: Period) -> float:
        return float(self.values[self.index_of(p)])

    def slice(self, first: Period, last: Period) -> "TimeSeries":
        """Inclusive sub-series from ``first`` to ``last``."""
        i = self.index_of(first)
        j = self.index_of(last)
        if j < i:
            raise EmptyOverlap(f"{last} precedes {first}")
        return TimeSeries(first, self.values[i:j + 1])


def log_transform(series: TimeSeries) -> TimeSeries:
    """Natural log of every observation; all values must be positive."""
    bad = np.flatnonzero(series.values <= 0.0)
    if bad.size:
        raise NonPositiveValue(int(bad[0]))
    return TimeSeries(series.start, np.log(series.values))


def diff(series: TimeSeries, order: int = 1) -> TimeSeries:
    """Difference ``order`` times; the result starts ``order`` periods later."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if len(series) <= order:
        raise SeriesTooShort(
            f"need more than {order} observations, have {len(series)}")
    return TimeSeries(series.start.advance(order),
                      np.diff(series.values, n=order))


def differential(domestic: TimeSeries, foreign: TimeSeries) -> TimeSeries:
    """Domestic minus foreign over the common span."""
    dom, for_ = align_span([domestic, foreign])
    return TimeSeries(dom.start, dom.values - for_.values)


def aggregate_to_quarterly(series: TimeSeries,
                           method: AggregationMethod) -> TimeSeries:
    """Collapse a monthly series to quarterly.

    Leading months of a partial quarter are dropped, as are trailing ones;
    only complete quarters survive. ``LAST_OF_QUARTER`` keeps the third
    month of each quarter, ``QUARTER_MEAN`` averages the three.
    """
    if series.freq is not Frequency.MONTHLY:
        raise WrongFrequency("aggregation requires a monthly series")
    lead = (-(series.start.index - 1)) % MONTHS_PER_QUARTER
    n_full = (len(series) - lead) // MONTHS_PER_QUARTER
    if n_full < 1:
        raise NoCompleteQuarter(
            f"span {series.start}..{series.end} holds no complete quarter")
    block = series.values[lead:lead + n_full * MONTHS_PER_QUARTER]
    block = block.reshape(n_full, MONTHS_PER_QUARTER)
    if method is AggregationMethod.LAST_OF_QUARTER:
        out = block[:, -1]
    elif method is AggregationMethod.QUARTER_MEAN:
        out = block.mean(axis=1)
    else:  # pragma: no cover
        raise ValueError(f"unknown aggregation {method}")
    q_start = series.start.advance(lead).to_quarter()
    return TimeSeries(q_start, out)


def align_span(series: Sequence[TimeSeries]) -> list[TimeSeries]:
    """Trim every series to the largest common span.

    All inputs must share one frequency; an empty intersection raises
    :class:`EmptyOverlap`.
    """
    if not series:
        raise EmptyOverlap("no series to align")
    freq = series[0].freq
    for s in series[1:]:
        if s.freq is not freq:
            raise FrequencyMismatch(
                f"mixed frequencies {freq.label} and {s.freq.label}")
    first = max(series, key=lambda s: s.start - series[0].start).start
    last = min(series, key=lambda s: s.end - series[0].start).end
    if last < first:
        raise EmptyOverlap("series have no common span")
    return [s.slice(first, last) for s in series]
