"""Stacking a high-frequency series into aligned low-frequency columns.

A series sampled m times per low-frequency period is reshaped so that row t
holds the m observations of period t ordered most recent first:

    row t = [x_{m t}, x_{m t - 1}, ..., x_{m(t-1)+1}]

With ``k_lags > 0`` each row is extended with the full blocks of the k
preceding periods, so the matrix has ``m * (k_lags + 1)`` columns and loses
its first ``k_lags`` rows. Stacking with ``k_lags == 0`` is a bijection;
:func:`unstack` recovers the original series exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotDivisible, NotInvertible, TooShort, WrongFrequency
from .timeseries import MONTHS_PER_QUARTER, Frequency, Period, TimeSeries


@dataclass(frozen=True, eq=False)
class AlignedMatrix:
    """Low-frequency design block produced by :func:`stack`.

    ``start`` is the low-frequency period of row 0; ``high_start`` the first
    high-frequency period consumed (after any boundary trimming).
    """

    data: np.ndarray
    start: Period
    high_start: Period
    freq_ratio: int
    k_lags: int

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def period(self, row: int) -> Period:
        return self.start.advance(row)


def stack_columns(x: np.ndarray, m: int, k_lags: int = 0) -> np.ndarray:
    """Array-level stacking: shape (m*T,) -> (T - k_lags, m*(k_lags+1)).

    Raises :class:`NotDivisible` when the length is not a multiple of m and
    :class:`TooShort` when fewer than ``k_lags + 1`` complete periods exist.
    """
    x = np.asarray(x, dtype=np.float64)
    if m < 1:
        raise ValueError("m must be >= 1")
    if k_lags < 0:
        raise ValueError("k_lags must be >= 0")
    if x.ndim != 1:
        raise ValueError("input must be one-dimensional")
    if x.size % m != 0:
        raise NotDivisible(f"length {x.size} is not a multiple of m={m}")
    t_full = x.size // m
    if t_full < k_lags + 1:
        raise TooShort(
            f"need at least {k_lags + 1} complete periods, have {t_full}")
    base = x.reshape(t_full, m)[:, ::-1]
    blocks = [base[k_lags - lag: t_full - lag] for lag in range(k_lags + 1)]
    return np.hstack(blocks)


def unstack_columns(mat: np.ndarray, m: int) -> np.ndarray:
    """Inverse of :func:`stack_columns` for ``k_lags == 0``."""
    mat = np.asarray(mat, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[1] != m:
        raise NotInvertible(
            f"expected {m} columns for lossless unstacking, got shape {mat.shape}")
    return mat[:, ::-1].ravel()


def stack(series: TimeSeries, m: int, k_lags: int = 0) -> AlignedMatrix:
    """Calendar-aware stacking of a monthly series into quarterly rows.

    ``m`` must be 3 for a monthly input (rows are quarters) or 1 for a pure
    lag arrangement at the series' own frequency. Months before the first
    quarter boundary are trimmed so rows never straddle quarters.
    """
    if m == MONTHS_PER_QUARTER:
        if series.freq is not Frequency.MONTHLY:
            raise WrongFrequency("m=3 stacking requires a monthly series")
        lead = (-(series.start.index - 1)) % MONTHS_PER_QUARTER
        if lead >= len(series):
            raise TooShort("no complete quarter after boundary trimming")
        high_start = series.start.advance(lead)
        x = series.values[lead:]
        mat = stack_columns(x, m, k_lags)
        start = high_start.to_quarter().advance(k_lags)
    elif m == 1:
        high_start = series.start
        mat = stack_columns(series.values, 1, k_lags)
        start = series.start.advance(k_lags)
    else:
        raise ValueError("m must be 1 or 3 for calendar stacking")
    return AlignedMatrix(mat, start, high_start, m, k_lags)


def unstack(mat: AlignedMatrix) -> TimeSeries:
    """Recover the high-frequency series from a ``k_lags == 0`` stacking."""
    if mat.k_lags != 0:
        raise NotInvertible("stackings with lags drop rows and cannot be inverted")
    values = unstack_columns(mat.data, mat.freq_ratio)
    return TimeSeries(mat.high_start, values)
