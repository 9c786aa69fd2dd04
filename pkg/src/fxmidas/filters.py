"""Derived predictors: Hodrick-Prescott trend/cycle, output gap, inflation.

The HP trend solves (I + lambda * D'D) tau = y where D is the (T-2) x T
second-difference operator. The matrix is symmetric positive definite and
pentadiagonal, so a banded Cholesky solve is exact up to rounding and runs
in O(T).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solveh_banded

from .errors import SeriesTooShort
from .timeseries import Frequency, TimeSeries, diff

HP_LAMBDA_QUARTERLY = 1600.0
HP_LAMBDA_MONTHLY = 129600.0


@dataclass(frozen=True, eq=False)
class TrendCycle:
    """HP decomposition; ``trend + cycle`` reconstructs the input."""

    trend: TimeSeries
    cycle: TimeSeries


def hp_trend_values(y: np.ndarray, lam: float) -> np.ndarray:
    """Solve the HP system for a plain array and return the trend."""
    y = np.asarray(y, dtype=np.float64)
    n = y.size
    if n < 4:
        raise SeriesTooShort("HP filter needs at least 4 observations")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    # Upper banded storage of I + lam*D'D: ab[2] main diagonal, ab[1] first
    # superdiagonal, ab[0] second superdiagonal. D'D rows at the edges carry
    # fewer second differences, hence the [1,5,6,...,6,5,1] pattern.
    main = np.full(n, 6.0)
    main[0] = main[-1] = 1.0
    main[1] = main[-2] = 5.0
    off1 = np.full(n - 1, -4.0)
    off1[0] = off1[-1] = -2.0
    ab = np.zeros((3, n))
    ab[0, 2:] = lam
    ab[1, 1:] = lam * off1
    ab[2] = 1.0 + lam * main
    return solveh_banded(ab, y, lower=False)


def hp_filter(series: TimeSeries, lam: float | None = None) -> TrendCycle:
    """Decompose a series into HP trend and cycle.

    ``lam`` defaults to 1600 for quarterly input and 129600 for monthly.
    """
    if lam is None:
        lam = (HP_LAMBDA_QUARTERLY if series.freq is Frequency.QUARTERLY
               else HP_LAMBDA_MONTHLY)
    trend = hp_trend_values(series.values, lam)
    return TrendCycle(
        trend=TimeSeries(series.start, trend),
        cycle=TimeSeries(series.start, series.values - trend),
    )


def output_gap(log_gdp: TimeSeries, lam: float | None = None) -> TimeSeries:
    """Cyclical component of log GDP, the deviation from its HP trend."""
    return hp_filter(log_gdp, lam).cycle


def inflation(log_price: TimeSeries) -> TimeSeries:
    """First difference of a log price level."""
    return diff(log_price, 1)
