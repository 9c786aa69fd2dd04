"""Out-of-sample backtesting: recursive and rolling one-step-ahead loops.

An origin is the last quarter of the estimation sample; the forecast targets
the following quarter. Origins run from ``train_end`` through the quarter
before ``test_end``, so the forecasts cover exactly ``train_end + 1`` through
``test_end``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, InsufficientSpan, InvalidWindow
from .models import (
    GAP_USERS,
    Dataset,
    ModelKind,
    ModelSpec,
    Timing,
    _build_frame,
    _fit_and_predict,
    forecast_one_step,
)
from .timeseries import Period


class SchemeKind(enum.Enum):
    RECURSIVE = "recursive"
    ROLLING = "rolling"


@dataclass(frozen=True)
class Scheme:
    """Estimation-sample policy: expanding, or a trailing fixed window.

    A rolling window of ``None`` means "use the initial training length",
    resolved when the backtest runs.
    """

    kind: SchemeKind
    window: int | None = None

    def __post_init__(self):
        if self.kind is SchemeKind.RECURSIVE and self.window is not None:
            raise InvalidWindow("a recursive scheme takes no window")
        if self.window is not None and self.window < 1:
            raise InvalidWindow(f"window must be >= 1, got {self.window}")

    @classmethod
    def recursive(cls) -> "Scheme":
        return cls(SchemeKind.RECURSIVE)

    @classmethod
    def rolling(cls, window: int | None = None) -> "Scheme":
        return cls(SchemeKind.ROLLING, window)

    def describe(self) -> str:
        if self.kind is SchemeKind.RECURSIVE:
            return "recursive"
        return f"rolling({self.window if self.window else 'training length'})"


@dataclass(frozen=True, eq=False)
class BacktestResult:
    """Per-origin forecasts and errors for one model under one scheme."""

    spec: ModelSpec
    scheme: Scheme
    origins: tuple[Period, ...]
    forecasts: np.ndarray
    actuals: np.ndarray
    errors: np.ndarray
    msfe: float

    @property
    def n_forecasts(self) -> int:
        return len(self.origins)


def msfe(errors: np.ndarray) -> float:
    """Mean squared forecast error."""
    errors = np.asarray(errors, dtype=np.float64)
    if errors.size == 0:
        raise EmptyInput("no forecast errors")
    return float(np.mean(errors ** 2))


def backtest(spec: ModelSpec, data: Dataset, scheme: Scheme,
             train_end: Period, test_end: Period, *,
             timing: Timing = Timing.CONTEMPORANEOUS,
             full_sample_gap: bool = False,
             rw_in_differences: bool = False) -> BacktestResult:
    """Run the one-step-ahead forecast loop for one model.

    Recursive schemes estimate on everything up to each origin; rolling
    schemes on the trailing window. At the first origin the two coincide
    when the window equals the initial training length. Early rolling
    origins whose window would reach before the data start use what exists
    rather than erroring, which preserves that coincidence.
    """
    if not train_end < test_end:
        raise InvalidWindow(f"train_end {train_end} must precede test_end {test_end}")
    if train_end < data.start or data.end < test_end:
        raise InsufficientSpan(
            f"{train_end}..{test_end} outside data span {data.start}..{data.end}")

    if scheme.kind is SchemeKind.ROLLING:
        window = scheme.window or (train_end - data.start + 1)
    else:
        window = None

    n = test_end - train_end
    origins = tuple(train_end.advance(k) for k in range(n))
    ds = data.ds_quarterly
    actuals = np.array([ds.value_at(o.advance(1)) for o in origins])

    refilter = (spec.kind in GAP_USERS and not full_sample_gap
                and data.log_gdp_domestic is not None)
    if spec.kind is ModelKind.RANDOM_WALK:
        forecasts = (np.array([ds.value_at(o) for o in origins])
                     if rw_in_differences else np.zeros(n))
    elif refilter:
        forecasts = np.array([
            forecast_one_step(spec, data, o, timing=timing, window=window,
                              full_sample_gap=False,
                              rw_in_differences=rw_in_differences)
            for o in origins])
    else:
        frame = _build_frame(spec, data)
        forecasts = np.array([
            _fit_and_predict(spec, frame, data, o, timing, window)
            for o in origins])

    errors = actuals - forecasts
    return BacktestResult(
        spec=spec,
        scheme=scheme,
        origins=origins,
        forecasts=forecasts,
        actuals=actuals,
        errors=errors,
        msfe=msfe(errors),
    )
