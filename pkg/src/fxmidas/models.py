"""Thirteen exchange-rate equations over a shared quarterly/monthly dataset.

Classical models regress the quarterly log exchange-rate return on quarterly
differentials (domestic minus foreign) of the usual fundamentals: interest
rates, prices, money, output, inflation, output gap. The MF- variants keep
the same equations but let every monthly-observable regressor enter through
its three intra-quarter months, one free coefficient per month, most recent
month first. GDP and the output gap have no monthly incarnation and always
enter as single quarterly columns.

Forecasts are one step ahead. The default convention is the
realized-fundamentals one: the relation is estimated contemporaneously and
the forecast for quarter t+1 uses the regressors of t+1. ``Timing.LAGGED``
shifts every regressor back one quarter for a strictly predictive variant.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import (
    IllegalRestriction,
    InsufficientHistory,
    InsufficientSpan,
    InvalidWindow,
    OrderNotFound,
    WrongFrequency,
)
from .filters import output_gap
from .regression import DesignMatrix, ols_fit, predict
from .timeseries import (
    MONTHS_PER_QUARTER,
    AggregationMethod,
    Frequency,
    Period,
    TimeSeries,
    aggregate_to_quarterly,
    align_span,
    diff,
    differential,
)


class ModelKind(enum.Enum):
    """The model zoo, addressable by the conventional acronyms."""

    RANDOM_WALK = "RW"
    UIRP = "UIRP"
    PPP = "PPP"
    MM1 = "MM1"
    MM2 = "MM2"
    TYLR1 = "TYLR1"
    TYLR2 = "TYLR2"
    MF_UIRP = "MF-UIRP"
    MF_PPP = "MF-PPP"
    MF_MM1 = "MF-MM1"
    MF_MM2 = "MF-MM2"
    MF_TYLR1 = "MF-TYLR1"
    MF_TYLR2 = "MF-TYLR2"

    @classmethod
    def from_acronym(cls, text: str) -> "ModelKind":
        key = text.strip().upper().replace("_", "-")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown model acronym {text!r}")

    @property
    def is_mixed_frequency(self) -> bool:
        return self.value.startswith("MF-")

    @property
    def classical_counterpart(self) -> "ModelKind":
        """The quarterly-only model an MF variant collapses to."""
        if not self.is_mixed_frequency:
            return self
        return ModelKind.from_acronym(self.value[3:])


ALL_KINDS: tuple[ModelKind, ...] = tuple(ModelKind)
ESTIMABLE_KINDS: tuple[ModelKind, ...] = tuple(
    k for k in ModelKind if k is not ModelKind.RANDOM_WALK)
MONEY_RESTRICTABLE: frozenset[ModelKind] = frozenset(
    {ModelKind.MM1, ModelKind.MM2})
GAP_USERS: frozenset[ModelKind] = frozenset(
    {ModelKind.TYLR1, ModelKind.TYLR2, ModelKind.MF_TYLR1, ModelKind.MF_TYLR2})


class Timing(enum.Enum):
    """Dating of regressors relative to the forecast target quarter."""

    CONTEMPORANEOUS = "contemporaneous"
    LAGGED = "lagged_fundamentals"


@dataclass(frozen=True)
class ModelSpec:
    """One model plus optional coefficient restrictions.

    ``restrict_alpha_zero`` drops the intercept. ``restrict_money_unity``
    pins the money-differential coefficient at one by moving that regressor
    to the left-hand side before estimation; it is defined only for the
    quarterly monetary models.
    """

    kind: ModelKind
    restrict_alpha_zero: bool = False
    restrict_money_unity: bool = False

    def __post_init__(self):
        if self.kind is ModelKind.RANDOM_WALK and (
                self.restrict_alpha_zero or self.restrict_money_unity):
            raise IllegalRestriction("the random-walk benchmark estimates nothing")
        if self.restrict_money_unity and self.kind not in MONEY_RESTRICTABLE:
            raise IllegalRestriction(
                f"money-unity restriction is undefined for {self.kind.value}")

    @property
    def name(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class ColumnDef:
    """One regressor column: a source series plus its dating.

    Monthly columns address month ``3t - month_offset`` of the row's
    quarter; quarterly columns address quarter ``t - lag_q``.
    """

    label: str
    source: str
    monthly: bool
    lag_q: int = 0
    month_offset: int = 0


def _m3(stem: str) -> tuple[ColumnDef, ...]:
    return tuple(
        ColumnDef(f"{stem}_3t" + (f"-{j}" if j else ""), stem, True,
                  month_offset=j)
        for j in range(MONTHS_PER_QUARTER))


def _q(stem: str, lag: int = 0) -> ColumnDef:
    label = f"{stem}_t" + (f"-{lag}" if lag else "")
    return ColumnDef(label, stem, False, lag_q=lag)


_COLUMNS: dict[ModelKind, tuple[ColumnDef, ...]] = {
    ModelKind.RANDOM_WALK: (),
    ModelKind.UIRP: (_q("i_diff"),),
    ModelKind.PPP: (_q("p_diff"),),
    ModelKind.MM1: (_q("i_diff"), _q("y_diff"), _q("m_diff")),
    ModelKind.MM2: (_q("i_diff"), _q("y_diff"), _q("m_diff"), _q("p_diff")),
    ModelKind.TYLR1: (_q("pi_diff"), _q("ygap_diff")),
    ModelKind.TYLR2: (_q("pi_diff"), _q("ygap_diff"), _q("i_diff", lag=1)),
    ModelKind.MF_UIRP: _m3("i_diff"),
    ModelKind.MF_PPP: _m3("p_diff"),
    ModelKind.MF_MM1: _m3("i_diff") + (_q("y_diff"),) + _m3("m_diff"),
    ModelKind.MF_MM2: (_m3("i_diff") + (_q("y_diff"),) + _m3("m_diff")
                       + _m3("p_diff")),
    ModelKind.MF_TYLR1: _m3("pi_diff") + (_q("ygap_diff"),),
    ModelKind.MF_TYLR2: _m3("pi_diff") + (_q("ygap_diff"),) + _m3("i_diff"),
}

_MONEY_LABEL = "m_diff_t"


def model_columns(kind: ModelKind) -> tuple[ColumnDef, ...]:
    """Regressor columns of a model, in equation order."""
    return _COLUMNS[kind]


def regressor_month_offsets(spec: ModelSpec,
                            timing: Timing = Timing.CONTEMPORANEOUS
                            ) -> dict[str, int]:
    """Timestamp of each regressor in months relative to the end of the
    forecast target quarter. Non-positive offsets mean no regressor reaches
    past the information set the convention allows."""
    shift = 0 if timing is Timing.CONTEMPORANEOUS else MONTHS_PER_QUARTER
    out = {}
    for col in model_columns(spec.kind):
        if col.monthly:
            out[col.label] = -col.month_offset - shift
        else:
            out[col.label] = -MONTHS_PER_QUARTER * col.lag_q - shift
    return out


# --- the dataset -----------------------------------------------------------

_MONTHLY_FIELDS = ("i_diff_monthly", "p_diff_monthly", "m_diff_monthly",
                   "pi_diff_monthly")
_QUARTERLY_FIELDS = ("ds_quarterly", "y_diff_quarterly", "ygap_diff_quarterly",
                     "i_diff_quarterly", "p_diff_quarterly",
                     "m_diff_quarterly", "pi_diff_quarterly")
_REGRESSOR_FIELDS = _MONTHLY_FIELDS + _QUARTERLY_FIELDS[1:]


@dataclass(frozen=True, eq=False)
class Dataset:
    """Aligned model inputs: one quarterly calendar, monthly series covering
    exactly three months per quarter.

    The ``*_quarterly`` differentials are aggregates of their monthly
    counterparts under ``aggregation``. ``log_gdp_domestic/foreign`` are kept
    (when available) so the output gap can be re-filtered on the estimation
    sample of each forecast origin instead of the full span.
    """

    ds_quarterly: TimeSeries
    i_diff_monthly: TimeSeries
    p_diff_monthly: TimeSeries
    m_diff_monthly: TimeSeries
    pi_diff_monthly: TimeSeries
    y_diff_quarterly: TimeSeries
    ygap_diff_quarterly: TimeSeries
    i_diff_quarterly: TimeSeries
    p_diff_quarterly: TimeSeries
    m_diff_quarterly: TimeSeries
    pi_diff_quarterly: TimeSeries
    log_s_quarterly: TimeSeries | None = None
    log_gdp_domestic: TimeSeries | None = None
    log_gdp_foreign: TimeSeries | None = None
    hp_lambda: float = 1600.0
    aggregation: AggregationMethod = AggregationMethod.LAST_OF_QUARTER
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        q = self.ds_quarterly
        if q.freq is not Frequency.QUARTERLY:
            raise WrongFrequency("ds_quarterly must be quarterly")
        for name in _QUARTERLY_FIELDS + ("log_s_quarterly",
                                         "log_gdp_domestic",
                                         "log_gdp_foreign"):
            s = getattr(self, name)
            if s is None:
                continue
            if s.freq is not Frequency.QUARTERLY:
                raise WrongFrequency(f"{name} must be quarterly")
            if s.start != q.start or len(s) != len(q):
                raise InsufficientSpan(
                    f"{name} spans {s.start}..{s.end}, expected "
                    f"{q.start}..{q.end}")
        m_start = q.start.first_month()
        for name in _MONTHLY_FIELDS:
            s = getattr(self, name)
            if s.freq is not Frequency.MONTHLY:
                raise WrongFrequency(f"{name} must be monthly")
            if s.start != m_start or len(s) != MONTHS_PER_QUARTER * len(q):
                raise InsufficientSpan(
                    f"{name} must cover exactly the months of "
                    f"{q.start}..{q.end}")

    @property
    def start(self) -> Period:
        return self.ds_quarterly.start

    @property
    def end(self) -> Period:
        return self.ds_quarterly.end

    @property
    def n_quarters(self) -> int:
        return len(self.ds_quarterly)

    def truncate(self, last: Period) -> "Dataset":
        """Drop every observation after quarter ``last``."""
        if last < self.start:
            raise InsufficientSpan(f"{last} precedes dataset start {self.start}")
        if self.end <= last:
            return self
        replacements = {}
        for name in _QUARTERLY_FIELDS + ("log_s_quarterly",
                                         "log_gdp_domestic",
                                         "log_gdp_foreign"):
            s = getattr(self, name)
            if s is not None:
                replacements[name] = s.slice(self.start, last)
        last_m = last.last_month()
        for name in _MONTHLY_FIELDS:
            s = getattr(self, name)
            replacements[name] = s.slice(s.start, last_m)
        return dataclasses.replace(self, **replacements)

    def with_refiltered_gap(self) -> "Dataset":
        """Recompute the output-gap differential by HP-filtering the stored
        log GDP levels over this dataset's own span."""
        if self.log_gdp_domestic is None or self.log_gdp_foreign is None:
            return self
        gap = differential(output_gap(self.log_gdp_domestic, self.hp_lambda),
                           output_gap(self.log_gdp_foreign, self.hp_lambda))
        return dataclasses.replace(self, ygap_diff_quarterly=gap)


def build_dataset(*,
                  ds_quarterly: TimeSeries,
                  i_diff_monthly: TimeSeries,
                  p_diff_monthly: TimeSeries,
                  m_diff_monthly: TimeSeries,
                  pi_diff_monthly: TimeSeries,
                  y_diff_quarterly: TimeSeries,
                  ygap_diff_quarterly: TimeSeries,
                  aggregation: AggregationMethod = AggregationMethod.LAST_OF_QUARTER,
                  hp_lambda: float = 1600.0,
                  log_s_quarterly: TimeSeries | None = None,
                  log_gdp_domestic: TimeSeries | None = None,
                  log_gdp_foreign: TimeSeries | None = None,
                  meta: Mapping | None = None) -> Dataset:
    """Aggregate the monthly differentials and trim everything to the common
    quarterly span.

    The resulting quarterly calendar is the intersection of all quarterly
    inputs with the complete quarters of every monthly input.
    """
    aggregates = {
        stem: aggregate_to_quarterly(series, aggregation)
        for stem, series in (("i_diff", i_diff_monthly),
                             ("p_diff", p_diff_monthly),
                             ("m_diff", m_diff_monthly),
                             ("pi_diff", pi_diff_monthly))
    }
    quarterly = {
        "ds_quarterly": ds_quarterly,
        "y_diff_quarterly": y_diff_quarterly,
        "ygap_diff_quarterly": ygap_diff_quarterly,
        "i_diff_quarterly": aggregates["i_diff"],
        "p_diff_quarterly": aggregates["p_diff"],
        "m_diff_quarterly": aggregates["m_diff"],
        "pi_diff_quarterly": aggregates["pi_diff"],
    }
    optional = {
        "log_s_quarterly": log_s_quarterly,
        "log_gdp_domestic": log_gdp_domestic,
        "log_gdp_foreign": log_gdp_foreign,
    }
    present = {k: v for k, v in optional.items() if v is not None}

    names = list(quarterly) + list(present)
    aligned = align_span([quarterly[n] if n in quarterly else present[n]
                          for n in names])
    trimmed = dict(zip(names, aligned))
    q_start = aligned[0].start
    q_end = aligned[0].end

    monthly = {
        "i_diff_monthly": i_diff_monthly,
        "p_diff_monthly": p_diff_monthly,
        "m_diff_monthly": m_diff_monthly,
        "pi_diff_monthly": pi_diff_monthly,
    }
    first_m, last_m = q_start.first_month(), q_end.last_month()
    monthly = {name: s.slice(first_m, last_m) for name, s in monthly.items()}

    return Dataset(
        **{n: trimmed[n] for n in quarterly},
        **{n: trimmed.get(n) for n in optional},
        **monthly,
        hp_lambda=hp_lambda,
        aggregation=aggregation,
        meta=dict(meta or {}),
    )


def difference_i1(data: Dataset, max_order: int = 2) -> Dataset:
    """First-difference every regressor series whose integration order is 1.

    Each series is screened at its own frequency (ADF and KPSS at 5%); the
    dependent return series is left untouched. Series whose order cannot be
    determined are also left untouched. Spans re-align afterwards.
    """
    from .stattests import integration_order

    def maybe_diff(series: TimeSeries) -> TimeSeries:
        try:
            d = integration_order(series, max_order)
        except OrderNotFound:
            return series
        return diff(series, 1) if d == 1 else series

    monthly = {name: maybe_diff(getattr(data, name))
               for name in _MONTHLY_FIELDS}
    quarterly = {name: maybe_diff(getattr(data, name))
                 for name in _QUARTERLY_FIELDS[1:]}
    quarterly["ds_quarterly"] = data.ds_quarterly

    # Quarterly span: intersection of quarterly series and the complete
    # quarters of each (possibly shortened) monthly series.
    q_start = max((s.start for s in quarterly.values()),
                  key=lambda p: p - data.start)
    q_end = min((s.end for s in quarterly.values()),
                key=lambda p: p - data.start)
    for s in monthly.values():
        lead = (-(s.start.index - 1)) % MONTHS_PER_QUARTER
        first_full = s.start.advance(lead).to_quarter()
        if q_start < first_full:
            q_start = first_full
        last_full = s.end.advance(-((s.end.index % MONTHS_PER_QUARTER))
                                  ).to_quarter()
        if last_full < q_end:
            q_end = last_full
    if q_end < q_start:
        raise InsufficientSpan("differencing left no common span")

    replacements = {}
    for name, s in quarterly.items():
        replacements[name] = s.slice(q_start, q_end)
    for name in ("log_s_quarterly", "log_gdp_domestic", "log_gdp_foreign"):
        s = getattr(data, name)
        if s is not None:
            replacements[name] = s.slice(q_start, q_end)
    first_m, last_m = q_start.first_month(), q_end.last_month()
    for name, s in monthly.items():
        replacements[name] = s.slice(first_m, last_m)
    return dataclasses.replace(data, **replacements)


# --- design construction ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class _Frame:
    """Regressor rows for every quarter the dataset can populate.

    Row r belongs to quarter ``first + r``. ``money`` holds the values of a
    regressor moved to the left-hand side, aligned to the same rows.
    """

    first: Period
    R: np.ndarray
    labels: tuple[str, ...]
    money: np.ndarray | None


def _build_frame(spec: ModelSpec, data: Dataset) -> _Frame:
    cols = model_columns(spec.kind)
    max_lag = max((c.lag_q for c in cols if not c.monthly), default=0)
    n_rows = data.n_quarters - max_lag
    if n_rows < 1:
        raise InsufficientSpan(
            f"{spec.name} needs {max_lag + 1} quarters, have {data.n_quarters}")
    columns = []
    for col in cols:
        if col.monthly:
            series = getattr(data, f"{col.source}_monthly")
            offset = MONTHS_PER_QUARTER * max_lag + (MONTHS_PER_QUARTER - 1
                                                     - col.month_offset)
            values = series.values[offset::MONTHS_PER_QUARTER][:n_rows]
        else:
            series = getattr(data, f"{col.source}_quarterly")
            lo = max_lag - col.lag_q
            values = series.values[lo:lo + n_rows]
        columns.append(values)
    R = np.column_stack(columns) if columns else np.empty((n_rows, 0))
    labels = tuple(c.label for c in cols)
    money = None
    if spec.restrict_money_unity:
        idx = labels.index(_MONEY_LABEL)
        money = R[:, idx].copy()
        R = np.delete(R, idx, axis=1)
        labels = labels[:idx] + labels[idx + 1:]
    return _Frame(data.start.advance(max_lag), R, labels, money)


def build_design(spec: ModelSpec, data: Dataset,
                 timing: Timing = Timing.CONTEMPORANEOUS
                 ) -> tuple[np.ndarray, DesignMatrix]:
    """Full-sample (y, X) for one model.

    y is the quarterly return; X carries one labelled column per regressor
    of the model's equation. The random walk yields an empty design.
    """
    if spec.kind is ModelKind.RANDOM_WALK:
        y = data.ds_quarterly.values.copy()
        return y, DesignMatrix(np.empty((y.size, 0)), ())
    frame = _build_frame(spec, data)
    skip = frame.first - data.start
    if timing is Timing.CONTEMPORANEOUS:
        y = data.ds_quarterly.values[skip:].copy()
        X = frame.R
        money = frame.money
    else:
        if frame.R.shape[0] < 2:
            raise InsufficientSpan("lagged timing needs one more quarter")
        y = data.ds_quarterly.values[skip + 1:].copy()
        X = frame.R[:-1]
        money = None if frame.money is None else frame.money[:-1]
    if money is not None:
        y = y - money
    return y, DesignMatrix(X, frame.labels)


def _rows_for_origin(frame: _Frame, data: Dataset, origin: Period,
                     timing: Timing, window: int | None
                     ) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Estimation rows up to ``origin`` and the prediction row for origin+1.

    Returns (y_est, X_est, x_pred, pred_shift) where pred_shift is the value
    a left-hand-side-moved regressor adds back to the forecast.
    """
    ds = data.ds_quarterly
    if timing is Timing.CONTEMPORANEOUS:
        hi = origin - frame.first        # last estimation row
        pred_idx = hi + 1
        y_lo = frame.first - ds.start
    else:
        pred_idx = origin - frame.first
        hi = pred_idx - 1
        y_lo = (frame.first - ds.start) + 1
    if pred_idx >= frame.R.shape[0] or hi < 0:
        raise InsufficientHistory(
            f"origin {origin} leaves no estimable sample")
    lo = 0
    n_est = hi + 1
    if window is not None:
        if window < 1:
            raise InvalidWindow(f"window must be >= 1, got {window}")
        lo = max(0, n_est - window)
    y_est = ds.values[y_lo + lo: y_lo + hi + 1].copy()
    X_est = frame.R[lo:hi + 1]
    x_pred = frame.R[pred_idx]
    pred_shift = 0.0
    if frame.money is not None:
        y_est = y_est - frame.money[lo:hi + 1]
        pred_shift = float(frame.money[pred_idx])
    return y_est, X_est, x_pred, pred_shift


def _fit_and_predict(spec: ModelSpec, frame: _Frame, data: Dataset,
                     origin: Period, timing: Timing,
                     window: int | None) -> float:
    y_est, X_est, x_pred, shift = _rows_for_origin(
        frame, data, origin, timing, window)
    intercept = not spec.restrict_alpha_zero
    p_total = X_est.shape[1] + (1 if intercept else 0)
    if y_est.size < p_total + 2:
        raise InsufficientHistory(
            f"{spec.name} at {origin}: {y_est.size} rows for "
            f"{p_total} parameters")
    fit = ols_fit(DesignMatrix(X_est, frame.labels), y_est,
                  intercept=intercept)
    return predict(fit, x_pred) + shift


def forecast_one_step(spec: ModelSpec, data: Dataset, origin: Period, *,
                      timing: Timing = Timing.CONTEMPORANEOUS,
                      window: int | None = None,
                      full_sample_gap: bool = False,
                      rw_in_differences: bool = False) -> float:
    """Forecast the return of quarter origin+1 with information through the
    convention's cut-off.

    Estimates on quarters up to and including ``origin`` (trailing ``window``
    quarters only, when given). Under the default contemporaneous convention
    the realized regressors of origin+1 feed the prediction, and gap-using
    models re-filter the output gap on data through origin+1 whenever the
    dataset retains log GDP levels; pass ``full_sample_gap=True`` to keep the
    gap filtered once over the full span instead. The random walk ignores
    everything and predicts no change.
    """
    if origin < data.start or data.end <= origin:
        raise InsufficientHistory(
            f"origin {origin} outside forecastable span "
            f"{data.start}..{data.end.advance(-1)}")
    if spec.kind is ModelKind.RANDOM_WALK:
        if rw_in_differences:
            return data.ds_quarterly.value_at(origin)
        return 0.0
    cutoff = origin.advance(1) if timing is Timing.CONTEMPORANEOUS else origin
    d = data.truncate(cutoff)
    if (spec.kind in GAP_USERS and not full_sample_gap
            and d.log_gdp_domestic is not None):
        d = d.with_refiltered_gap()
    frame = _build_frame(spec, d)
    return _fit_and_predict(spec, frame, d, origin, timing, window)
