"""Result assembly and table emission.

Two report families: the stationarity screen (one row per variable, ADF and
KPSS side by side with an integration order) and the out-of-sample backtest
comparison (one row per model, MSFE plus Diebold-Mariano and Clark-West
against the random-walk benchmark). Each renders as aligned text, CSV, or
JSON. Numeric CSV cells carry 15 significant digits so they parse back to
the same values.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .backtest import BacktestResult, Scheme, backtest
from .errors import (
    DegenerateVariance,
    EmptyInput,
    MissingValue,
    NumericalFailure,
    OrderNotFound,
    RankDeficient,
)
from .models import Dataset, ModelKind, ModelSpec, Timing
from .stattests import (
    TestResult,
    clark_west,
    diebold_mariano,
    integration_order,
    adf_test,
    kpss_test,
)
from .timeseries import Period, TimeSeries


def significance_stars(result: TestResult) -> str:
    """Journal-table marks: *** at 1%, ** at 5%, * at 10%."""
    if result.decision_at.get(0.01):
        return "***"
    if result.decision_at.get(0.05):
        return "**"
    if result.decision_at.get(0.10):
        return "*"
    return ""


def _num(x: float) -> str:
    return format(float(x), ".15g")


# --- stationarity report ---------------------------------------------------

@dataclass(frozen=True)
class StationarityRow:
    variable: str
    adf: TestResult
    kpss: TestResult
    order: int | None


_VARIABLE_SERIES = (
    ("Exchange rate return", "ds_quarterly"),
    ("Interest differential", "i_diff_quarterly"),
    ("Price differential", "p_diff_quarterly"),
    ("Money differential", "m_diff_quarterly"),
    ("Inflation differential", "pi_diff_quarterly"),
    ("Output differential", "y_diff_quarterly"),
    ("Output gap differential", "ygap_diff_quarterly"),
    ("Interest differential (monthly)", "i_diff_monthly"),
    ("Price differential (monthly)", "p_diff_monthly"),
    ("Money differential (monthly)", "m_diff_monthly"),
    ("Inflation differential (monthly)", "pi_diff_monthly"),
)


def stationarity_rows(data: Dataset, max_order: int = 2
                      ) -> list[StationarityRow]:
    """ADF/KPSS screen of every model variable at its own frequency."""
    rows = []
    for label, field in _VARIABLE_SERIES:
        series = getattr(data, field)
        try:
            adf = adf_test(series)
            kpss = kpss_test(series)
        except (RankDeficient, DegenerateVariance) as exc:
            raise NumericalFailure(label, exc) from exc
        try:
            order = integration_order(series, max_order)
        except OrderNotFound:
            order = None
        rows.append(StationarityRow(label, adf, kpss, order))
    return rows


def format_stationarity(rows: list[StationarityRow], fmt: str = "text") -> str:
    headers = ["variable", "adf_stat", "adf_p", "adf_stars",
               "kpss_stat", "kpss_p", "kpss_stars", "order"]
    if fmt == "json":
        payload = [
            {"variable": r.variable,
             "adf_stat": r.adf.statistic, "adf_p": r.adf.p_value,
             "adf_stars": significance_stars(r.adf),
             "kpss_stat": r.kpss.statistic, "kpss_p": r.kpss.p_value,
             "kpss_stars": significance_stars(r.kpss),
             "order": r.order}
            for r in rows]
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        cells = [[r.variable, _num(r.adf.statistic), _num(r.adf.p_value),
                  significance_stars(r.adf), _num(r.kpss.statistic),
                  _num(r.kpss.p_value), significance_stars(r.kpss),
                  "" if r.order is None else str(r.order)]
                 for r in rows]
        return _csv_table(headers, cells)
    cells = [[r.variable,
              f"{r.adf.statistic:.4f}{significance_stars(r.adf)}",
              f"{r.adf.p_value:.3g}",
              f"{r.kpss.statistic:.4f}{significance_stars(r.kpss)}",
              f"{r.kpss.p_value:.3g}",
              "I(?)" if r.order is None else f"I({r.order})"]
             for r in rows]
    return _text_table(
        ["Variable", "ADF", "p", "KPSS", "p", "Order"], cells)


# --- backtest report -------------------------------------------------------

@dataclass(frozen=True)
class BacktestRow:
    model: str
    result: BacktestResult
    dm: TestResult | None
    cw: TestResult | None


def evaluate_models(data: Dataset, specs: list[ModelSpec], scheme: Scheme,
                    train_end: Period, test_end: Period, *,
                    timing: Timing = Timing.CONTEMPORANEOUS,
                    full_sample_gap: bool = False,
                    rw_in_differences: bool = False,
                    max_workers: int | None = None) -> list[BacktestRow]:
    """Backtest every requested model and test it against the random walk.

    Models evaluate concurrently; the returned rows keep the request order.
    Numerical failures inside one model are re-raised as NumericalFailure
    carrying that model's name.
    """
    benchmark = backtest(ModelSpec(ModelKind.RANDOM_WALK), data, scheme,
                         train_end, test_end, timing=timing,
                         rw_in_differences=rw_in_differences)

    def run(spec: ModelSpec) -> BacktestRow:
        if spec.kind is ModelKind.RANDOM_WALK:
            return BacktestRow(spec.name, benchmark, None, None)
        try:
            result = backtest(spec, data, scheme, train_end, test_end,
                              timing=timing, full_sample_gap=full_sample_gap,
                              rw_in_differences=rw_in_differences)
            dm = diebold_mariano(benchmark.errors, result.errors, h=1)
            cw = clark_west(benchmark.errors, result.errors,
                            benchmark.forecasts, result.forecasts, h=1)
        except (RankDeficient, DegenerateVariance) as exc:
            raise NumericalFailure(spec.name, exc) from exc
        return BacktestRow(spec.name, result, dm, cw)

    if len(specs) <= 1:
        return [run(s) for s in specs]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(run, specs))


def format_backtest(rows: list[BacktestRow], fmt: str = "text") -> str:
    headers = ["model", "msfe", "dm_stat", "dm_p", "dm_stars",
               "cw_stat", "cw_p", "cw_stars"]
    if fmt == "json":
        payload = []
        for r in rows:
            entry = {"model": r.model, "msfe": r.result.msfe,
                     "n_forecasts": r.result.n_forecasts}
            if r.dm is None:
                entry.update(dm_stat=None, dm_p=None, dm_stars=None,
                             cw_stat=None, cw_p=None, cw_stars=None)
            else:
                entry.update(dm_stat=r.dm.statistic, dm_p=r.dm.p_value,
                             dm_stars=significance_stars(r.dm),
                             cw_stat=r.cw.statistic, cw_p=r.cw.p_value,
                             cw_stars=significance_stars(r.cw))
            payload.append(entry)
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        cells = []
        for r in rows:
            if r.dm is None:
                cells.append([r.model, _num(r.result.msfe),
                              "-", "-", "", "-", "-", ""])
            else:
                cells.append([r.model, _num(r.result.msfe),
                              _num(r.dm.statistic), _num(r.dm.p_value),
                              significance_stars(r.dm),
                              _num(r.cw.statistic), _num(r.cw.p_value),
                              significance_stars(r.cw)])
        return _csv_table(headers, cells)
    cells = []
    for r in rows:
        if r.dm is None:
            cells.append([r.model, f"{r.result.msfe:.6f}", "-", "-", "-", "-"])
        else:
            cells.append([
                r.model, f"{r.result.msfe:.6f}",
                f"{r.dm.statistic:.4f}{significance_stars(r.dm)}",
                f"{r.dm.p_value:.3g}",
                f"{r.cw.statistic:.4f}{significance_stars(r.cw)}",
                f"{r.cw.p_value:.3g}",
            ])
    return _text_table(["Model", "MSFE", "DM", "p", "CW", "p"], cells)


# --- plot data -------------------------------------------------------------

class PlotSelection(enum.Enum):
    LEVELS = "levels"
    RETURNS = "returns"
    PREDICTORS = "predictors"


_PREDICTOR_SERIES = (
    ("i_diff", "i_diff_quarterly"),
    ("p_diff", "p_diff_quarterly"),
    ("m_diff", "m_diff_quarterly"),
    ("pi_diff", "pi_diff_quarterly"),
    ("y_diff", "y_diff_quarterly"),
    ("ygap_diff", "ygap_diff_quarterly"),
)


def plot_rows(data: Dataset, selections: list[PlotSelection]
              ) -> list[tuple[str, str, float]]:
    """Tidy (period, series, value) rows for external plotting tools."""
    if not selections:
        raise EmptyInput("nothing selected to plot")
    out: list[tuple[str, str, float]] = []

    def emit(name: str, series: TimeSeries) -> None:
        for k in range(len(series)):
            out.append((str(series.period(k)), name, float(series.values[k])))

    for sel in selections:
        if sel is PlotSelection.LEVELS:
            if data.log_s_quarterly is None:
                raise MissingValue(
                    None, "snapshot carries no exchange-rate level series")
            emit("log_exchange_rate", data.log_s_quarterly)
        elif sel is PlotSelection.RETURNS:
            emit("exchange_rate_return", data.ds_quarterly)
        else:
            for name, field in _PREDICTOR_SERIES:
                emit(name, getattr(data, field))
    return out


def format_plot_rows(rows: list[tuple[str, str, float]]) -> str:
    cells = [[p, s, _num(v)] for p, s, v in rows]
    return _csv_table(["period", "series", "value"], cells)


# --- low-level table writers ----------------------------------------------

def _csv_table(headers: list[str], cells: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(cells)
    return buf.getvalue()


def _text_table(headers: list[str], cells: list[list[str]]) -> str:
    table = [headers] + cells
    widths = [max(len(row[j]) for row in table) for j in range(len(headers))]
    lines = []
    for i, row in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
