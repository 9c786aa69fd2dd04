"""Matplotlib renderings of the standard report views.

Everything draws through the Agg backend and writes PNG files, so the
functions work headless and return the paths they wrote.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .models import Dataset  # noqa: E402
from .timeseries import TimeSeries  # noqa: E402


def _time_axis(series: TimeSeries):
    ppy = series.freq.periods_per_year
    p0 = series.start
    base = p0.year + (p0.index - 1) / ppy
    return [base + k / ppy for k in range(len(series))]


def render_exchange_rate(data: Dataset, path, include_levels: bool = True,
                         include_returns: bool = True) -> Path:
    """Level and/or return panels of the exchange rate, stacked."""
    panels = []
    if include_levels and data.log_s_quarterly is not None:
        panels.append(("log exchange rate", data.log_s_quarterly))
    if include_returns:
        panels.append(("quarterly return", data.ds_quarterly))
    fig, axes = plt.subplots(len(panels), 1, figsize=(9, 3 * len(panels)),
                             sharex=True, squeeze=False)
    for ax, (title, series) in zip(axes[:, 0], panels):
        ax.plot(_time_axis(series), series.values, lw=1.0)
        ax.set_title(title)
        ax.axhline(0.0, color="gray", lw=0.5)
    axes[-1, 0].set_xlabel("year")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_predictors(data: Dataset, path) -> Path:
    """Grid of the six quarterly differentials."""
    series = [
        ("interest", data.i_diff_quarterly),
        ("price", data.p_diff_quarterly),
        ("money", data.m_diff_quarterly),
        ("inflation", data.pi_diff_quarterly),
        ("output", data.y_diff_quarterly),
        ("output gap", data.ygap_diff_quarterly),
    ]
    fig, axes = plt.subplots(2, 3, figsize=(12, 6), sharex=True)
    for ax, (title, s) in zip(axes.ravel(), series):
        ax.plot(_time_axis(s), s.values, lw=1.0)
        ax.set_title(f"{title} differential")
        ax.axhline(0.0, color="gray", lw=0.5)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_msfe(rows, path, title: str = "Out-of-sample MSFE") -> Path:
    """Bar chart of MSFE by model for one backtest table."""
    names = [r.model for r in rows]
    values = [r.result.msfe for r in rows]
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(names)), 4))
    bars = ax.bar(range(len(names)), values, color="#4878b0")
    for bar, name in zip(bars, names):
        if name == "RW":
            bar.set_color("#b04848")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("MSFE")
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
