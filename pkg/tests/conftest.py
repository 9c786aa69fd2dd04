"""Shared fixtures: synthetic datasets and a CSV corpus on disk.

The corpus imitates a FRED/OECD download for 1985-2019: monthly exchange
rate, interest rates, CPIs and money aggregates, quarterly GDPs, with a
manifest binding them to roles. The exchange-rate innovations are scaled so
the no-change benchmark's mean squared quarterly return over the 1995Q1 to
2019Q1 window sits at a realistic 0.001984.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

import fxmidas as fx

TARGET_RW_MSFE = 0.001984


def quarterly(values, start="1985Q1") -> fx.TimeSeries:
    return fx.TimeSeries(fx.Period.parse(start), np.asarray(values, float))


def monthly(values, start="1985-01") -> fx.TimeSeries:
    return fx.TimeSeries(fx.Period.parse(start), np.asarray(values, float))


def synthetic_dataset(rng=None, n_quarters=60, *, start="1985Q1",
                      ds=None, i_m=None, p_m=None, m_m=None, pi_m=None,
                      y_q=None, ygap_q=None, with_gdp=False,
                      aggregation=fx.AggregationMethod.LAST_OF_QUARTER,
                      hp_lambda=1600.0) -> fx.Dataset:
    """Dataset of the given shape; unspecified series are standard normals."""
    rng = rng or np.random.default_rng(0)
    T, M = n_quarters, 3 * n_quarters
    q0 = fx.Period.parse(start)
    m0 = q0.first_month()

    def m_series(vals):
        vals = rng.normal(size=M) if vals is None else np.asarray(vals, float)
        return fx.TimeSeries(m0, vals)

    def q_series(vals):
        vals = rng.normal(size=T) if vals is None else np.asarray(vals, float)
        return fx.TimeSeries(q0, vals)

    kwargs = {}
    if with_gdp:
        t = np.arange(T)
        dom = 10.0 + 0.005 * t + 0.01 * np.sin(t / 4.0) + rng.normal(0, 0.004, T)
        for_ = 10.2 + 0.004 * t + 0.01 * np.cos(t / 5.0) + rng.normal(0, 0.004, T)
        gdp_dom = fx.TimeSeries(q0, dom)
        gdp_for = fx.TimeSeries(q0, for_)
        gap = fx.differential(fx.output_gap(gdp_dom, hp_lambda),
                              fx.output_gap(gdp_for, hp_lambda))
        kwargs = {"log_gdp_domestic": gdp_dom, "log_gdp_foreign": gdp_for}
        ygap_q = gap.values if ygap_q is None else ygap_q

    return fx.build_dataset(
        ds_quarterly=q_series(ds),
        i_diff_monthly=m_series(i_m),
        p_diff_monthly=m_series(p_m),
        m_diff_monthly=m_series(m_m),
        pi_diff_monthly=m_series(pi_m),
        y_diff_quarterly=q_series(y_q),
        ygap_diff_quarterly=q_series(ygap_q),
        aggregation=aggregation,
        hp_lambda=hp_lambda,
        **kwargs,
    )


# --- CSV corpus ------------------------------------------------------------

def _month_dates(n, year0=1985):
    dates = []
    y, m = year0, 1
    for _ in range(n):
        dates.append(f"{y:04d}-{m:02d}-01")
        m += 1
        if m > 12:
            y, m = y + 1, 1
    return dates


def _quarter_dates(n, year0=1985):
    dates = []
    y, q = year0, 1
    for _ in range(n):
        dates.append(f"{y:04d}-{(3 * q - 2):02d}-01")
        q += 1
        if q > 4:
            y, q = y + 1, 1
    return dates


def _write_csv(path: Path, dates, values, date_col="DATE", value_col="VALUE"):
    lines = [f"{date_col},{value_col}"]
    lines += [f"{d},{v:.10f}" for d, v in zip(dates, values)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_corpus(root: Path, seed: int = 20190401) -> Path:
    """Write the nine source CSVs plus a manifest; returns the manifest path."""
    rng = np.random.default_rng(seed)
    n_m, n_q = 411, 137  # 1985-01..2019-03 monthly, 1985Q1..2019Q1 quarterly

    def ar1(level, phi, sigma, n):
        x = np.empty(n)
        x[0] = level
        shocks = rng.normal(0, sigma, n)
        for k in range(1, n):
            x[k] = level + phi * (x[k - 1] - level) + shocks[k]
        return x

    # Exchange rate: random-walk log level, innovations rescaled so the
    # squared quarterly (end-of-quarter) returns over the 97 test targets
    # average exactly the target benchmark MSFE.
    eps = rng.normal(0.0, 0.0257, n_m)
    eps[0] = 0.0
    log_s = np.log(1.3521) + np.cumsum(eps)
    sq = log_s[2::3]
    dsq = np.diff(sq)
    realized = float(np.mean(dsq[39:136] ** 2))
    eps *= np.sqrt(TARGET_RW_MSFE / realized)
    log_s = np.log(1.3521) + np.cumsum(eps)

    i_dom = ar1(6.0, 0.97, 0.22, n_m)
    i_for = ar1(5.0, 0.97, 0.20, n_m)
    cpi_dom = 100.0 * np.exp(np.cumsum(rng.normal(0.0026, 0.0012, n_m)))
    cpi_for = 100.0 * np.exp(np.cumsum(rng.normal(0.0022, 0.0012, n_m)))
    m3_dom = 100.0 * np.exp(np.cumsum(rng.normal(0.0055, 0.0035, n_m)))
    m3_for = 100.0 * np.exp(np.cumsum(rng.normal(0.0050, 0.0035, n_m)))

    tq = np.arange(n_q)
    gdp_dom = np.exp(13.0 + 0.006 * tq + 0.012 * np.sin(tq / 5.0)
                     + np.cumsum(rng.normal(0, 0.0035, n_q)) * 0.3)
    gdp_for = np.exp(15.5 + 0.0055 * tq + 0.012 * np.cos(tq / 6.0)
                     + np.cumsum(rng.normal(0, 0.0035, n_q)) * 0.3)

    md, qd = _month_dates(n_m), _quarter_dates(n_q)
    _write_csv(root / "excaus.csv", md, np.exp(log_s), value_col="EXCAUS")
    _write_csv(root / "ir_dom.csv", md, i_dom)
    _write_csv(root / "ir_for.csv", md, i_for)
    _write_csv(root / "cpi_dom.csv", md, cpi_dom)
    _write_csv(root / "cpi_for.csv", md, cpi_for)
    _write_csv(root / "m3_dom.csv", md, m3_dom)
    _write_csv(root / "m3_for.csv", md, m3_for)
    _write_csv(root / "gdp_dom.csv", qd, gdp_dom)
    _write_csv(root / "gdp_for.csv", qd, gdp_for)

    manifest = {
        "span": {"start": "1985Q1", "end": "2019Q1"},
        "aggregation": "last_of_quarter",
        "hp_lambda": 1600.0,
        "series": [
            {"role": "exchange_rate", "path": "excaus.csv",
             "frequency": "monthly", "transform": "log",
             "value_column": "EXCAUS"},
            {"role": "interest_domestic", "path": "ir_dom.csv",
             "frequency": "monthly"},
            {"role": "interest_foreign", "path": "ir_for.csv",
             "frequency": "monthly"},
            {"role": "cpi_domestic", "path": "cpi_dom.csv",
             "frequency": "monthly", "transform": "log"},
            {"role": "cpi_foreign", "path": "cpi_for.csv",
             "frequency": "monthly", "transform": "log"},
            {"role": "money_domestic", "path": "m3_dom.csv",
             "frequency": "monthly", "transform": "log"},
            {"role": "money_foreign", "path": "m3_for.csv",
             "frequency": "monthly", "transform": "log"},
            {"role": "gdp_domestic", "path": "gdp_dom.csv",
             "frequency": "quarterly", "transform": "log"},
            {"role": "gdp_foreign", "path": "gdp_for.csv",
             "frequency": "quarterly", "transform": "log"},
        ],
    }
    manifest_path = root / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    return manifest_path


@pytest.fixture(scope="session")
def corpus_manifest(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("corpus")
    return write_corpus(root)


@pytest.fixture(scope="session")
def corpus_dataset(corpus_manifest) -> fx.Dataset:
    return fx.assemble_dataset(fx.load_manifest(corpus_manifest))


@pytest.fixture(scope="session")
def corpus_snapshot(corpus_manifest, corpus_dataset, tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("snap") / "corpus.json"
    fx.snapshot(corpus_dataset, path)
    return path
