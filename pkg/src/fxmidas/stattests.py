"""Predictive-accuracy and unit-root tests.

Diebold-Mariano compares forecast losses against a benchmark; Clark-West
adjusts the comparison for the noise a larger nested model carries under the
null. ADF and KPSS screen series for stationarity from opposite nulls, and
``integration_order`` combines them into the usual joint convention "number
of differences until both tests agree the series is stationary".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.stats import norm

from .errors import (
    DegenerateVariance,
    DimensionMismatch,
    EmptyInput,
    OrderNotFound,
    SeriesTooShort,
)
from .regression import DesignMatrix, ols_fit
from .timeseries import TimeSeries

LEVELS = (0.01, 0.05, 0.10)
_VARIANCE_FLOOR = 1e-15


class Loss(enum.Enum):
    SQUARED_ERROR = "squared_error"


class Deterministic(enum.Enum):
    """Deterministic terms of the ADF regression."""

    CONSTANT = "c"
    CONSTANT_TREND = "ct"


class KpssDeterministic(enum.Enum):
    """Null hypothesis of the KPSS test."""

    LEVEL = "level"
    TREND = "trend"


@dataclass(frozen=True)
class TestResult:
    """Outcome of one statistical test.

    ``decision_at`` maps each conventional level to the reject decision;
    ``meta`` records nuisance choices actually used (lags, bandwidth, n).
    """

    statistic: float
    p_value: float
    decision_at: Mapping[float, bool]
    meta: Mapping = field(default_factory=dict)

    def __str__(self) -> str:
        marks = "".join("*" for lvl in LEVELS if self.decision_at.get(lvl))
        return f"{self.statistic:.4f} (p={self.p_value:.4g}){marks and ' ' + marks}"


def long_run_variance(x: np.ndarray, lags: int) -> float:
    """Bartlett-kernel HAC estimate of the long-run variance of x.

    Autocovariances are normalized by n; ``lags`` counts the off-zero terms
    included, each down-weighted by 1 - j/(lags+1).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise EmptyInput("empty sample")
    if lags < 0:
        raise ValueError("lags must be >= 0")
    e = x - x.mean()
    n = e.size
    v = float(e @ e) / n
    for j in range(1, min(lags, n - 1) + 1):
        gamma = float(e[j:] @ e[:-j]) / n
        v += 2.0 * (1.0 - j / (lags + 1.0)) * gamma
    return v


def _decisions_from_p(p: float) -> dict[float, bool]:
    return {lvl: bool(p < lvl) for lvl in LEVELS}


def diebold_mariano(e_bench: np.ndarray, e_model: np.ndarray, h: int = 1,
                    loss: Loss = Loss.SQUARED_ERROR) -> TestResult:
    """Equal-predictive-accuracy test on the loss differential.

    The differential is d_t = loss(e_bench) - loss(e_model), so a positive
    statistic favours the model over the benchmark. The variance of the mean
    uses h-1 Bartlett lags; at the one-step horizon that is the plain sample
    variance. Two-sided p-value from the standard normal.

    Raises
    ------
    DegenerateVariance
        The differential has (numerically) no variance, e.g. identical
        forecasts.
    """
    e_bench = np.asarray(e_bench, dtype=np.float64)
    e_model = np.asarray(e_model, dtype=np.float64)
    if e_bench.size != e_model.size:
        raise DimensionMismatch(
            f"error vectors of length {e_bench.size} and {e_model.size}")
    n = e_bench.size
    if n == 0:
        raise EmptyInput("no forecast errors")
    if h < 1:
        raise ValueError("horizon must be >= 1")
    if loss is not Loss.SQUARED_ERROR:  # pragma: no cover
        raise ValueError(f"unsupported loss {loss}")
    d = e_bench ** 2 - e_model ** 2
    v = long_run_variance(d, h - 1)
    if v <= _VARIANCE_FLOOR:
        raise DegenerateVariance(
            "loss differential has no variance; forecasts may be identical")
    stat = float(d.mean() / np.sqrt(v / n))
    p = float(2.0 * norm.sf(abs(stat)))
    return TestResult(stat, p, _decisions_from_p(p),
                      meta={"h": h, "hac_lags": h - 1, "n": n,
                            "mean_loss_diff": float(d.mean())})


def clark_west(e_small: np.ndarray, e_large: np.ndarray,
               f_small: np.ndarray, f_large: np.ndarray,
               h: int = 1) -> TestResult:
    """Nested-model comparison with the Clark-West noise adjustment.

    The adjusted differential f_t = e_small^2 - e_large^2 + (f_small -
    f_large)^2 removes the estimation noise that handicaps the larger model
    under the null that the extra regressors are useless. One-sided
    (upper-tail) p-value: large positive statistics favour the large model.
    """
    arrays = [np.asarray(a, dtype=np.float64)
              for a in (e_small, e_large, f_small, f_large)]
    sizes = {a.size for a in arrays}
    if len(sizes) != 1:
        raise DimensionMismatch(f"input lengths differ: {sorted(sizes)}")
    n = arrays[0].size
    if n == 0:
        raise EmptyInput("no forecasts")
    es, el, fs, fl = arrays
    adj = es ** 2 - (el ** 2 - (fs - fl) ** 2)
    v = long_run_variance(adj, h - 1)
    if v <= _VARIANCE_FLOOR:
        raise DegenerateVariance(
            "adjusted differential has no variance; forecasts may coincide")
    stat = float(adj.mean() / np.sqrt(v / n))
    p = float(norm.sf(stat))
    return TestResult(stat, p, _decisions_from_p(p),
                      meta={"h": h, "hac_lags": h - 1, "n": n,
                            "mean_adjusted_diff": float(adj.mean())})


# Asymptotic lower-tail quantiles of the ADF t-distribution; the 1/5/10%
# entries double as the decision critical values.
_ADF_PROBS = np.array([0.01, 0.025, 0.05, 0.10, 0.50, 0.90, 0.95, 0.975, 0.99])
_ADF_QUANTILES = {
    Deterministic.CONSTANT: np.array(
        [-3.43, -3.12, -2.86, -2.57, -1.57, -0.44, -0.07, 0.23, 0.60]),
    Deterministic.CONSTANT_TREND: np.array(
        [-3.96, -3.66, -3.41, -3.12, -2.18, -1.25, -0.94, -0.66, -0.33]),
}
_ADF_CRITICAL = {
    det: {lvl: float(q[list(_ADF_PROBS).index(lvl)]) for lvl in LEVELS}
    for det, q in _ADF_QUANTILES.items()
}

# Upper-tail critical values of the KPSS statistic.
_KPSS_PROBS = np.array([0.10, 0.05, 0.025, 0.01])
_KPSS_QUANTILES = {
    KpssDeterministic.LEVEL: np.array([0.347, 0.463, 0.574, 0.739]),
    KpssDeterministic.TREND: np.array([0.119, 0.146, 0.176, 0.216]),
}
_KPSS_CRITICAL = {
    det: {lvl: float(q[list(_KPSS_PROBS).index(lvl)]) for lvl in LEVELS}
    for det, q in _KPSS_QUANTILES.items()
}


def _series_values(series) -> np.ndarray:
    if isinstance(series, TimeSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def schwert_max_lag(n: int) -> int:
    """Schwert's rule of thumb for the largest ADF lag order."""
    return int(np.floor(12.0 * (n / 100.0) ** 0.25))


def _adf_fit(y: np.ndarray, k: int, first_row: int,
             deterministic: Deterministic):
    """ADF regression with k difference lags on rows starting at first_row.

    Row index i refers to dy[i] = y[i+1] - y[i]; regressors are the lagged
    level y[i], the k previous differences, and a trend when requested.
    """
    dy = np.diff(y)
    rows = np.arange(first_row, dy.size)
    cols = [y[rows]]
    labels = ["y_lag"]
    for j in range(1, k + 1):
        cols.append(dy[rows - j])
        labels.append(f"dy_lag{j}")
    if deterministic is Deterministic.CONSTANT_TREND:
        cols.append(rows.astype(np.float64))
        labels.append("trend")
    X = DesignMatrix(np.column_stack(cols), tuple(labels))
    return ols_fit(X, dy[rows], intercept=True)


def adf_test(series, deterministic: Deterministic = Deterministic.CONSTANT,
             max_lag: int | None = None) -> TestResult:
    """Augmented Dickey-Fuller unit-root test.

    The lag order is chosen by AIC over 0..max_lag on a common sample, then
    the reported regression is refit on all rows the chosen order allows.
    ``max_lag`` defaults to the Schwert rule and is capped so at least three
    residual degrees of freedom remain. Rejection (small statistic) says the
    series has no unit root.
    """
    y = _series_values(series)
    n = y.size
    if n < 15:
        raise SeriesTooShort(f"ADF needs at least 15 observations, have {n}")
    det_cols = 2 if deterministic is Deterministic.CONSTANT_TREND else 1
    cap = (n - 1 - det_cols - 4) // 2
    kmax = min(schwert_max_lag(n), max(cap, 0)) if max_lag is None \
        else min(max_lag, max(cap, 0))

    best_k = 0
    best_aic = np.inf
    for k in range(kmax + 1):
        fit = _adf_fit(y, k, kmax, deterministic)
        n_eff = fit.n_obs
        ssr = float(fit.residuals @ fit.residuals)
        p_params = 1 + det_cols + k
        aic = n_eff * np.log(ssr / n_eff) + 2.0 * p_params
        if aic < best_aic - 1e-12:
            best_aic = aic
            best_k = k

    fit = _adf_fit(y, best_k, best_k, deterministic)
    idx = 1 + fit.labels.index("y_lag")
    se = float(np.sqrt(fit.covariance[idx, idx]))
    stat = float(fit.coefficients[idx] / se)

    quantiles = _ADF_QUANTILES[deterministic]
    p = float(np.interp(stat, quantiles, _ADF_PROBS, left=0.0, right=1.0))
    crit = _ADF_CRITICAL[deterministic]
    decisions = {lvl: bool(stat < crit[lvl]) for lvl in LEVELS}
    return TestResult(stat, p, decisions,
                      meta={"lags": best_k, "max_lag": kmax, "n": n,
                            "deterministic": deterministic.value,
                            "critical_values": dict(crit)})


def kpss_test(series,
              deterministic: KpssDeterministic = KpssDeterministic.LEVEL
              ) -> TestResult:
    """KPSS stationarity test.

    The null is stationarity (around a level or a trend); rejection (large
    statistic) says the series wanders. Long-run variance uses the Bartlett
    kernel at the automatic bandwidth floor(4 * (n/100)^(2/9)).
    """
    y = _series_values(series)
    n = y.size
    if n < 15:
        raise SeriesTooShort(f"KPSS needs at least 15 observations, have {n}")
    if deterministic is KpssDeterministic.LEVEL:
        e = y - y.mean()
    else:
        t = np.arange(n, dtype=np.float64)
        X = np.column_stack([np.ones(n), t])
        beta, *_ = np.linalg.lstsq(X, y, rcond=None)
        e = y - X @ beta
    bandwidth = int(np.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))
    s2 = float(e @ e) / n
    for j in range(1, min(bandwidth, n - 1) + 1):
        gamma = float(e[j:] @ e[:-j]) / n
        s2 += 2.0 * (1.0 - j / (bandwidth + 1.0)) * gamma
    partial = np.cumsum(e)
    num = float(partial @ partial) / (n * n)
    stat = num / s2 if s2 > _VARIANCE_FLOOR else 0.0

    quantiles = _KPSS_QUANTILES[deterministic]
    p = float(np.interp(stat, quantiles, _KPSS_PROBS,
                        left=_KPSS_PROBS[0], right=_KPSS_PROBS[-1]))
    crit = _KPSS_CRITICAL[deterministic]
    decisions = {lvl: bool(stat > crit[lvl]) for lvl in LEVELS}
    return TestResult(stat, p, decisions,
                      meta={"bandwidth": bandwidth, "n": n,
                            "deterministic": deterministic.value,
                            "critical_values": dict(crit)})


def integration_order(series, max_order: int = 2) -> int:
    """Differences needed until ADF rejects and KPSS does not, both at 5%.

    Returns the smallest order d <= max_order on which the two tests agree
    the differenced series is stationary; raises OrderNotFound otherwise.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    y = _series_values(series)
    for d in range(max_order + 1):
        z = np.diff(y, n=d) if d else y
        if z.size < 15:
            break
        adf = adf_test(z)
        kpss = kpss_test(z)
        if adf.decision_at[0.05] and not kpss.decision_at[0.05]:
            return d
    raise OrderNotFound(max_order)
