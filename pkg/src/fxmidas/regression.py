"""OLS estimation via QR factorization, and MIDAS weight-curve utilities.

The weight generators (exponential Almon, Beta) exist for plotting and
documentation of restricted lag polynomials; estimation everywhere else in
the package is unrestricted OLS, one free coefficient per stacked lag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch, InvalidShape, RankDeficient

RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Regressor block with one symbolic label per column.

    The intercept is never a column; :func:`ols_fit` prepends it on demand.
    """

    data: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatch("design must be a 2-d array")
        labels = tuple(self.labels)
        if len(labels) != arr.shape[1]:
            raise DimensionMismatch(
                f"{len(labels)} labels for {arr.shape[1]} columns")
        if len(set(labels)) != len(labels):
            raise ValueError("column labels must be unique")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "labels", labels)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """OLS output.

    ``coefficients`` starts with the intercept when one was requested,
    followed by one entry per design column in label order. ``covariance``
    is sigma2 * (X'X)^-1 over the same (intercept-first) ordering.
    """

    coefficients: np.ndarray
    residuals: np.ndarray
    sigma2: float
    covariance: np.ndarray
    r2: float
    intercept: bool
    labels: tuple[str, ...]

    @property
    def n_obs(self) -> int:
        return self.residuals.size

    def coefficient(self, label: str) -> float:
        """Coefficient for a named design column."""
        try:
            k = self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None
        return float(self.coefficients[k + (1 if self.intercept else 0)])

    def standard_errors(self) -> np.ndarray:
        return np.sqrt(np.diag(self.covariance))


def ols_fit(X: DesignMatrix, y: np.ndarray, intercept: bool = True) -> RegressionFit:
    """Least-squares fit of y on X via a thin QR factorization.

    Parameters
    ----------
    X : DesignMatrix
        Regressors without intercept column.
    y : array_like
        Dependent vector, same row count as X.
    intercept : bool
        Prepend a constant regressor.

    Raises
    ------
    DimensionMismatch
        Row counts disagree, or fewer rows than parameters.
    RankDeficient
        Smallest |R| diagonal below 1e-10 times the largest.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or y.size != X.rows:
        raise DimensionMismatch(
            f"y has length {y.size}, design has {X.rows} rows")
    n = X.rows
    p = X.cols + (1 if intercept else 0)
    if p == 0:
        raise DimensionMismatch("nothing to estimate: empty design, no intercept")
    if n < p:
        raise DimensionMismatch(f"{n} rows cannot identify {p} parameters")

    A = np.column_stack([np.ones(n), X.data]) if intercept else X.data
    Q, R = np.linalg.qr(A, mode="reduced")
    rdiag = np.abs(np.diag(R))
    if rdiag.min() < RANK_TOL * rdiag.max():
        tiny = max(rdiag.min(), np.finfo(float).tiny)
        raise RankDeficient(float(rdiag.max() / tiny))
    beta = solve_triangular(R, Q.T @ y, lower=False)

    fitted = A @ beta
    resid = y - fitted
    ssr = float(resid @ resid)
    dof = n - p
    sigma2 = ssr / dof if dof > 0 else 0.0
    rinv = solve_triangular(R, np.eye(p), lower=False)
    covariance = sigma2 * (rinv @ rinv.T)

    tss = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ssr / tss if tss > 0 else (1.0 if ssr == 0.0 else 0.0)

    return RegressionFit(
        coefficients=beta,
        residuals=resid,
        sigma2=sigma2,
        covariance=covariance,
        r2=r2,
        intercept=intercept,
        labels=X.labels,
    )


def predict(fit: RegressionFit, x_row: np.ndarray) -> float:
    """Point prediction alpha + x_row . beta for one regressor row."""
    x_row = np.asarray(x_row, dtype=np.float64)
    if x_row.ndim != 1 or x_row.size != len(fit.labels):
        raise DimensionMismatch(
            f"row has {x_row.size} values, fit expects {len(fit.labels)}")
    if fit.intercept:
        return float(fit.coefficients[0] + x_row @ fit.coefficients[1:])
    return float(x_row @ fit.coefficients)


def exp_almon_weights(theta: np.ndarray, K: int) -> np.ndarray:
    """Normalized exponential Almon weights over lags 0..K.

    w_k proportional to exp(theta1*k + theta2*k^2); the log-weights are
    recentered before exponentiation so large theta cannot overflow.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (2,):
        raise InvalidShape("theta must have exactly two entries")
    if K < 0:
        raise InvalidShape("K must be >= 0")
    k = np.arange(K + 1, dtype=np.float64)
    logw = theta[0] * k + theta[1] * k ** 2
    logw -= logw.max()
    w = np.exp(logw)
    return w / w.sum()


def beta_weights(theta1: float, theta2: float, K: int) -> np.ndarray:
    """Normalized Beta-density weights over lags 0..K.

    w_k proportional to u^(theta1-1) * (1-u)^(theta2-1) at the interior
    points u_k = (k+1)/(K+2), so the endpoints never touch 0 or 1.
    """
    if theta1 <= 0 or theta2 <= 0:
        raise InvalidShape("Beta shape parameters must be positive")
    if K < 0:
        raise InvalidShape("K must be >= 0")
    u = (np.arange(K + 1, dtype=np.float64) + 1.0) / (K + 2.0)
    logw = (theta1 - 1.0) * np.log(u) + (theta2 - 1.0) * np.log1p(-u)
    logw -= logw.max()
    w = np.exp(logw)
    return w / w.sum()
