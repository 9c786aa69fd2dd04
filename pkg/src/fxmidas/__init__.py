"""Mixed-frequency exchange-rate forecasting toolkit.

Quarterly exchange-rate returns are projected on macro fundamentals, either
aggregated to quarters (the classical model zoo) or entering through their
individual intra-quarter months (the MF- variants). The package covers the
full workflow: CSV ingestion into a reproducible snapshot, stationarity
screening, recursive and rolling out-of-sample backtests, and
predictive-accuracy testing against the random-walk benchmark.
"""

from .backtest import BacktestResult, Scheme, SchemeKind, backtest, msfe
from .errors import (
    ChecksumFailure,
    DegenerateVariance,
    DimensionMismatch,
    EmptyInput,
    EmptyOverlap,
    FrequencyMismatch,
    FxError,
    IllegalRestriction,
    InsufficientHistory,
    InsufficientSpan,
    InvalidShape,
    InvalidWindow,
    MissingRole,
    MissingValue,
    NoCompleteQuarter,
    NonMonotonicDates,
    NonPositiveValue,
    NotDivisible,
    NotInvertible,
    NumericalFailure,
    OrderNotFound,
    ParseError,
    RankDeficient,
    SeriesTooShort,
    TooShort,
    VersionMismatch,
    WrongFrequency,
)
from .filters import (
    HP_LAMBDA_MONTHLY,
    HP_LAMBDA_QUARTERLY,
    TrendCycle,
    hp_filter,
    inflation,
    output_gap,
)
from .freqalign import AlignedMatrix, stack, stack_columns, unstack, unstack_columns
from .ingest import (
    Manifest,
    Role,
    SeriesSource,
    Transform,
    assemble_dataset,
    load_manifest,
    load_snapshot,
    read_csv,
    snapshot,
)
from .models import (
    ALL_KINDS,
    ESTIMABLE_KINDS,
    ColumnDef,
    Dataset,
    ModelKind,
    ModelSpec,
    Timing,
    build_dataset,
    build_design,
    difference_i1,
    forecast_one_step,
    model_columns,
    regressor_month_offsets,
)
from .regression import (
    DesignMatrix,
    RegressionFit,
    beta_weights,
    exp_almon_weights,
    ols_fit,
    predict,
)
from .report import (
    BacktestRow,
    PlotSelection,
    StationarityRow,
    evaluate_models,
    format_backtest,
    format_plot_rows,
    format_stationarity,
    plot_rows,
    significance_stars,
    stationarity_rows,
)
from .stattests import (
    Deterministic,
    KpssDeterministic,
    Loss,
    TestResult,
    adf_test,
    clark_west,
    diebold_mariano,
    integration_order,
    kpss_test,
    long_run_variance,
    schwert_max_lag,
)
from .timeseries import (
    AggregationMethod,
    Frequency,
    Period,
    TimeSeries,
    aggregate_to_quarterly,
    align_span,
    diff,
    differential,
    log_transform,
)

__version__ = "0.1.0"
