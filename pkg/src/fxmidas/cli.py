"""Command-line frontend.

Subcommands: ``ingest`` (CSV manifest to snapshot), ``stationarity``
(ADF/KPSS screen), ``backtest`` (out-of-sample model comparison), and
``plotdata`` (tidy CSV for external plotting). Passing ``--figures DIR`` to
``backtest`` or ``plotdata`` additionally renders PNG figures next to the
delimited output.

Exit codes: 0 success, 1 input or configuration error, 2 numerical failure
(rank-deficient design or degenerate test variance, reported with the model
concerned).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backtest import Scheme, SchemeKind
from .errors import DegenerateVariance, FxError, NumericalFailure, RankDeficient
from .ingest import assemble_dataset, load_manifest, load_snapshot, snapshot
from .models import ALL_KINDS, ModelKind, ModelSpec
from .report import (
    PlotSelection,
    evaluate_models,
    format_backtest,
    format_plot_rows,
    format_stationarity,
    plot_rows,
    stationarity_rows,
)
from .timeseries import Period

DEFAULT_TRAIN_END = "1994Q4"
DEFAULT_TEST_END = "2019Q1"


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_models(arg: str) -> list[ModelSpec]:
    names = [part for part in (p.strip() for p in arg.split(",")) if part]
    if not names:
        raise FxError("no models requested")
    specs = []
    for name in names:
        try:
            specs.append(ModelSpec(ModelKind.from_acronym(name)))
        except ValueError as exc:
            raise FxError(str(exc)) from None
    return specs


def _parse_quarter(text: str, flag: str) -> Period:
    try:
        p = Period.parse(text)
    except ValueError as exc:
        raise FxError(f"{flag}: {exc}") from None
    return p.to_quarter()


def cmd_ingest(args) -> int:
    manifest = load_manifest(args.manifest)
    data = assemble_dataset(manifest)
    out = snapshot(data, args.out)
    print(f"snapshot written to {out}")
    print(f"quarterly span {data.start}..{data.end} "
          f"({data.n_quarters} quarters, {len(data.i_diff_monthly)} months)")
    return 0


def cmd_stationarity(args) -> int:
    data = load_snapshot(args.snapshot)
    rows = stationarity_rows(data)
    _write_output(format_stationarity(rows, args.format), args.out)
    return 0


def cmd_backtest(args) -> int:
    data = load_snapshot(args.snapshot)
    specs = _parse_models(args.models)
    if args.scheme == "rolling":
        scheme = Scheme.rolling(args.window)
    else:
        if args.window is not None:
            raise FxError("--window applies to the rolling scheme only")
        scheme = Scheme.recursive()
    train_end = _parse_quarter(args.train_end, "--train-end")
    test_end = _parse_quarter(args.test_end, "--test-end")
    rows = evaluate_models(data, specs, scheme, train_end, test_end)
    _write_output(format_backtest(rows, args.format), args.out)
    if args.figures:
        from .figures import render_msfe
        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        target = render_msfe(rows, fig_dir / f"msfe_{args.scheme}.png",
                             title=f"Out-of-sample MSFE ({scheme.describe()})")
        print(f"figure written to {target}", file=sys.stderr)
    return 0


def cmd_plotdata(args) -> int:
    data = load_snapshot(args.snapshot)
    try:
        selections = [PlotSelection(part)
                      for part in (p.strip() for p in args.what.split(","))
                      if part]
    except ValueError as exc:
        raise FxError(str(exc)) from None
    rows = plot_rows(data, selections)
    _write_output(format_plot_rows(rows), args.out)
    if args.figures:
        from .figures import render_exchange_rate, render_predictors
        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        written = []
        wants_level = PlotSelection.LEVELS in selections
        wants_returns = PlotSelection.RETURNS in selections
        if wants_level or wants_returns:
            written.append(render_exchange_rate(
                data, fig_dir / "exchange_rate.png",
                include_levels=wants_level, include_returns=wants_returns))
        if PlotSelection.PREDICTORS in selections:
            written.append(render_predictors(data, fig_dir / "predictors.png"))
        for target in written:
            print(f"figure written to {target}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fxmidas",
        description="Mixed-frequency exchange-rate model backtesting.")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for simulation-backed subcommands "
                             "(the shipped subcommands are deterministic)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a snapshot from a CSV manifest")
    p.add_argument("--manifest", required=True, help="manifest JSON path")
    p.add_argument("--out", required=True, help="snapshot output path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stationarity", help="ADF/KPSS screen of all variables")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_stationarity)

    p = sub.add_parser("backtest", help="out-of-sample model comparison")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--models",
                   default=",".join(kind.value for kind in ALL_KINDS),
                   help="comma-separated acronyms (default: all thirteen)")
    p.add_argument("--scheme", choices=("recursive", "rolling"),
                   default="recursive")
    p.add_argument("--window", type=int, default=None,
                   help="rolling window in quarters "
                        "(default: initial training length)")
    p.add_argument("--train-end", default=DEFAULT_TRAIN_END,
                   help="last training quarter (YYYYQn)")
    p.add_argument("--test-end", default=DEFAULT_TEST_END,
                   help="last forecast quarter (YYYYQn)")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render an MSFE chart into DIR")
    p.set_defaults(func=cmd_backtest)

    p = sub.add_parser("plotdata", help="tidy CSV of series for plotting")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--what", default="levels,returns,predictors",
                   help="comma-separated: levels, returns, predictors")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render the selected views as PNGs into DIR")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RankDeficient, DegenerateVariance) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
