"""File-based data ingestion and snapshot persistence.

Sources are CSV exports (one date column, one value column) declared in a
JSON manifest that assigns each file a role: the exchange rate, domestic and
foreign interest rates, CPIs, money aggregates, and GDPs. Assembly computes
everything the models consume: log returns, domestic-minus-foreign
differentials, inflation, HP output gaps.

A snapshot freezes an assembled dataset into one self-describing JSON file
(base64 little-endian float64 payloads plus a sha256 checksum) so a backtest
can be reproduced without the original CSVs.
"""

from __future__ import annotations

import base64
import csv
import enum
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ChecksumFailure,
    EmptyOverlap,
    MissingRole,
    MissingValue,
    NonMonotonicDates,
    NonPositiveValue,
    ParseError,
    VersionMismatch,
    WrongFrequency,
)
from .filters import inflation, output_gap
from .models import Dataset, build_dataset
from .timeseries import (
    AggregationMethod,
    Frequency,
    Period,
    TimeSeries,
    aggregate_to_quarterly,
    diff,
    differential,
    log_transform,
)

SNAPSHOT_FORMAT = "fxmidas-snapshot"
SNAPSHOT_VERSION = 1


class Role(enum.Enum):
    EXCHANGE_RATE = "exchange_rate"
    INTEREST_DOMESTIC = "interest_domestic"
    INTEREST_FOREIGN = "interest_foreign"
    CPI_DOMESTIC = "cpi_domestic"
    CPI_FOREIGN = "cpi_foreign"
    MONEY_DOMESTIC = "money_domestic"
    MONEY_FOREIGN = "money_foreign"
    GDP_DOMESTIC = "gdp_domestic"
    GDP_FOREIGN = "gdp_foreign"


ROLE_FREQUENCY: dict[Role, Frequency] = {
    role: (Frequency.QUARTERLY if role.value.startswith("gdp")
           else Frequency.MONTHLY)
    for role in Role
}


class Transform(enum.Enum):
    NONE = "none"
    LOG = "log"
    PERCENT_TO_DECIMAL = "percent_to_decimal"


@dataclass(frozen=True)
class SeriesSource:
    """One CSV file bound to a role."""

    path: Path
    role: Role
    frequency: Frequency
    transform: Transform = Transform.NONE
    column_date: str = "DATE"
    column_value: str = "VALUE"

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        if self.frequency is not ROLE_FREQUENCY[self.role]:
            raise WrongFrequency(
                f"role {self.role.value} expects "
                f"{ROLE_FREQUENCY[self.role].label} data")


def _parse_period(text: str, freq: Frequency, line: int) -> Period:
    """Date cell to Period. Quarterly sources must date rows at a quarter
    start (FRED convention) or use explicit YYYY-Qn strings."""
    try:
        p = Period.parse(text)
    except ValueError:
        raise ParseError(line, f"unparseable date {text!r} at line {line}") from None
    if p.freq is freq:
        return p
    if freq is Frequency.QUARTERLY and p.freq is Frequency.MONTHLY:
        if (p.index - 1) % 3 != 0:
            raise ParseError(
                line, f"quarterly row dated mid-quarter ({text!r}) at line {line}")
        return p.to_quarter()
    raise ParseError(line, f"date {text!r} at line {line} does not match "
                           f"declared {freq.label} frequency")


def read_csv(source: SeriesSource) -> TimeSeries:
    """Read one source file into a TimeSeries with its transform applied.

    The header row is required. Dates must advance by exactly one period per
    row; a gap is reported as a missing observation, a reversal as
    out-of-order dates. Sentinel markers "." and the empty string are
    rejected with their line number.
    """
    with open(source.path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, f"{source.path}: empty file") from None
        header = [h.strip() for h in header]
        try:
            date_idx = header.index(source.column_date)
            value_idx = header.index(source.column_value)
        except ValueError:
            raise ParseError(
                1, f"{source.path}: header {header} lacks "
                   f"{source.column_date!r}/{source.column_value!r}") from None

        periods: list[Period] = []
        values: list[float] = []
        for line, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) <= max(date_idx, value_idx):
                raise ParseError(line, f"{source.path}: short row at line {line}")
            p = _parse_period(row[date_idx].strip(), source.frequency, line)
            if periods:
                step = p - periods[-1]
                if step <= 0:
                    raise NonMonotonicDates(
                        line, f"{source.path}: {p} follows {periods[-1]} "
                              f"at line {line}")
                if step > 1:
                    raise MissingValue(
                        line, f"{source.path}: gap before {p} at line {line}")
            cell = row[value_idx].strip()
            if cell in ("", "."):
                raise MissingValue(
                    line, f"{source.path}: missing value at line {line}")
            try:
                values.append(float(cell))
            except ValueError:
                raise ParseError(
                    line, f"{source.path}: non-numeric value {cell!r} "
                          f"at line {line}") from None
            periods.append(p)

    if not values:
        raise ParseError(None, f"{source.path}: no data rows")
    series = TimeSeries(periods[0], np.array(values))
    if source.transform is Transform.LOG:
        try:
            series = log_transform(series)
        except NonPositiveValue as exc:
            raise ParseError(
                exc.index + 2,
                f"{source.path}: log of non-positive value at line "
                f"{exc.index + 2}") from None
    elif source.transform is Transform.PERCENT_TO_DECIMAL:
        series = TimeSeries(series.start, series.values / 100.0)
    return series


@dataclass(frozen=True)
class Manifest:
    sources: tuple[SeriesSource, ...]
    span: tuple[Period, Period]
    aggregation: AggregationMethod = AggregationMethod.LAST_OF_QUARTER
    hp_lambda: float = 1600.0

    def source_for(self, role: Role) -> SeriesSource:
        for s in self.sources:
            if s.role is role:
                return s
        raise MissingRole(role.value)


def load_manifest(path) -> Manifest:
    """Parse a manifest JSON file; relative source paths resolve against the
    manifest's own directory."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(None, f"{path}: not valid JSON ({exc})") from None
    try:
        span = (Period.parse(doc["span"]["start"]),
                Period.parse(doc["span"]["end"]))
        entries = doc["series"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(None, f"{path}: bad manifest structure ({exc})") from None
    aggregation = AggregationMethod(doc.get("aggregation", "last_of_quarter"))
    hp_lambda = float(doc.get("hp_lambda", 1600.0))

    sources = []
    seen: set[Role] = set()
    for k, entry in enumerate(entries):
        try:
            role = Role(entry["role"])
            frequency = Frequency[entry.get(
                "frequency", ROLE_FREQUENCY[Role(entry["role"])].label).upper()]
            transform = Transform(entry.get("transform", "none"))
            src = SeriesSource(
                path=(path.parent / entry["path"]),
                role=role,
                frequency=frequency,
                transform=transform,
                column_date=entry.get("date_column", "DATE"),
                column_value=entry.get("value_column", "VALUE"),
            )
        except (KeyError, ValueError, WrongFrequency) as exc:
            raise ParseError(k, f"{path}: series entry {k}: {exc}") from None
        if role in seen:
            raise ParseError(k, f"{path}: duplicate role {role.value}")
        seen.add(role)
        sources.append(src)
    return Manifest(tuple(sources), span, aggregation, hp_lambda)


def _clip(series: TimeSeries, first: Period, last: Period,
          what: str) -> TimeSeries:
    lo = series.start if series.start > first else first
    hi = series.end if series.end < last else last
    if hi < lo:
        raise EmptyOverlap(f"{what} does not intersect the requested span")
    return series.slice(lo, hi)


def assemble_dataset(manifest: Manifest) -> Dataset:
    """Read every source, derive the model inputs, and align them.

    Differentials are domestic minus foreign. The exchange-rate return is
    the first difference of the (transformed, conventionally log) quarterly
    aggregate. Output gaps are HP cycles of each country's log GDP filtered
    over the clipped sample, with the levels kept on the dataset for
    per-origin re-filtering later.
    """
    by_role: dict[Role, TimeSeries] = {}
    for role in Role:
        src = manifest.source_for(role)
        by_role[role] = read_csv(src)

    q_first, q_last = manifest.span
    if q_first.freq is not Frequency.QUARTERLY:
        q_first, q_last = q_first.to_quarter(), q_last.to_quarter()
    m_first, m_last = q_first.first_month(), q_last.last_month()

    def monthly(role: Role) -> TimeSeries:
        return _clip(by_role[role], m_first, m_last, role.value)

    def quarterly(role: Role) -> TimeSeries:
        return _clip(by_role[role], q_first, q_last, role.value)

    s_m = monthly(Role.EXCHANGE_RATE)
    s_q = aggregate_to_quarterly(s_m, manifest.aggregation)
    ds = diff(s_q, 1)

    i_diff_m = differential(monthly(Role.INTEREST_DOMESTIC),
                            monthly(Role.INTEREST_FOREIGN))
    p_dom = monthly(Role.CPI_DOMESTIC)
    p_for = monthly(Role.CPI_FOREIGN)
    p_diff_m = differential(p_dom, p_for)
    pi_diff_m = differential(inflation(p_dom), inflation(p_for))
    m_diff_m = differential(monthly(Role.MONEY_DOMESTIC),
                            monthly(Role.MONEY_FOREIGN))

    gdp_dom = quarterly(Role.GDP_DOMESTIC)
    gdp_for = quarterly(Role.GDP_FOREIGN)
    y_diff_q = differential(gdp_dom, gdp_for)
    ygap_diff_q = differential(output_gap(gdp_dom, manifest.hp_lambda),
                               output_gap(gdp_for, manifest.hp_lambda))

    meta = {
        "span": [str(q_first), str(q_last)],
        "aggregation": manifest.aggregation.value,
        "hp_lambda": manifest.hp_lambda,
        "sources": {src.role.value: src.path.name for src in manifest.sources},
    }
    return build_dataset(
        ds_quarterly=ds,
        i_diff_monthly=i_diff_m,
        p_diff_monthly=p_diff_m,
        m_diff_monthly=m_diff_m,
        pi_diff_monthly=pi_diff_m,
        y_diff_quarterly=y_diff_q,
        ygap_diff_quarterly=ygap_diff_q,
        aggregation=manifest.aggregation,
        hp_lambda=manifest.hp_lambda,
        log_s_quarterly=s_q,
        log_gdp_domestic=gdp_dom,
        log_gdp_foreign=gdp_for,
        meta=meta,
    )


# --- snapshot persistence --------------------------------------------------

_SERIES_FIELDS = (
    "ds_quarterly", "i_diff_monthly", "p_diff_monthly", "m_diff_monthly",
    "pi_diff_monthly", "y_diff_quarterly", "ygap_diff_quarterly",
    "i_diff_quarterly", "p_diff_quarterly", "m_diff_quarterly",
    "pi_diff_quarterly", "log_s_quarterly", "log_gdp_domestic",
    "log_gdp_foreign",
)


def _encode_series(series: TimeSeries) -> dict:
    raw = series.values.astype("<f8").tobytes()
    return {"start": str(series.start),
            "frequency": series.freq.label,
            "values": base64.b64encode(raw).decode("ascii")}


def _decode_series(doc: dict) -> TimeSeries:
    values = np.frombuffer(base64.b64decode(doc["values"]), dtype="<f8")
    return TimeSeries(Period.parse(doc["start"]), values)


def _payload(dataset: Dataset) -> dict:
    series = {}
    for name in _SERIES_FIELDS:
        s = getattr(dataset, name)
        if s is not None:
            series[name] = _encode_series(s)
    return {
        "aggregation": dataset.aggregation.value,
        "hp_lambda": dataset.hp_lambda,
        "meta": dict(dataset.meta),
        "series": series,
    }


def _checksum(payload: dict) -> str:
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def snapshot(dataset: Dataset, path) -> Path:
    """Write the dataset to one self-describing JSON file."""
    path = Path(path)
    payload = _payload(dataset)
    doc = {"format": SNAPSHOT_FORMAT, "version": SNAPSHOT_VERSION,
           "checksum": _checksum(payload), **payload}
    path.write_text(json.dumps(doc, sort_keys=True, indent=1),
                    encoding="utf-8")
    return path


def load_snapshot(path) -> Dataset:
    """Read a snapshot back into an identical Dataset.

    Raises VersionMismatch for foreign or future formats and
    ChecksumFailure for unreadable or tampered payloads.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ChecksumFailure(f"{path}: unreadable snapshot ({exc})") from None
    if not isinstance(doc, dict) or doc.get("format") != SNAPSHOT_FORMAT:
        raise VersionMismatch(f"{path}: not a {SNAPSHOT_FORMAT} file")
    if doc.get("version") != SNAPSHOT_VERSION:
        raise VersionMismatch(
            f"{path}: snapshot version {doc.get('version')}, "
            f"supported {SNAPSHOT_VERSION}")
    try:
        payload = {"aggregation": doc["aggregation"],
                   "hp_lambda": doc["hp_lambda"],
                   "meta": doc["meta"],
                   "series": doc["series"]}
        recorded = doc["checksum"]
    except KeyError as exc:
        raise ChecksumFailure(f"{path}: incomplete snapshot ({exc})") from None
    if _checksum(payload) != recorded:
        raise ChecksumFailure(f"{path}: checksum mismatch")

    series = {}
    try:
        for name, entry in payload["series"].items():
            if name not in _SERIES_FIELDS:
                raise ChecksumFailure(f"{path}: unknown series {name!r}")
            series[name] = _decode_series(entry)
    except (KeyError, ValueError) as exc:
        raise ChecksumFailure(f"{path}: corrupt series payload ({exc})") from None
    return Dataset(
        **series,
        hp_lambda=float(payload["hp_lambda"]),
        aggregation=AggregationMethod(payload["aggregation"]),
        meta=dict(payload["meta"]),
    )
