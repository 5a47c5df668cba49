"""
LCPR dataset schema checks and temporal feature encoding.

The bundled schema mirrors the published feature table. Its bounds are the
observed ranges of the released data, inclusive; values outside them are
violations. Physically implausible readings inside those ranges are a separate,
user-supplied layer (plausibility caps), reported but not counted as violations.
"""
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from loguru import logger

from sliced_wasserstein_filter.components.dataset import Dataset
from sliced_wasserstein_filter.components.errors import ConfigError, DataError, SchemaError

MAX_REPORTED_ROWS = 50
COLUMN_KINDS = ("categorical", "timestamp", "date_range", "integer_range", "real_range", "flag")
TEMPORAL_PERIODS = {"month": 12, "day_of_week": 7, "hour": 24}
NUMERIC_KINDS = ("integer_range", "real_range", "flag")


def bundled_schema_path() -> str:
    current_dir = os.path.dirname(__file__)
    return os.path.join(os.path.dirname(current_dir), "assets", "lcpr_schema_v1.json")


@dataclass(frozen=True)
class ColumnRule:
    name: str
    kind: str
    values: tuple[str, ...] = ()
    min: Any = None
    max: Any = None
    unit: str = ""


@dataclass(frozen=True)
class LcprSchema:
    """Per-column kind and inclusive bounds of the LCPR feature table"""

    name: str
    version: int
    columns: tuple[ColumnRule, ...]
    timestamp_format: str = "%Y-%m-%d %H:%M:%S"
    date_format: str = "%Y-%m-%d"

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def rule(self, name: str) -> ColumnRule:
        for column in self.columns:
            if column.name == name:
                return column
        raise KeyError(name)


def load_lcpr_schema(path=None) -> LcprSchema:
    """Load a schema file (defaults to the bundled version 1 schema)"""
    path = Path(path or bundled_schema_path())
    raw = json.loads(path.read_text(encoding="utf-8"))
    columns = []
    for entry in raw["columns"]:
        if entry["kind"] not in COLUMN_KINDS:
            raise ConfigError(f"Unknown column kind {entry['kind']!r} in {path}", column=entry["name"])
        columns.append(
            ColumnRule(
                name=entry["name"],
                kind=entry["kind"],
                values=tuple(entry.get("values", ())),
                min=entry.get("min"),
                max=entry.get("max"),
                unit=entry.get("unit", ""),
            )
        )
    return LcprSchema(
        name=raw.get("name", "lcpr"),
        version=int(raw.get("version", 1)),
        columns=tuple(columns),
        timestamp_format=raw.get("timestamp_format", "%Y-%m-%d %H:%M:%S"),
        date_format=raw.get("date_format", "%Y-%m-%d"),
    )


@dataclass
class ValidationReport:
    """
    Violation counts and (capped) offending rows per column, plausibility
    findings and cross-field consistency warnings. Rows are 0-based data rows.
    """

    n_rows: int
    violation_counts: dict[str, int] = field(default_factory=dict)
    offending_rows: dict[str, list[int]] = field(default_factory=dict)
    plausibility: dict[str, dict[str, Any]] = field(default_factory=dict)
    consistency_warnings: list[str] = field(default_factory=list)

    @property
    def total_violations(self) -> int:
        return sum(self.violation_counts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_rows": self.n_rows,
            "total_violations": self.total_violations,
            "violation_counts": self.violation_counts,
            "offending_rows": self.offending_rows,
            "plausibility": self.plausibility,
            "consistency_warnings": self.consistency_warnings,
        }


def read_lcpr_frame(path, schema: LcprSchema) -> pd.DataFrame:
    """Read an LCPR CSV as strings and check that every schema column is present"""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"Input file not found: {path}", path=str(path))
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f"Cannot parse {path}: {e}", path=str(path)) from e
    frame.columns = [str(c).strip() for c in frame.columns]
    missing = [name for name in schema.column_names if name not in frame.columns]
    if missing:
        raise SchemaError(f"Missing required column(s): {', '.join(missing)}", missing=missing)
    return frame.apply(lambda col: col.str.strip())


def _numeric(series: pd.Series) -> pd.Series:
    return pd.to_numeric(series, errors="coerce")


def _violation_mask(series: pd.Series, rule: ColumnRule, schema: LcprSchema) -> np.ndarray:
    if rule.kind == "categorical":
        return ~series.isin(rule.values).to_numpy()
    if rule.kind == "timestamp":
        return pd.to_datetime(series, format=schema.timestamp_format, errors="coerce").isna().to_numpy()
    if rule.kind == "date_range":
        dates = pd.to_datetime(series, format=schema.date_format, errors="coerce")
        low, high = pd.Timestamp(rule.min), pd.Timestamp(rule.max)
        return (dates.isna() | (dates < low) | (dates > high)).to_numpy()

    values = _numeric(series).to_numpy(dtype=float)
    with np.errstate(invalid="ignore"):
        if rule.kind == "flag":
            return ~np.isin(values, (0.0, 1.0))
        bad = ~np.isfinite(values) | (values < rule.min) | (values > rule.max)
        if rule.kind == "integer_range":
            bad |= values != np.round(values)
    return bad


def _consistency_warnings(frame: pd.DataFrame, schema: LcprSchema) -> list[str]:
    warnings = []

    def note(mask: np.ndarray, message: str) -> None:
        rows = np.flatnonzero(mask)
        if rows.size:
            warnings.append(f"{rows.size} row(s): {message} (first row {int(rows[0])})")

    flags = {name: _numeric(frame[name]) for name in ("is_weekend", "is_holiday", "weekend_holiday", "challenge_flag")}
    either = ((flags["is_weekend"] == 1) | (flags["is_holiday"] == 1)).astype(float)
    known = flags["is_weekend"].notna() & flags["is_holiday"].notna() & flags["weekend_holiday"].notna()
    note((known & (flags["weekend_holiday"] != either)).to_numpy(), "weekend_holiday differs from is_weekend OR is_holiday")
    note(
        ((flags["challenge_flag"] == 1) & (frame["challenge_type"] == "None")).to_numpy(),
        "challenge_flag is 1 while challenge_type is 'None'",
    )

    stamps = pd.to_datetime(frame["timestamp_local"], format=schema.timestamp_format, errors="coerce")
    dates = pd.to_datetime(frame["date"], format=schema.date_format, errors="coerce")
    has_stamp = stamps.notna()
    note((has_stamp & dates.notna() & (stamps.dt.normalize() != dates)).to_numpy(), "date differs from timestamp_local")
    for name, part in (("month", stamps.dt.month), ("day", stamps.dt.day), ("hour", stamps.dt.hour)):
        value = _numeric(frame[name])
        note((has_stamp & value.notna() & (value != part)).to_numpy(), f"{name} differs from timestamp_local")
    # Sunday = 1 ... Saturday = 7
    expected_dow = (dates.dt.weekday + 1) % 7 + 1
    dow = _numeric(frame["day_of_week"])
    note((dates.notna() & dow.notna() & (dow != expected_dow)).to_numpy(), "day_of_week differs from date")
    return warnings


def validate_lcpr(path, schema: LcprSchema | None = None, plausibility_caps: dict[str, float] | None = None) -> ValidationReport:
    """
    Check every row of an LCPR CSV against the schema.

    Args:
        path: CSV file with the schema's column headers
        schema: defaults to the bundled schema
        plausibility_caps: optional upper caps per numeric column; rows above a cap
            are reported separately even when inside the schema bounds

    Returns:
        ValidationReport
    """
    schema = schema or load_lcpr_schema()
    frame = read_lcpr_frame(path, schema)
    report = ValidationReport(n_rows=len(frame))

    for rule in schema.columns:
        bad_rows = np.flatnonzero(_violation_mask(frame[rule.name], rule, schema))
        if bad_rows.size:
            report.violation_counts[rule.name] = int(bad_rows.size)
            report.offending_rows[rule.name] = [int(r) for r in bad_rows[:MAX_REPORTED_ROWS]]

    for name, cap in (plausibility_caps or {}).items():
        if name not in frame.columns:
            raise ConfigError(f"Plausibility cap on unknown column {name!r}", column=name)
        above = np.flatnonzero((_numeric(frame[name]) > cap).to_numpy())
        report.plausibility[name] = {
            "cap": cap,
            "count": int(above.size),
            "rows": [int(r) for r in above[:MAX_REPORTED_ROWS]],
        }

    report.consistency_warnings = _consistency_warnings(frame, schema)
    logger.info(
        f"Validated {report.n_rows} LCPR rows: {report.total_violations} violation(s), "
        f"{len(report.consistency_warnings)} consistency warning(s)"
    )
    return report


def cyclical_encode(values, period: int) -> np.ndarray:
    """(sin(2 pi v / period), cos(2 pi v / period)) for every value, as an N x 2 array"""
    if period < 1:
        raise ConfigError(f"period must be >= 1, got {period}", period=period)
    angle = 2.0 * np.pi * np.asarray(values, dtype=float).reshape(-1) / period
    return np.column_stack([np.sin(angle), np.cos(angle)])


def encode_lcpr_temporal(frame: pd.DataFrame) -> pd.DataFrame:
    """Copy of `frame` with sin/cos columns for month, day_of_week and hour"""
    encoded = frame.copy()
    for name, period in TEMPORAL_PERIODS.items():
        pairs = cyclical_encode(_numeric(frame[name]).to_numpy(dtype=float), period)
        encoded[f"{name}_sin"] = pairs[:, 0]
        encoded[f"{name}_cos"] = pairs[:, 1]
    return encoded


def lcpr_dataset(path, substation: str | None = None, label_column: str | None = None, schema: LcprSchema | None = None) -> Dataset:
    """
    Numeric Dataset from an LCPR CSV, ready for filtering.

    Categorical and time-stamp columns are removed, month / day_of_week / hour are
    replaced by their cyclical encodings, and rows with unparseable numbers are dropped.
    """
    schema = schema or load_lcpr_schema()
    frame = read_lcpr_frame(path, schema)
    if substation is not None:
        frame = frame[frame["substation"] == substation].reset_index(drop=True)
        if frame.empty:
            raise DataError(f"No rows for substation {substation!r}", substation=substation)

    labels = None
    if label_column is not None:
        if label_column not in frame.columns:
            raise DataError(f"Unknown label column {label_column!r}", label_column=label_column)
        labels = _numeric(frame[label_column])

    numeric_names = [
        rule.name for rule in schema.columns
        if rule.kind in NUMERIC_KINDS and rule.name not in TEMPORAL_PERIODS and rule.name != label_column
    ]
    encoded = encode_lcpr_temporal(frame)
    feature_names = numeric_names + [f"{name}_{part}" for name in TEMPORAL_PERIODS for part in ("sin", "cos")]
    values = encoded[feature_names].apply(_numeric).to_numpy(dtype=float)

    usable = np.isfinite(values).all(axis=1)
    if labels is not None:
        usable &= np.isin(labels.to_numpy(dtype=float), (0.0, 1.0))
    dropped = tuple(int(r) for r in np.flatnonzero(~usable))
    if dropped:
        logger.warning(f"Dropped {len(dropped)} LCPR row(s) with unparseable values")
    if not usable.any():
        raise DataError(f"No usable LCPR rows in {path}", path=str(path))

    return Dataset(
        values=values[usable],
        feature_names=tuple(feature_names),
        truth_labels=None if labels is None else labels.to_numpy(dtype=float)[usable] == 1.0,
        provenance=f"{path}" + (f" [substation {substation}]" if substation else ""),
        dropped_rows=dropped,
    )
