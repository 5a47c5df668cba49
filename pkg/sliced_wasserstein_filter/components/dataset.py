import csv
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger
from scipy.stats import rankdata

from sliced_wasserstein_filter.components.errors import DataError, ShapeError


@dataclass(frozen=True)
class Dataset:
    """
    N x d sample matrix with optional names, ground-truth outlier labels and group ids.

    `dropped_rows` lists source rows removed at ingestion (0-based data rows).
    """

    values: np.ndarray
    feature_names: tuple[str, ...] = ()
    truth_labels: np.ndarray | None = None
    provenance: str = ""
    groups: np.ndarray | None = None
    dropped_rows: tuple[int, ...] = field(default=())

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ShapeError("A dataset needs N >= 1 rows and d >= 1 columns", shape=values.shape)
        object.__setattr__(self, "values", values)

        names = tuple(self.feature_names) or tuple(f"x{k}" for k in range(values.shape[1]))
        if len(names) != values.shape[1]:
            raise ShapeError(
                f"Got {len(names)} feature names for {values.shape[1]} columns",
                names=len(names),
                columns=values.shape[1],
            )
        object.__setattr__(self, "feature_names", names)

        if self.truth_labels is not None:
            labels = np.asarray(self.truth_labels, dtype=bool).reshape(-1)
            if labels.size != values.shape[0]:
                raise ShapeError(
                    f"truth_labels has length {labels.size}, expected {values.shape[0]}",
                    labels=labels.size,
                    rows=values.shape[0],
                )
            object.__setattr__(self, "truth_labels", labels)

        if self.groups is not None:
            groups = np.asarray(self.groups, dtype=int).reshape(-1)
            if groups.size != values.shape[0]:
                raise ShapeError("groups must have one entry per row", groups=groups.size, rows=values.shape[0])
            object.__setattr__(self, "groups", groups)

    @classmethod
    def from_array(cls, values, truth_labels=None, provenance: str = "array") -> "Dataset":
        return cls(values=np.asarray(values, dtype=float), truth_labels=truth_labels, provenance=provenance)

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.values.shape[1])

    @property
    def has_labels(self) -> bool:
        return self.truth_labels is not None

    def subset(self, rows) -> "Dataset":
        """Dataset restricted to the given row indices (order kept)"""
        rows = np.asarray(rows, dtype=int)
        return replace(
            self,
            values=self.values[rows],
            truth_labels=None if self.truth_labels is None else self.truth_labels[rows],
            groups=None if self.groups is None else self.groups[rows],
        )


def as_dataset(data) -> Dataset:
    return data if isinstance(data, Dataset) else Dataset.from_array(data)


def check_finite(data: Dataset) -> None:
    """Raise a DataError naming the first row holding NaN or Inf"""
    bad_rows = np.flatnonzero(~np.all(np.isfinite(data.values), axis=1))
    if bad_rows.size:
        row = int(bad_rows[0])
        raise DataError(
            f"Row {row} contains NaN or Inf ({bad_rows.size} bad row(s) in total)",
            row=row,
            bad_rows=int(bad_rows.size),
        )


def _check_rectangular(path: Path, has_header: bool) -> None:
    """Every non-blank line must hold as many fields as the first one"""
    # pandas pads short rows with "" when empty strings are kept, so count fields here
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            rows = (row for row in csv.reader(handle) if row)
            first = next(rows, None)
            if first is None:
                return
            for number, row in enumerate(rows, start=0 if has_header else 1):
                if len(row) != len(first):
                    raise DataError(
                        f"File is not rectangular: data row {number} has {len(row)} field(s), expected {len(first)}",
                        path=str(path),
                        row=number,
                    )
    except (csv.Error, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse {path}: {e}", path=str(path)) from e


def read_csv(path, has_header: bool = True, label_column: str | None = None) -> Dataset:
    """
    Read a numeric CSV file into a Dataset.

    Rows with a missing or unparseable cell are dropped and reported, never imputed.

    Args:
        path: CSV file (UTF-8, comma separated, '.' decimals)
        has_header: whether the first line holds column names
        label_column: column holding 0/1 outlier labels; without a header this is
            a zero-based column position

    Returns:
        Dataset with truth_labels when label_column is given
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"Input file not found: {path}", path=str(path))
    _check_rectangular(path, has_header)
    try:
        frame = pd.read_csv(
            path,
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.ParserError as e:
        raise DataError(f"File is not rectangular: {e}", path=str(path)) from e
    except pd.errors.EmptyDataError as e:
        raise DataError(f"File is empty: {path}", path=str(path)) from e
    if not has_header:
        frame.columns = [str(c) for c in frame.columns]

    labels = None
    if label_column is not None:
        if label_column not in frame.columns:
            raise DataError(
                f"Unknown label column {label_column!r}; available: {list(frame.columns)}",
                label_column=label_column,
            )
        labels = pd.to_numeric(frame.pop(label_column).str.strip(), errors="coerce")
    if frame.shape[1] == 0:
        raise DataError("No feature columns left after removing the label column", path=str(path))

    numeric = frame.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    usable = np.isfinite(numeric.to_numpy(dtype=float)).all(axis=1)
    if labels is not None:
        usable &= labels.notna().to_numpy()
    dropped = tuple(int(r) for r in np.flatnonzero(~usable))
    if dropped:
        logger.warning(f"Dropped {len(dropped)} row(s) with missing or unparseable cells from {path}")
    if not usable.any():
        raise DataError(f"No usable rows in {path}", path=str(path), dropped=len(dropped))

    truth = None
    if labels is not None:
        kept = labels.to_numpy(dtype=float)[usable]
        invalid = ~np.isin(kept, (0.0, 1.0))
        if invalid.any():
            raise DataError(
                f"Label column {label_column!r} must hold 0/1 values, found {kept[invalid][0]!r}",
                label_column=label_column,
            )
        truth = kept == 1.0

    feature_names = tuple(str(c) for c in numeric.columns) if has_header else ()
    return Dataset(
        values=numeric.to_numpy(dtype=float)[usable],
        feature_names=feature_names,
        truth_labels=truth,
        provenance=str(path),
        dropped_rows=dropped,
    )


def to_frame(data: Dataset, label_column: str = "label") -> pd.DataFrame:
    frame = pd.DataFrame(data.values, columns=list(data.feature_names))
    if data.truth_labels is not None:
        frame[label_column] = data.truth_labels.astype(int)
    return frame


def write_csv(data: Dataset, path, label_column: str = "label") -> None:
    """Write a Dataset as CSV with a header (and a 0/1 label column when labelled)"""
    to_frame(data, label_column).to_csv(path, index=False)


@dataclass(frozen=True)
class ColumnScaling:
    """Per-column mean and population standard deviation used by standardize"""

    means: np.ndarray
    stds: np.ndarray

    @property
    def constant_columns(self) -> tuple[int, ...]:
        return tuple(int(k) for k in np.flatnonzero(self.stds == 0))


def standardize(data: Dataset) -> tuple[Dataset, ColumnScaling]:
    """
    Zero-mean, unit-variance columns (population std).

    Constant columns become all zeros and keep std 0 in the returned scaling.
    """
    if data.n_samples < 2:
        raise DataError(f"standardize needs at least 2 rows, got {data.n_samples}", rows=data.n_samples)
    means = data.values.mean(axis=0)
    stds = data.values.std(axis=0, ddof=0)
    centered = data.values - means
    safe = np.where(stds > 0, stds, 1.0)
    scaling = ColumnScaling(means=means, stds=stds)
    for k in scaling.constant_columns:
        logger.warning(f"Column {data.feature_names[k]!r} is constant; standardized to 0")
    return replace(data, values=np.where(stds > 0, centered / safe, 0.0)), scaling


def load_dataset(path, has_header: bool = True, label_column: str | None = None, scale: bool = False) -> Dataset:
    """read_csv, then standardize when `scale` is set"""
    data = read_csv(path, has_header=has_header, label_column=label_column)
    return standardize(data)[0] if scale else data


def spearman(x, y) -> float:
    """
    Spearman rank correlation: Pearson correlation of the rank vectors, ties
    receiving their average rank.
    """
    xs = np.asarray(x, dtype=float).reshape(-1)
    ys = np.asarray(y, dtype=float).reshape(-1)
    if xs.size != ys.size:
        raise ShapeError(f"spearman needs equal lengths, got {xs.size} and {ys.size}")
    if xs.size < 2:
        raise DataError("spearman needs at least 2 observations", size=int(xs.size))
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise DataError("Spearman coefficient is undefined for a constant input")
    rx = rankdata(xs, method="average")
    ry = rankdata(ys, method="average")
    rho = np.corrcoef(rx, ry)[0, 1]
    return float(np.clip(rho, -1.0, 1.0))


def spearman_ranking(data: Dataset, target: str) -> list[tuple[str, float]]:
    """
    Spearman coefficient of every feature against `target`, ranked by
    decreasing absolute value. Constant features are skipped.
    """
    if target not in data.feature_names:
        raise DataError(f"Unknown target column {target!r}", target=target)
    y = data.values[:, data.feature_names.index(target)]
    if np.ptp(y) == 0:
        raise DataError(f"Target column {target!r} is constant", target=target)
    ranking = []
    for k, name in enumerate(data.feature_names):
        if name == target:
            continue
        try:
            ranking.append((name, spearman(data.values[:, k], y)))
        except DataError:
            logger.warning(f"Skipping constant feature {name!r} in Spearman ranking")
    ranking.sort(key=lambda item: (-abs(item[1]), item[0]))
    return ranking
