"""
Confusion counts, accuracy / precision and the grid-search protocol:
evaluate every grid point, keep the run with the best accuracy, report its precision.

The positive class is "outlier". Precision with no positive prediction is
undefined (None), never 0 or 1.
"""
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from sliced_wasserstein_filter.components.baseline import knn_score, lof_score
from sliced_wasserstein_filter.components.dataset import Dataset, as_dataset
from sliced_wasserstein_filter.components.errors import ConfigError, DataError, ShapeError
from sliced_wasserstein_filter.components.outlier_filter import chunked_swad, fead, swad
from sliced_wasserstein_filter.config import FilterConfig, is_int, is_real

FILTER_MODELS = {"swad": swad, "fead": fead, "swad-chunked": chunked_swad}
SCORE_MODELS = {"lof": lof_score, "knn": knn_score}
MODELS = tuple(FILTER_MODELS) + tuple(SCORE_MODELS)
FILTER_AXES = ("t", "L", "epsilon", "eta", "p", "n", "seed", "chunk_size", "threshold_mode")
SCORE_AXES = ("k", "threshold")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class EvalResult:
    """Counts and metrics of one grid point; precision None means undefined"""

    counts: ConfusionCounts
    accuracy: float
    precision: float | None
    params: dict[str, Any]
    model: str = ""

    def as_row(self) -> dict[str, Any]:
        return {
            "model": self.model,
            **self.params,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "tn": self.counts.tn,
            "fn": self.counts.fn,
            "accuracy": self.accuracy,
            "precision": self.precision,
        }


@dataclass(frozen=True)
class GridSpec:
    """Named hyperparameter axes, each a non-empty list, for one model"""

    model: str
    axes: dict[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"Unknown model {self.model!r}; expected one of {MODELS}", model=self.model)
        allowed = FILTER_AXES if self.model in FILTER_MODELS else SCORE_AXES
        axes = {}
        for name, values in self.axes.items():
            if name not in allowed:
                raise ConfigError(f"Axis {name!r} does not apply to model {self.model!r}", axis=name)
            values = tuple(values) if isinstance(values, (list, tuple)) else (values,)
            if not values:
                raise ConfigError(f"Axis {name!r} is empty", axis=name)
            axes[name] = values
        if self.model in SCORE_MODELS and "k" not in axes:
            raise ConfigError(f"Model {self.model!r} needs a 'k' axis")
        if any(not is_int(k) or k < 1 for k in axes.get("k", ())):
            raise ConfigError(f"Axis 'k' must hold positive integers, got {list(axes['k'])}", axis="k")
        if any(not is_real(v) for v in axes.get("threshold", ())):
            raise ConfigError(f"Axis 'threshold' must hold numbers, got {list(axes['threshold'])}", axis="threshold")
        if self.model == "swad-chunked" and "chunk_size" not in axes:
            raise ConfigError("Model 'swad-chunked' needs a 'chunk_size' axis")
        object.__setattr__(self, "axes", axes)

    @property
    def size(self) -> int:
        return int(np.prod([len(v) for v in self.axes.values()])) if self.axes else 1

    def points(self) -> list[dict[str, Any]]:
        """Every grid point, in axis order with the last axis varying fastest"""
        names = list(self.axes)
        return [dict(zip(names, combo)) for combo in itertools.product(*self.axes.values())]


@dataclass(frozen=True)
class GridSearchResult:
    results: list[EvalResult]
    best: EvalResult


def confusion(pred, truth) -> ConfusionCounts:
    """Confusion counts with True meaning outlier on both sides"""
    pred = np.asarray(pred, dtype=bool).reshape(-1)
    truth = np.asarray(truth, dtype=bool).reshape(-1)
    if pred.size != truth.size:
        raise ShapeError(f"Predictions ({pred.size}) and truth ({truth.size}) differ in length")
    return ConfusionCounts(
        tp=int(np.count_nonzero(pred & truth)),
        fp=int(np.count_nonzero(pred & ~truth)),
        tn=int(np.count_nonzero(~pred & ~truth)),
        fn=int(np.count_nonzero(~pred & truth)),
    )


def metrics(counts: ConfusionCounts) -> tuple[float, float | None]:
    """
    Returns:
        (accuracy, precision) with accuracy = (tp + tn) / N and
        precision = tp / (tp + fp), or None when nothing was predicted positive
    """
    if counts.total <= 0:
        raise DataError("metrics need at least one evaluated sample")
    accuracy = (counts.tp + counts.tn) / counts.total
    predicted = counts.tp + counts.fp
    precision = counts.tp / predicted if predicted > 0 else None
    return accuracy, precision


def recall(counts: ConfusionCounts) -> float | None:
    positives = counts.tp + counts.fn
    return counts.tp / positives if positives > 0 else None


def evaluate(pred, truth, params: dict[str, Any], model: str = "") -> EvalResult:
    counts = confusion(pred, truth)
    accuracy, precision = metrics(counts)
    return EvalResult(counts=counts, accuracy=accuracy, precision=precision, params=dict(params), model=model)


def _param_key(value) -> tuple:
    # None (a default left to the filter) sorts after every explicit value
    return (value is None, "" if value is None else value)


def _selection_key(result: EvalResult) -> tuple:
    # higher accuracy, then higher precision (undefined ranks last), then smaller params
    precision = -1.0 if result.precision is None else result.precision
    return (-result.accuracy, -precision, tuple(_param_key(v) for v in result.params.values()))


def select_best(results: list[EvalResult]) -> EvalResult:
    if not results:
        raise ConfigError("Cannot select the best run of an empty grid")
    return min(results, key=_selection_key)


def point_config(params: dict[str, Any], seed: int = 0) -> FilterConfig:
    """FilterConfig a filter grid point runs with: defaults, the run seed, then the point's values"""
    return FilterConfig(**{"seed": seed, **params})


def _run_filter_point(data: Dataset, model: str, params: dict[str, Any], seed: int) -> EvalResult:
    cfg = point_config(params, seed)
    report = FILTER_MODELS[model](data, cfg)
    return evaluate(report.flags, data.truth_labels, params, model)


def _run_score_point(data: Dataset, model: str, k: int, thresholds) -> list[EvalResult]:
    scores = SCORE_MODELS[model](data, k)
    if thresholds is None:
        thresholds = np.unique(scores).tolist()
    return [
        evaluate(scores >= threshold, data.truth_labels, {"k": k, "threshold": threshold}, model)
        for threshold in thresholds
    ]


def grid_search(data, grid: GridSpec, seed: int = 0, n_jobs: int = 1) -> GridSearchResult:
    """
    Evaluate every grid point against the truth labels and keep the best accuracy.

    Ties on accuracy go to the higher precision, then to the lexicographically
    smaller parameter tuple. Score-based models flag scores >= threshold; without
    a threshold axis every distinct score is tried.

    Args:
        data: labelled Dataset
        grid: model and axes
        seed: seed of every filter run unless the grid has a 'seed' axis
        n_jobs: grid points evaluated in parallel (results gathered in grid order)
    """
    data = as_dataset(data)
    if not data.has_labels:
        raise DataError("grid_search needs ground-truth labels", provenance=data.provenance)

    if grid.model in FILTER_MODELS:
        tasks = [delayed(_run_filter_point)(data, grid.model, point, seed) for point in grid.points()]
        results = Parallel(n_jobs=n_jobs, prefer="threads")(tasks)
    else:
        thresholds = grid.axes.get("threshold")
        tasks = [delayed(_run_score_point)(data, grid.model, k, thresholds) for k in grid.axes["k"]]
        results = [r for batch in Parallel(n_jobs=n_jobs, prefer="threads")(tasks) for r in batch]

    best = select_best(results)
    logger.info(
        f"Grid search over {len(results)} point(s) for {grid.model}: best accuracy "
        f"{best.accuracy:.4f} at {best.params}"
    )
    return GridSearchResult(results=results, best=best)


def load_grid_spec(path) -> GridSpec:
    """
    Read a grid spec JSON file: {"model": "swad", "axes": {"epsilon": [...], ...}}.
    Any problem with the file is a usage error.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"Grid file not found: {path}", path=str(path)) from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Grid file is not valid JSON: {e}", path=str(path)) from e
    if not isinstance(raw, dict) or "model" not in raw or not isinstance(raw.get("axes", {}), dict):
        raise ConfigError("Grid file must be an object with 'model' and an 'axes' object", path=str(path))
    grid = GridSpec(model=raw["model"], axes=raw.get("axes", {}))
    if grid.model in FILTER_MODELS:
        # build every config up front so a bad value fails before any work
        for point in grid.points():
            FilterConfig(**point)
    return grid


def results_frame(results: list[EvalResult]) -> pd.DataFrame:
    return pd.DataFrame([r.as_row() for r in results])


def summary_record(search: GridSearchResult, seed: int = 0) -> dict[str, Any]:
    best = search.best
    record = {
        "model": best.model,
        "n_results": len(search.results),
        "best": {
            "accuracy": best.accuracy,
            "precision": best.precision,
            "params": best.params,
            "counts": {"tp": best.counts.tp, "fp": best.counts.fp, "tn": best.counts.tn, "fn": best.counts.fn},
        },
    }
    if best.model in FILTER_MODELS:
        # echo every hyperparameter, including the ones the grid left at their defaults
        record["config_defaults"] = FilterConfig(seed=seed).as_dict()
        record["best"]["config"] = point_config(best.params, seed).as_dict()
    return record
