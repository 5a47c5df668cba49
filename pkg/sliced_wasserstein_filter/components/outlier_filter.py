"""
Voting outlier filters.

A candidate z_i receives n votes, one per comparator z_j drawn without
replacement from the other samples. With SWAD a vote is positive when the
sliced Wasserstein distance between the dataset without z_i and the dataset
without z_j reaches epsilon; FEAD replaces that distance with ||z_i - z_j||_2
and epsilon with eta. A sample is an outlier when its vote fraction reaches p.

Every candidate draws its comparators from its own stream, keyed on
(seed, sample id), so the candidate loop can run on any number of workers and
still produce the same report.
"""
from dataclasses import dataclass, replace
from time import perf_counter
from typing import Callable

import numpy as np
from joblib import Parallel, delayed, effective_n_jobs
from loguru import logger

from sliced_wasserstein_filter.components.dataset import Dataset, as_dataset, check_finite
from sliced_wasserstein_filter.components.errors import ConfigError, DataError, ShapeError
from sliced_wasserstein_filter.components.sw_core import (
    COMPARATOR_STREAM,
    SHUFFLE_STREAM,
    DirectionSet,
    LeaveOneOutProjector,
    OTOrder,
    child_rng,
    mean_abs_projection,
    project_all,
    sample_directions,
    sliced_wasserstein,
)
from sliced_wasserstein_filter.config import MIN_CHUNK_SIZE, FilterConfig, default_votes

PairStatistic = Callable[[int, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FilterReport:
    """
    Outcome of one filter run.

    flags[i] is (scores[i] >= p); scores are vote fractions k/n; outlier_indices
    is the sorted set of flagged rows.
    """

    flags: np.ndarray
    scores: np.ndarray
    outlier_indices: np.ndarray
    config_echo: FilterConfig
    votes_cast: np.ndarray
    algorithm: str
    epsilon_effective: np.ndarray

    @property
    def n_samples(self) -> int:
        return int(self.flags.size)

    @property
    def n_outliers(self) -> int:
        return int(self.outlier_indices.size)

    @property
    def inlier_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.flags)


def _build_report(scores: np.ndarray, cfg: FilterConfig, algorithm: str, threshold: np.ndarray) -> FilterReport:
    flags = scores >= cfg.p
    return FilterReport(
        flags=flags,
        scores=scores,
        outlier_indices=np.flatnonzero(flags),
        config_echo=cfg,
        votes_cast=np.full(scores.size, cfg.n, dtype=int),
        algorithm=algorithm,
        epsilon_effective=threshold,
    )


def _check_sample_ids(sample_ids, n_samples: int) -> np.ndarray:
    ids = np.arange(n_samples) if sample_ids is None else np.asarray(sample_ids, dtype=int).reshape(-1)
    if ids.size != n_samples:
        raise ShapeError("sample_ids needs one id per row", ids=int(ids.size), rows=n_samples)
    if np.unique(ids).size != ids.size or np.any(ids < 0):
        raise ConfigError("sample_ids must be unique non-negative integers")
    return ids


def _prepare(data, cfg: FilterConfig, min_samples: int) -> tuple[Dataset, FilterConfig]:
    data = as_dataset(data)
    if data.n_samples < min_samples:
        raise DataError(
            f"The filter needs at least {min_samples} samples, got {data.n_samples}",
            rows=data.n_samples,
        )
    check_finite(data)
    cfg = cfg.resolved(data.n_samples)
    if cfg.n > data.n_samples - 1:
        raise ConfigError(
            f"n={cfg.n} votes need at least n+1={cfg.n + 1} samples, got {data.n_samples}",
            n=cfg.n,
            rows=data.n_samples,
        )
    return data, cfg


def _vote_scores(
    statistic: PairStatistic,
    sample_ids: np.ndarray,
    n_votes: int,
    seed: int,
    threshold: float,
    n_jobs: int = 1,
) -> np.ndarray:
    """
    Vote fraction of every candidate.

    Comparators are positions in the list of the other samples ordered by
    sample id, so a candidate's draws follow its identity, not its row.
    """
    n_samples = sample_ids.size
    id_order = np.argsort(sample_ids, kind="stable")

    def score_block(block: np.ndarray) -> np.ndarray:
        out = np.empty(block.size)
        for pos, i in enumerate(block):
            others = id_order[id_order != i]
            picks = child_rng(seed, COMPARATOR_STREAM, int(sample_ids[i])).choice(
                n_samples - 1, size=n_votes, replace=False
            )
            stats = statistic(int(i), others[picks])
            out[pos] = np.count_nonzero(stats >= threshold) / n_votes
        return out

    workers = effective_n_jobs(n_jobs)
    if workers == 1:
        return score_block(np.arange(n_samples))
    blocks = np.array_split(np.arange(n_samples), min(n_samples, 4 * workers))
    parts = Parallel(n_jobs=workers, prefer="threads")(delayed(score_block)(b) for b in blocks)
    return np.concatenate(parts)


def _swad_scores(projections: np.ndarray, cfg: FilterConfig, sample_ids: np.ndarray, n_jobs: int) -> tuple[np.ndarray, float]:
    n_eff = projections.shape[0]
    threshold = cfg.epsilon if cfg.threshold_mode == "raw" else cfg.epsilon / (n_eff - 1)
    projector = LeaveOneOutProjector(projections, cfg.t)
    scores = _vote_scores(projector.distances, sample_ids, cfg.n, cfg.seed, threshold, n_jobs)
    return scores, threshold


def swad(data, cfg: FilterConfig | None = None, n_jobs: int = 1, sample_ids=None) -> FilterReport:
    """
    Sliced-Wasserstein voting filter.

    Args:
        data: Dataset or N x d array (N >= 3, finite)
        cfg: hyperparameters; epsilon is compared raw or divided by N-1
            depending on threshold_mode
        n_jobs: worker threads for the candidate loop (results do not depend on it)
        sample_ids: identity of each row for seeding, defaults to the row index

    Returns:
        FilterReport
    """
    started = perf_counter()
    data, cfg = _prepare(data, cfg or FilterConfig(), min_samples=3)
    ids = _check_sample_ids(sample_ids, data.n_samples)
    dirs = sample_directions(data.n_features, cfg.L, cfg.seed)
    scores, threshold = _swad_scores(project_all(data.values, dirs), cfg, ids, n_jobs)
    report = _build_report(scores, cfg, "swad", np.full(data.n_samples, threshold))
    logger.info(
        f"SWAD flagged {report.n_outliers}/{data.n_samples} samples "
        f"(epsilon={threshold:.6g}, p={cfg.p}, n={cfg.n}, L={cfg.L}) in {perf_counter() - started:.2f}s"
    )
    return report


def fead(data, cfg: FilterConfig | None = None, n_jobs: int = 1, sample_ids=None) -> FilterReport:
    """
    Fast Euclidean approximation of SWAD: the vote compares ||z_i - z_j||_2 with eta.
    Same comparator draws as SWAD for the same seed.
    """
    started = perf_counter()
    data, cfg = _prepare(data, cfg or FilterConfig(), min_samples=2)
    ids = _check_sample_ids(sample_ids, data.n_samples)
    values = data.values

    def euclidean(i: int, others: np.ndarray) -> np.ndarray:
        return np.linalg.norm(values[others] - values[i], axis=1)

    scores = _vote_scores(euclidean, ids, cfg.n, cfg.seed, cfg.eta, n_jobs)
    report = _build_report(scores, cfg, "fead", np.full(data.n_samples, cfg.eta))
    logger.info(
        f"FEAD flagged {report.n_outliers}/{data.n_samples} samples "
        f"(eta={cfg.eta:.6g}, p={cfg.p}, n={cfg.n}) in {perf_counter() - started:.2f}s"
    )
    return report


def split_chunks(n_samples: int, chunk_size: int, min_size: int, seed: int) -> list[np.ndarray]:
    """
    Shuffle row indices and cut them into contiguous chunks of chunk_size.
    A last chunk smaller than min_size is merged into the previous one.
    """
    perm = child_rng(seed, SHUFFLE_STREAM).permutation(n_samples)
    chunks = [perm[start:start + chunk_size] for start in range(0, n_samples, chunk_size)]
    if len(chunks) > 1 and chunks[-1].size < min_size:
        tail = chunks.pop()
        chunks[-1] = np.concatenate([chunks[-1], tail])
    return chunks


def chunked_swad(data, cfg: FilterConfig, n_jobs: int = 1) -> FilterReport:
    """
    SWAD run independently on random chunks of the data.

    The threshold is always normalized (epsilon / (N_chunk - 1)) so one epsilon
    means the same per-atom cost in every chunk. Directions are shared by all chunks.
    """
    started = perf_counter()
    if cfg.chunk_size is None:
        raise ConfigError("chunked_swad needs chunk_size to be set")
    data = as_dataset(data)
    if cfg.chunk_size > data.n_samples:
        raise ConfigError(
            f"chunk_size={cfg.chunk_size} exceeds the number of samples {data.n_samples}",
            chunk_size=cfg.chunk_size,
            rows=data.n_samples,
        )
    if cfg.n is None:
        cfg = replace(cfg, n=default_votes(cfg.chunk_size))
    if cfg.chunk_size < max(MIN_CHUNK_SIZE, cfg.n + 1):
        raise ConfigError(
            f"chunk_size={cfg.chunk_size} must be >= max({MIN_CHUNK_SIZE}, n+1={cfg.n + 1})",
            chunk_size=cfg.chunk_size,
            n=cfg.n,
        )
    if cfg.threshold_mode != "normalized":
        logger.warning("Chunked filtering always uses the normalized threshold; ignoring threshold_mode='raw'")
        cfg = replace(cfg, threshold_mode="normalized")
    data, cfg = _prepare(data, cfg, min_samples=3)

    dirs = sample_directions(data.n_features, cfg.L, cfg.seed)
    projections = project_all(data.values, dirs)
    scores = np.empty(data.n_samples)
    thresholds = np.empty(data.n_samples)
    chunks = split_chunks(data.n_samples, cfg.chunk_size, cfg.n + 1, cfg.seed)
    for number, rows in enumerate(chunks):
        scores[rows], thresholds[rows] = _swad_scores(projections[rows], cfg, rows, n_jobs)
        logger.debug(f"Chunk {number + 1}/{len(chunks)}: {rows.size} samples")

    report = _build_report(scores, cfg, "swad-chunked", thresholds)
    logger.info(
        f"Chunked SWAD flagged {report.n_outliers}/{data.n_samples} samples "
        f"in {len(chunks)} chunk(s) in {perf_counter() - started:.2f}s"
    )
    return report


def pair_statistic_swad(data, i: int, j: int, t: OTOrder | float, dirs: DirectionSet) -> float:
    """Sliced distance between the dataset without row i and the dataset without row j"""
    data = as_dataset(data)
    if i == j:
        raise ConfigError("pair_statistic_swad needs two different rows", i=i, j=j)
    if data.n_samples < 3:
        raise DataError(f"Need at least 3 samples, got {data.n_samples}", rows=data.n_samples)
    for index in (i, j):
        if not 0 <= index < data.n_samples:
            raise ConfigError(f"Row index {index} out of range", index=index, rows=data.n_samples)
    return sliced_wasserstein(np.delete(data.values, i, axis=0), np.delete(data.values, j, axis=0), t, dirs)


def fead_equivalent_eta(epsilon: float, n_samples: int, d: int) -> float:
    """
    Euclidean threshold matching a t=1 SWAD epsilon: the leave-one-out sliced
    distance is on average mean_abs_projection(d) * ||z_i - z_j|| / (N - 1).
    """
    return (n_samples - 1) * epsilon / mean_abs_projection(d)


def keep_inliers(data, report: FilterReport) -> Dataset:
    """Rows not flagged by the filter"""
    data = as_dataset(data)
    if report.n_samples != data.n_samples:
        raise ShapeError("Report and dataset sizes differ", report=report.n_samples, rows=data.n_samples)
    return data.subset(report.inlier_indices)
