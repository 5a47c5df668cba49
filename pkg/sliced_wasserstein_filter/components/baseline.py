"""Reference unsupervised detectors: k-th nearest neighbor distance and Local Outlier Factor"""
from dataclasses import dataclass

import numpy as np
import scipy.spatial
from loguru import logger

from sliced_wasserstein_filter.components.dataset import as_dataset, check_finite
from sliced_wasserstein_filter.components.errors import ConfigError

REACHABILITY_FLOOR = 1e-12


@dataclass(frozen=True)
class NeighborGraph:
    """k nearest neighbors of every sample (self excluded), ordered by (distance, index)"""

    k: int
    indices: np.ndarray
    distances: np.ndarray

    @property
    def k_distance(self) -> np.ndarray:
        return self.distances[:, -1]


def build_neighbor_graph(values: np.ndarray, k: int) -> NeighborGraph:
    n_samples = values.shape[0]
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n_samples - 1:
        raise ConfigError(f"k must lie in [1, N-1] = [1, {n_samples - 1}], got {k}", k=k, rows=n_samples)
    dists = scipy.spatial.distance.cdist(values, values, metric="euclidean")
    np.fill_diagonal(dists, np.inf)
    # stable sort keeps equal distances in index order
    order = np.argsort(dists, axis=1, kind="stable")[:, :k]
    return NeighborGraph(k=int(k), indices=order, distances=np.take_along_axis(dists, order, axis=1))


def knn_score(data, k: int) -> np.ndarray:
    """Distance from every sample to its k-th nearest neighbor"""
    data = as_dataset(data)
    check_finite(data)
    return build_neighbor_graph(data.values, k).k_distance.copy()


def lof_score(data, k: int) -> np.ndarray:
    """
    Local Outlier Factor.

    reach(i, o) = max(k_distance(o), d(i, o)), floored at 1e-12 so duplicate
    points keep a finite density; lrd(i) = 1 / mean reach over the neighbors of
    i; LOF(i) = mean lrd of the neighbors / lrd(i). Scores near 1 are inliers.
    """
    data = as_dataset(data)
    check_finite(data)
    graph = build_neighbor_graph(data.values, k)
    if np.unique(data.values, axis=0).shape[0] < k + 1:
        logger.warning(f"Fewer than k+1={k + 1} distinct points; LOF neighborhoods are degenerate")

    reach = np.maximum(graph.k_distance[graph.indices], graph.distances)
    reach = np.maximum(reach, REACHABILITY_FLOOR)
    lrd = 1.0 / np.mean(reach, axis=1)
    return np.mean(lrd[graph.indices], axis=1) / lrd
