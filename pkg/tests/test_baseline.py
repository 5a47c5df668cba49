import numpy as np
import pytest

from sliced_wasserstein_filter.components.baseline import build_neighbor_graph, knn_score, lof_score
from sliced_wasserstein_filter.components.errors import ConfigError


def _naive_lof(values: np.ndarray, k: int) -> np.ndarray:
    """Textbook LOF with explicit loops, ties broken by index"""
    n = len(values)
    dist = [[float(np.linalg.norm(values[a] - values[b])) for b in range(n)] for a in range(n)]
    neighbors = []
    for a in range(n):
        others = sorted((dist[a][b], b) for b in range(n) if b != a)
        neighbors.append([b for _, b in others[:k]])
    k_distance = [dist[a][neighbors[a][-1]] for a in range(n)]
    lrd = []
    for a in range(n):
        reach = [max(max(k_distance[o], dist[a][o]), 1e-12) for o in neighbors[a]]
        lrd.append(1.0 / (sum(reach) / k))
    return np.array([sum(lrd[o] for o in neighbors[a]) / k / lrd[a] for a in range(n)])


def _planted() -> np.ndarray:
    rng = np.random.default_rng(0)
    return np.vstack([rng.uniform(0.0, 1.0, size=(10, 2)), [[100.0, 100.0]]])


class TestNeighborGraph:
    def test_excludes_self_and_is_sorted(self):
        values = np.random.default_rng(1).normal(size=(15, 2))
        graph = build_neighbor_graph(values, 4)
        assert graph.indices.shape == (15, 4)
        assert not np.any(graph.indices == np.arange(15)[:, None])
        assert np.all(np.diff(graph.distances, axis=1) >= 0)

    @pytest.mark.parametrize("k", [0, 5])
    def test_k_out_of_range(self, k):
        with pytest.raises(ConfigError):
            build_neighbor_graph(np.zeros((5, 2)), k)


class TestKnnScore:
    def test_identical_points(self):
        assert knn_score(np.array([[1.0, 1.0], [1.0, 1.0]]), 1).tolist() == [0.0, 0.0]

    def test_unit_grid(self):
        scores = knn_score(np.arange(6, dtype=float).reshape(-1, 1), 1)
        assert scores[2] == 1.0

    def test_planted_outlier(self):
        scores = knn_score(_planted(), 3)
        assert scores[10] > 99
        assert np.all(scores[:10] < np.sqrt(2))


class TestLofScore:
    def test_regular_simplex_scores_one(self):
        simplex = np.eye(5)
        for k in (1, 2, 4):
            np.testing.assert_allclose(lof_score(simplex, k), 1.0, atol=1e-12)

    def test_uniform_grid_interior(self):
        scores = lof_score(np.arange(15, dtype=float).reshape(-1, 1), 2)
        assert np.all((scores[3:12] >= 0.8) & (scores[3:12] <= 1.2))

    def test_planted_outlier(self):
        scores = lof_score(_planted(), 3)
        assert scores[10] > 10
        assert np.all(scores[:10] < 2)

    def test_matches_naive_reference(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            n = int(rng.integers(4, 51))
            values = rng.normal(size=(n, int(rng.integers(1, 4))))
            k = int(rng.integers(1, min(10, n - 1) + 1))
            np.testing.assert_allclose(lof_score(values, k), _naive_lof(values, k), rtol=1e-9, atol=1e-9)

    def test_planted_far_outlier_has_maximum_score(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            values = rng.normal(size=(40, 2))
            values[17] = rng.normal(size=2) * 0.1 + 25.0
            assert int(np.argmax(lof_score(values, 5))) == 17

    def test_duplicates_stay_finite(self):
        values = np.vstack([np.zeros((4, 2)), [[1.0, 1.0]]])
        scores = lof_score(values, 2)
        assert np.all(np.isfinite(scores))
        np.testing.assert_allclose(scores[:4], 1.0)

    def test_rigid_motion_invariance(self):
        rng = np.random.default_rng(4)
        values = rng.normal(size=(30, 2))
        angle = 0.7
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        moved = values @ rotation.T + np.array([5.0, -3.0])
        np.testing.assert_allclose(lof_score(moved, 4), lof_score(values, 4), atol=1e-9)
        np.testing.assert_allclose(knn_score(moved, 4), knn_score(values, 4), atol=1e-9)
