import itertools

import numpy as np
import pytest
from scipy import integrate

from sliced_wasserstein_filter.components.errors import ConfigError, ShapeError
from sliced_wasserstein_filter.components.sw_core import (
    DirectionSet,
    LeaveOneOutProjector,
    OTOrder,
    Projection1D,
    child_rng,
    mean_abs_projection,
    project,
    project_all,
    sample_directions,
    sliced_wasserstein,
    wasserstein_1d,
)


def _brute_force_w(xs, ys, t):
    """Minimum over every bijection between the atoms"""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    m = xs.size
    cost = np.abs(xs[:, None] - ys[None, :]) ** t
    perms = np.array(list(itertools.permutations(range(m))))
    totals = cost[np.arange(m)[None, :], perms].sum(axis=1)
    return (totals.min() / m) ** (1.0 / t)


def _random_unit(rng, d):
    v = rng.standard_normal(d)
    return v / np.linalg.norm(v)


class TestProject:
    @pytest.mark.parametrize(
        "points, direction, expected",
        [
            ([[1, 2], [3, 4]], [1, 0], [1, 3]),
            ([[1, 1]], [1 / np.sqrt(2), 1 / np.sqrt(2)], [np.sqrt(2)]),
            ([[5], [-2]], [-1], [-5, 2]),
        ],
    )
    def test_examples(self, points, direction, expected):
        np.testing.assert_allclose(project(points, direction), expected, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            project([[1.0, 2.0]], [1.0, 0.0, 0.0])

    def test_non_unit_direction(self):
        with pytest.raises(ShapeError):
            project([[1.0, 2.0]], [1.0, 1.0])


class TestWasserstein1D:
    @pytest.mark.parametrize(
        "xs, ys, t, expected",
        [
            ([0.3, 7, -1], [0.3, 7, -1], 1, 0.0),
            ([0.3, 7, -1], [0.3, 7, -1], 3, 0.0),
            ([0], [3], 1, 3.0),
            ([0, 1], [1, 2], 2, 1.0),
            ([0, 2], [1, 1], 1, 1.0),
        ],
    )
    def test_examples(self, xs, ys, t, expected):
        assert wasserstein_1d(xs, ys, t) == pytest.approx(expected, abs=1e-12)

    def test_matches_all_matchings_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = int(rng.integers(1, 8))
            t = int(rng.choice([1, 2]))
            xs, ys = rng.normal(size=m), rng.normal(size=m)
            assert wasserstein_1d(xs, ys, t) == pytest.approx(_brute_force_w(xs, ys, t), abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        xs, ys = rng.normal(size=9), rng.normal(size=9)
        assert wasserstein_1d(xs, ys, 2) == wasserstein_1d(ys, xs, 2)

    def test_unequal_sizes(self):
        with pytest.raises(ShapeError):
            wasserstein_1d([0, 1], [0, 1, 2])

    def test_empty(self):
        with pytest.raises(ShapeError):
            wasserstein_1d([], [])

    def test_order_below_one(self):
        with pytest.raises(ConfigError):
            wasserstein_1d([0], [1], 0.5)


class TestTypes:
    def test_projection_must_be_sorted(self):
        with pytest.raises(ShapeError):
            Projection1D(np.array([2.0, 1.0]))
        assert Projection1D.of([3, 1, 2]).values.tolist() == [1.0, 2.0, 3.0]

    def test_direction_set_requires_unit_rows(self):
        with pytest.raises(ShapeError):
            DirectionSet(np.array([[1.0, 1.0]]), seed=0)

    def test_direction_set_is_read_only(self):
        dirs = sample_directions(3, 4, seed=0)
        with pytest.raises(ValueError):
            dirs.directions[0, 0] = 0.0

    def test_ot_order(self):
        assert OTOrder.of(2).t == 2.0
        with pytest.raises(ConfigError):
            OTOrder(0.9)

    def test_child_rng_rejects_negative_seed(self):
        with pytest.raises(ConfigError):
            child_rng(-1)

    def test_child_rng_is_reproducible(self):
        assert child_rng(5, 1, 7).random() == child_rng(5, 1, 7).random()
        assert child_rng(5, 1, 7).random() != child_rng(5, 1, 8).random()


class TestSampleDirections:
    def test_d1_directions_are_signs(self):
        dirs = sample_directions(1, 64, seed=2)
        assert set(np.abs(dirs.directions[:, 0]).round(12)) == {1.0}

    def test_unit_norm(self):
        dirs = sample_directions(3, 1000, seed=0)
        np.testing.assert_allclose(np.linalg.norm(dirs.directions, axis=1), 1.0, atol=1e-9)

    def test_deterministic_in_seed(self):
        a = sample_directions(4, 20, seed=9)
        b = sample_directions(4, 20, seed=9)
        assert np.array_equal(a.directions, b.directions)
        assert not np.array_equal(a.directions, sample_directions(4, 20, seed=10).directions)

    def test_uniform_mean_is_small(self):
        dirs = sample_directions(2, 100_000, seed=1)
        assert np.linalg.norm(dirs.directions.mean(axis=0)) < 0.02

    @pytest.mark.parametrize("d, L", [(0, 5), (2, 0)])
    def test_invalid_sizes(self, d, L):
        with pytest.raises(ConfigError):
            sample_directions(d, L)


class TestSlicedWasserstein:
    def test_zero_for_permuted_rows(self):
        rng = np.random.default_rng(0)
        U = rng.normal(size=(12, 3))
        dirs = sample_directions(3, 30, seed=0)
        assert sliced_wasserstein(U, U[rng.permutation(12)], 2, dirs) == pytest.approx(0.0, abs=1e-12)

    def test_d1_equals_wasserstein_1d(self):
        rng = np.random.default_rng(1)
        U, V = rng.normal(size=(8, 1)), rng.normal(size=(8, 1))
        dirs = sample_directions(1, 17, seed=3)
        for t in (1, 2):
            assert sliced_wasserstein(U, V, t, dirs) == pytest.approx(wasserstein_1d(U[:, 0], V[:, 0], t), rel=1e-12)

    def test_translation_and_homogeneity(self):
        rng = np.random.default_rng(2)
        U, V = rng.normal(size=(10, 2)), rng.normal(size=(10, 2))
        dirs = sample_directions(2, 40, seed=4)
        base = sliced_wasserstein(U, V, 2, dirs)
        shift = np.array([3.0, -7.0])
        assert sliced_wasserstein(U + shift, V + shift, 2, dirs) == pytest.approx(base, rel=1e-9)
        assert sliced_wasserstein(-2.5 * U, -2.5 * V, 2, dirs) == pytest.approx(2.5 * base, rel=1e-12)

    def test_metric_axioms(self):
        rng = np.random.default_rng(5)
        dirs = sample_directions(3, 25, seed=5)
        for _ in range(30):
            A, B, C = (rng.normal(size=(7, 3)) for _ in range(3))
            for t in (1, 2):
                ab = sliced_wasserstein(A, B, t, dirs)
                assert ab == sliced_wasserstein(B, A, t, dirs)
                assert sliced_wasserstein(A, C, t, dirs) <= ab + sliced_wasserstein(B, C, t, dirs) + 1e-9

    def test_size_mismatch(self):
        dirs = sample_directions(2, 5)
        with pytest.raises(ShapeError):
            sliced_wasserstein(np.zeros((3, 2)), np.zeros((4, 2)), 1, dirs)

    def test_dimension_mismatch(self):
        dirs = sample_directions(2, 5)
        with pytest.raises(ShapeError):
            sliced_wasserstein(np.zeros((3, 3)), np.zeros((3, 3)), 1, dirs)


class TestLeaveOneOut:
    def test_t1_projection_identity(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            n = int(rng.integers(3, 51))
            d = int(rng.integers(1, 5))
            D = rng.normal(size=(n, d))
            i, j = rng.choice(n, size=2, replace=False)
            theta = _random_unit(rng, d)
            w = wasserstein_1d(project(np.delete(D, i, axis=0), theta), project(np.delete(D, j, axis=0), theta), 1)
            assert w == pytest.approx(abs(theta @ (D[i] - D[j])) / (n - 1), abs=1e-12)

    @pytest.mark.parametrize("t", [1, 2, 3.5])
    def test_projector_matches_direct_definition(self, t):
        rng = np.random.default_rng(8)
        D = rng.normal(size=(15, 3))
        dirs = sample_directions(3, 20, seed=8)
        projector = LeaveOneOutProjector.from_points(D, dirs, t)
        for i in range(15):
            others = np.array([j for j in range(15) if j != i])
            fast = projector.distances(i, others)
            direct = [sliced_wasserstein(np.delete(D, i, axis=0), np.delete(D, j, axis=0), t, dirs) for j in others]
            np.testing.assert_allclose(fast, direct, rtol=1e-9, atol=1e-12)

    def test_duplicates_have_zero_distance(self):
        D = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 1.0], [3.0, -2.0]])
        projector = LeaveOneOutProjector.from_points(D, sample_directions(2, 10), 1)
        assert projector.distances(1, [2])[0] == 0.0

    @pytest.mark.parametrize("t", [1, 2])
    def test_single_atom_bound(self, t):
        rng = np.random.default_rng(4)
        for seed in range(10):
            D = rng.normal(size=(20, 3)) * rng.uniform(0.1, 10)
            projector = LeaveOneOutProjector(project_all(D, sample_directions(3, 30, seed)), t)
            for i in range(20):
                others = np.arange(20)
                others = others[others != i]
                bound = np.linalg.norm(D[others] - D[i], axis=1) / 19 ** (1.0 / t)
                assert np.all(projector.distances(i, others) <= bound + 1e-9)


class TestMeanAbsProjection:
    def test_two_over_pi_by_integration(self):
        value, _ = integrate.quad(lambda phi: abs(np.cos(phi)), 0.0, 2.0 * np.pi, epsabs=1e-12, limit=200)
        assert value / (2.0 * np.pi) == pytest.approx(2.0 / np.pi, abs=1e-6)
        assert mean_abs_projection(2) == pytest.approx(2.0 / np.pi, abs=1e-12)

    def test_known_dimensions(self):
        assert mean_abs_projection(1) == pytest.approx(1.0, abs=1e-12)
        assert mean_abs_projection(3) == pytest.approx(0.5, abs=1e-12)

    def test_monte_carlo_convergence_in_2d(self):
        rng = np.random.default_rng(17)
        deviations = []
        for seed in range(20):
            n = int(rng.integers(5, 40))
            D = rng.normal(size=(n, 2))
            i, j = rng.choice(n, size=2, replace=False)
            dirs = sample_directions(2, 10_000, seed=seed)
            per_direction = np.abs(dirs.directions @ (D[i] - D[j])) / (n - 1)
            estimate = LeaveOneOutProjector.from_points(D, dirs, 1).distances(i, [j])[0]
            assert estimate == pytest.approx(per_direction.mean(), rel=1e-9)
            stderr = per_direction.std(ddof=1) / np.sqrt(dirs.L)
            exact = 2.0 / np.pi * np.linalg.norm(D[i] - D[j]) / (n - 1)
            deviations.append(abs(estimate - exact) / stderr)
        deviations = np.array(deviations)
        assert np.count_nonzero(deviations > 3.0) <= 1
        assert np.all(deviations < 4.0)

    def test_invalid_dimension(self):
        with pytest.raises(ConfigError):
            mean_abs_projection(0)
