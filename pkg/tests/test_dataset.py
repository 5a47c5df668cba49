import numpy as np
import pytest

from sliced_wasserstein_filter.components.dataset import (
    Dataset,
    check_finite,
    load_dataset,
    read_csv,
    spearman,
    spearman_ranking,
    standardize,
    write_csv,
)
from sliced_wasserstein_filter.components.errors import DataError, ShapeError


def _write(tmp_path, text: str, name: str = "data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestDatasetType:
    def test_default_feature_names(self):
        data = Dataset(values=np.zeros((3, 2)))
        assert data.feature_names == ("x0", "x1")
        assert not data.has_labels

    def test_label_length_mismatch(self):
        with pytest.raises(ShapeError):
            Dataset(values=np.zeros((3, 2)), truth_labels=[True, False])

    def test_name_count_mismatch(self):
        with pytest.raises(ShapeError):
            Dataset(values=np.zeros((3, 2)), feature_names=("a",))

    def test_subset_keeps_labels_and_groups(self):
        data = Dataset(values=np.arange(8.0).reshape(4, 2), truth_labels=[0, 1, 0, 1], groups=[0, 1, 2, 0])
        part = data.subset([3, 1])
        assert part.values[:, 0].tolist() == [6.0, 2.0]
        assert part.truth_labels.tolist() == [True, True]
        assert part.groups.tolist() == [0, 1]

    def test_check_finite_names_row(self):
        data = Dataset(values=[[0.0, 1.0], [np.inf, 2.0], [np.nan, 0.0]])
        with pytest.raises(DataError) as excinfo:
            check_finite(data)
        assert excinfo.value.details["row"] == 1


class TestReadCsv:
    def test_numeric_file_with_header(self, tmp_path):
        data = read_csv(_write(tmp_path, "a,b\n1,2\n3,4\n5,6\n"))
        assert (data.n_samples, data.n_features) == (3, 2)
        assert data.feature_names == ("a", "b")
        assert data.dropped_rows == ()

    def test_unparseable_row_is_dropped(self, tmp_path):
        data = read_csv(_write(tmp_path, "a,b\n1,2\n1, oops\n3,4\n"))
        assert data.n_samples == 2
        assert data.dropped_rows == (1,)

    def test_empty_cell_is_dropped(self, tmp_path):
        data = read_csv(_write(tmp_path, "a,b\n1,\n3,4\n"))
        assert data.values.tolist() == [[3.0, 4.0]]

    def test_label_column(self, tmp_path):
        data = read_csv(_write(tmp_path, "a,label,b\n1,0,2\n3,1,4\n"), label_column="label")
        assert data.values.tolist() == [[1.0, 2.0], [3.0, 4.0]]
        assert data.truth_labels.tolist() == [False, True]
        assert data.feature_names == ("a", "b")

    def test_label_column_without_header(self, tmp_path):
        data = read_csv(_write(tmp_path, "1,2,0\n3,4,1\n"), has_header=False, label_column="2")
        assert data.truth_labels.tolist() == [False, True]
        assert data.n_features == 2

    def test_unknown_label_column(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(_write(tmp_path, "a,b\n1,2\n"), label_column="label")

    def test_labels_must_be_binary(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(_write(tmp_path, "a,label\n1,0\n2,2\n"), label_column="label")

    def test_non_rectangular(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(_write(tmp_path, "a,b\n1,2\n3,4,5\n"))

    def test_short_row(self, tmp_path):
        with pytest.raises(DataError) as excinfo:
            read_csv(_write(tmp_path, "a,b\n1,2\n3\n4,5\n"))
        assert excinfo.value.details["row"] == 1

    def test_short_row_without_header(self, tmp_path):
        with pytest.raises(DataError) as excinfo:
            read_csv(_write(tmp_path, "1,2\n3,4\n5\n"), has_header=False)
        assert excinfo.value.details["row"] == 2

    def test_no_usable_rows(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(_write(tmp_path, "a,b\nx,y\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_csv(tmp_path / "absent.csv")

    def test_round_trip(self, tmp_path):
        values = np.array([[0.1, 2.5], [-3.25, 1e-3], [123456.789, -0.0625]])
        original = Dataset(values=values, feature_names=("u", "v"), truth_labels=[0, 1, 0])
        path = tmp_path / "round.csv"
        write_csv(original, path)
        back = read_csv(path, label_column="label")
        assert np.array_equal(back.values, values)
        assert back.truth_labels.tolist() == [False, True, False]

    def test_load_dataset_standardizes(self, tmp_path):
        data = load_dataset(_write(tmp_path, "a\n0\n2\n"), scale=True)
        assert data.values[:, 0].tolist() == [-1.0, 1.0]


class TestStandardize:
    def test_population_std(self):
        scaled, scaling = standardize(Dataset(values=[[0.0], [2.0]]))
        assert scaled.values[:, 0].tolist() == [-1.0, 1.0]
        assert scaling.stds.tolist() == [1.0]

    def test_constant_column(self):
        scaled, scaling = standardize(Dataset(values=[[5.0, 1.0], [5.0, 2.0], [5.0, 3.0]]))
        assert scaled.values[:, 0].tolist() == [0.0, 0.0, 0.0]
        assert scaling.constant_columns == (0,)

    def test_idempotent(self):
        data = Dataset(values=np.random.default_rng(0).normal(3.0, 2.0, size=(50, 3)))
        once, _ = standardize(data)
        twice, _ = standardize(once)
        np.testing.assert_allclose(twice.values, once.values, atol=1e-12)

    def test_needs_two_rows(self):
        with pytest.raises(DataError):
            standardize(Dataset(values=[[1.0, 2.0]]))


class TestSpearman:
    def test_examples(self):
        x = np.arange(10.0)
        assert spearman(x, x) == pytest.approx(1.0, abs=1e-12)
        assert spearman(x, -x) == pytest.approx(-1.0, abs=1e-12)
        assert spearman([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-12)

    def test_rank_invariance(self):
        rng = np.random.default_rng(1)
        x, y = rng.normal(size=40), rng.normal(size=40)
        base = spearman(x, y)
        assert spearman(np.exp(x), y ** 3) == pytest.approx(base, abs=1e-12)
        assert spearman(-x, y) == pytest.approx(-base, abs=1e-12)

    def test_ties_use_average_ranks(self):
        assert spearman([1, 1, 2, 3], [1, 2, 3, 4]) == pytest.approx(np.corrcoef([1.5, 1.5, 3, 4], [1, 2, 3, 4])[0, 1])

    def test_constant_input(self):
        with pytest.raises(DataError):
            spearman([1, 1, 1], [1, 2, 3])

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            spearman([1, 2], [1, 2, 3])

    def test_ranking(self):
        rng = np.random.default_rng(2)
        target = rng.normal(size=60)
        values = np.column_stack([rng.normal(size=60), -target * 2, target + rng.normal(scale=0.5, size=60), np.ones(60), target])
        data = Dataset(values=values, feature_names=("noise", "negated", "noisy", "constant", "y"))
        ranking = spearman_ranking(data, "y")
        names = [name for name, _ in ranking]
        assert names[:2] == ["negated", "noisy"]
        assert "constant" not in names
        assert ranking[0][1] == pytest.approx(-1.0)

    def test_ranking_unknown_target(self):
        with pytest.raises(DataError):
            spearman_ranking(Dataset(values=np.zeros((3, 2))), "y")
