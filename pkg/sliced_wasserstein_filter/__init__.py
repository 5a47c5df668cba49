from loguru import logger

from sliced_wasserstein_filter.components.baseline import knn_score, lof_score
from sliced_wasserstein_filter.components.dataset import Dataset, read_csv, spearman, spearman_ranking, standardize
from sliced_wasserstein_filter.components.errors import (
    ConfigError,
    DataError,
    SchemaError,
    ShapeError,
    SlicedWassersteinError,
)
from sliced_wasserstein_filter.components.evaluation import GridSpec, confusion, grid_search, metrics
from sliced_wasserstein_filter.components.generators import gen_three_gaussians, gen_toy
from sliced_wasserstein_filter.components.lcpr_validator import cyclical_encode, lcpr_dataset, validate_lcpr
from sliced_wasserstein_filter.components.outlier_filter import FilterReport, chunked_swad, fead, keep_inliers, swad
from sliced_wasserstein_filter.components.sw_core import sample_directions, sliced_wasserstein, wasserstein_1d
from sliced_wasserstein_filter.config import FilterConfig
from sliced_wasserstein_filter.sliced_wasserstein_filter import SlicedWassersteinFilter, run_filter

# quiet when used as a library; app.main enables it
logger.disable("sliced_wasserstein_filter")

__all__ = [
    "ConfigError",
    "DataError",
    "Dataset",
    "FilterConfig",
    "FilterReport",
    "GridSpec",
    "SchemaError",
    "ShapeError",
    "SlicedWassersteinError",
    "SlicedWassersteinFilter",
    "chunked_swad",
    "confusion",
    "cyclical_encode",
    "fead",
    "gen_three_gaussians",
    "gen_toy",
    "grid_search",
    "keep_inliers",
    "knn_score",
    "lcpr_dataset",
    "lof_score",
    "metrics",
    "read_csv",
    "run_filter",
    "sample_directions",
    "sliced_wasserstein",
    "spearman",
    "spearman_ranking",
    "standardize",
    "swad",
    "validate_lcpr",
    "wasserstein_1d",
]
