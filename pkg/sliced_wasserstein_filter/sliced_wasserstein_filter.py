import numpy as np

from sliced_wasserstein_filter.components.dataset import Dataset, as_dataset
from sliced_wasserstein_filter.components.errors import ConfigError
from sliced_wasserstein_filter.components.outlier_filter import FilterReport, chunked_swad, fead, keep_inliers, swad
from sliced_wasserstein_filter.config import FilterConfig

ALGORITHMS = ("swad", "fead", "swad-chunked")


def run_filter(data, cfg: FilterConfig, algorithm: str = "swad", n_jobs: int = 1) -> FilterReport:
    """
    Run one of the voting filters.

    swad and fead use the whole dataset; swad-chunked needs cfg.chunk_size.
    """
    if algorithm == "swad":
        return swad(data, cfg, n_jobs=n_jobs)
    if algorithm == "fead":
        return fead(data, cfg, n_jobs=n_jobs)
    if algorithm == "swad-chunked":
        return chunked_swad(data, cfg, n_jobs=n_jobs)
    raise ConfigError(f"Unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}", algorithm=algorithm)


class SlicedWassersteinFilter:
    """
    Outlier filter with a scikit-learn like surface.

    Usage:
        flt = SlicedWassersteinFilter(FilterConfig(epsilon=0.01, threshold_mode="normalized"))
        mask = flt.fit_predict(X)      # True marks an outlier
        clean = flt.transform(X)       # inlier rows only
    """

    def __init__(self, config: FilterConfig | None = None, algorithm: str = "swad", n_jobs: int = 1):
        if algorithm not in ALGORITHMS:
            raise ConfigError(f"Unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}", algorithm=algorithm)
        self.config = config or FilterConfig()
        self.algorithm = algorithm
        self.n_jobs = n_jobs
        self.report_: FilterReport | None = None
        self._fitted: Dataset | None = None

    def fit(self, data) -> "SlicedWassersteinFilter":
        self._fitted = as_dataset(data)
        self.report_ = run_filter(self._fitted, self.config, self.algorithm, self.n_jobs)
        return self

    def fit_predict(self, data) -> np.ndarray:
        return self.fit(data).report_.flags.copy()

    @property
    def scores_(self) -> np.ndarray:
        return self._report().scores

    def transform(self, data=None) -> np.ndarray:
        """Inlier rows of the fitted data (passing other data of another size is an error)"""
        report = self._report()
        dataset = self._fitted if data is None else as_dataset(data)
        return keep_inliers(dataset, report).values

    def _report(self) -> FilterReport:
        if self.report_ is None:
            raise ConfigError("The filter has not been fitted yet; call fit() first")
        return self.report_
