"""
Synthetic labelled datasets.

Defaults are illustrative: a well separated majority and minority group plus a
sparse group of far outliers, and the usual 2D toy shapes. They are not exact
reproductions of any published figure.
"""
import numpy as np
from sklearn.datasets import make_blobs, make_circles, make_moons

from sliced_wasserstein_filter.components.dataset import Dataset
from sliced_wasserstein_filter.components.errors import ConfigError

MAJORITY, MINORITY, OUTLIER = 0, 1, 2

DEFAULT_MEANS = ((0.0, 0.0), (8.0, 6.0), (20.0, -14.0))
DEFAULT_COVS = (
    ((1.0, 0.3), (0.3, 1.0)),
    ((0.6, 0.0), (0.0, 0.6)),
    ((4.0, 0.0), (0.0, 4.0)),
)

TOY_KINDS = ("blobs", "moons", "circles", "anisotropic", "uniform_noise")
CIRCLES_FACTOR = 0.5
ANISOTROPIC_TRANSFORM = ((0.6, -0.6), (-0.4, 0.8))
OUTLIER_BOX = (-6.0, 6.0)


def _check_covariance(cov: np.ndarray, name: str) -> None:
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ConfigError(f"{name} covariance must be square", shape=cov.shape)
    if not np.allclose(cov, cov.T, atol=1e-12):
        raise ConfigError(f"{name} covariance is not symmetric")
    if np.min(np.linalg.eigvalsh(cov)) < -1e-10:
        raise ConfigError(f"{name} covariance is not positive semi-definite")


def gen_three_gaussians(
    n_major: int = 300,
    n_minor: int = 60,
    n_outlier: int = 15,
    means=DEFAULT_MEANS,
    covs=DEFAULT_COVS,
    seed: int = 0,
) -> Dataset:
    """
    Majority group, minority group and far statistical outliers.

    Rows come in that order; `groups` holds 0/1/2 per row and truth_labels marks
    the outlier group.
    """
    sizes = (n_major, n_minor, n_outlier)
    if any(s < 0 for s in sizes) or sum(sizes) == 0:
        raise ConfigError(f"Population sizes must be >= 0 with at least one > 0, got {sizes}")
    means = [np.asarray(m, dtype=float) for m in means]
    covs = [np.asarray(c, dtype=float) for c in covs]
    if len(means) != 3 or len(covs) != 3:
        raise ConfigError("Need exactly three means and three covariances")
    dim = means[0].size
    for name, mean, cov in zip(("majority", "minority", "outlier"), means, covs):
        if mean.size != dim or cov.shape != (dim, dim):
            raise ConfigError(f"{name} parameters do not match dimension {dim}")
        _check_covariance(cov, name)

    rng = np.random.default_rng(seed)
    parts = [rng.multivariate_normal(mean, cov, size=size, method="eigh") for mean, cov, size in zip(means, covs, sizes)]
    groups = np.repeat([MAJORITY, MINORITY, OUTLIER], sizes)
    return Dataset(
        values=np.vstack(parts),
        feature_names=tuple(f"x{k}" for k in range(dim)),
        truth_labels=groups == OUTLIER,
        provenance=f"three-gaussians(seed={seed})",
        groups=groups,
    )


def gen_toy(
    kind: str,
    n: int,
    noise: float = 0.05,
    seed: int = 0,
    outlier_fraction: float = 0.0,
    centers: int = 3,
) -> Dataset:
    """
    2D toy shapes with additive Gaussian noise, optionally contaminated by
    uniform outliers over [-6, 6]^2 (labelled as truth outliers).

    Args:
        kind: one of blobs, moons, circles, anisotropic, uniform_noise
        n: total number of points
        noise: standard deviation of the Gaussian noise
        seed: random seed
        outlier_fraction: share of the n points replaced by uniform outliers
        centers: number of blobs for blobs / anisotropic
    """
    kind = kind.replace("-", "_")
    if kind not in TOY_KINDS:
        raise ConfigError(f"Unknown toy kind {kind!r}; expected one of {TOY_KINDS}", kind=kind)
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}", n=n)
    if noise < 0:
        raise ConfigError(f"noise must be >= 0, got {noise}", noise=noise)
    if not 0 <= outlier_fraction < 1:
        raise ConfigError(f"outlier_fraction must lie in [0, 1), got {outlier_fraction}")

    n_outliers = int(round(outlier_fraction * n))
    n_inliers = n - n_outliers
    rng = np.random.default_rng(seed)

    if n_inliers == 0:
        inliers = np.empty((0, 2))
    elif kind == "blobs":
        inliers, _ = make_blobs(n_samples=n_inliers, centers=centers, cluster_std=noise, random_state=seed)
    elif kind == "anisotropic":
        blobs, _ = make_blobs(n_samples=n_inliers, centers=centers, cluster_std=noise, random_state=seed)
        inliers = blobs @ np.asarray(ANISOTROPIC_TRANSFORM)
    elif kind == "moons":
        inliers, _ = make_moons(n_samples=n_inliers, noise=noise or None, random_state=seed)
    elif kind == "circles":
        inliers, _ = make_circles(n_samples=n_inliers, noise=noise or None, factor=CIRCLES_FACTOR, random_state=seed)
    else:
        inliers = rng.uniform(*OUTLIER_BOX, size=(n_inliers, 2)) + rng.normal(scale=noise, size=(n_inliers, 2))

    outliers = rng.uniform(*OUTLIER_BOX, size=(n_outliers, 2))
    return Dataset(
        values=np.vstack([inliers, outliers]),
        feature_names=("x0", "x1"),
        truth_labels=np.repeat([False, True], [n_inliers, n_outliers]),
        provenance=f"{kind}(n={n}, noise={noise}, seed={seed})",
    )
