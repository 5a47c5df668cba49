"""
Exact 1D Wasserstein distance between equal-size uniform empirical distributions
and its sliced (random projection) extension to d dimensions.

The ground norm is Euclidean everywhere. Directions are drawn once and shared by
every comparison of a run, so pair statistics are comparable and reproducible.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from sliced_wasserstein_filter.components.errors import ConfigError, ShapeError

UNIT_NORM_TOLERANCE = 1e-6

# Independent random streams derived from one user seed
DIRECTION_STREAM = 0
COMPARATOR_STREAM = 1
SHUFFLE_STREAM = 2


def child_rng(seed: int, *parts: int) -> np.random.Generator:
    """
    A Generator deterministically derived from a base seed and integer parts.

    The same (seed, parts) always yields the same stream, whatever process or
    thread asks for it.
    """
    if seed < 0 or any(p < 0 for p in parts):
        raise ConfigError(f"Seeds must be unsigned, got seed={seed}, parts={parts}", seed=seed)
    return np.random.default_rng([int(seed), *(int(p) for p in parts)])


@dataclass(frozen=True)
class OTOrder:
    """Order t of the Wasserstein distance (t >= 1)"""

    t: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.t) or self.t < 1:
            raise ConfigError(f"Wasserstein order t must be >= 1, got {self.t}", t=self.t)

    @classmethod
    def of(cls, t: "OTOrder | float") -> "OTOrder":
        return t if isinstance(t, OTOrder) else cls(float(t))


@dataclass(frozen=True)
class Projection1D:
    """Sorted projected coordinates of one empirical distribution"""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.ndim != 1 or self.values.size < 1:
            raise ShapeError("A projection needs at least one value", size=int(self.values.size))
        if np.any(np.diff(self.values) < 0):
            raise ShapeError("Projection values must be non-decreasing")

    @classmethod
    def of(cls, values: Sequence[float]) -> "Projection1D":
        return cls(np.sort(np.asarray(values, dtype=float), kind="stable"))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class DirectionSet:
    """L unit vectors of R^d (rows of `directions`) used for the projections"""

    directions: np.ndarray
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "directions", np.array(self.directions, dtype=float))
        if self.directions.ndim != 2 or 0 in self.directions.shape:
            raise ShapeError("Directions must be a non-empty L x d array", shape=self.directions.shape)
        norms = np.linalg.norm(self.directions, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE):
            raise ShapeError("Every direction must have unit norm", worst=float(np.max(np.abs(norms - 1.0))))
        self.directions.setflags(write=False)

    @property
    def L(self) -> int:
        return int(self.directions.shape[0])

    @property
    def d(self) -> int:
        return int(self.directions.shape[1])


def _as_matrix(points, name: str) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be an N x d matrix", shape=arr.shape)
    return arr


def project(points, direction) -> np.ndarray:
    """
    Inner product of every row of `points` with a unit `direction`.

    Args:
        points: N x d matrix (a 1D array is read as N x 1)
        direction: unit vector of R^d

    Returns:
        N projected values, in row order (unsorted)
    """
    pts = _as_matrix(points, "points")
    theta = np.asarray(direction, dtype=float).reshape(-1)
    if pts.shape[1] != theta.size:
        raise ShapeError(
            f"Dimension mismatch: points have d={pts.shape[1]}, direction has d={theta.size}",
            points_d=pts.shape[1],
            direction_d=theta.size,
        )
    deviation = abs(float(np.linalg.norm(theta)) - 1.0)
    if deviation > UNIT_NORM_TOLERANCE:
        raise ShapeError("Direction is not a unit vector", norm_deviation=deviation)
    return pts @ theta


def wasserstein_1d(xs, ys, t: OTOrder | float = 1.0) -> float:
    """
    Order-t Wasserstein distance between two uniform empirical distributions of
    the same size on the real line: the monotone (sorted) matching is optimal.

    Returns:
        ((1/m) * sum_i |x_(i) - y_(i)|^t)^(1/t)
    """
    order = OTOrder.of(t)
    x = np.asarray(xs, dtype=float).reshape(-1)
    y = np.asarray(ys, dtype=float).reshape(-1)
    if x.size == 0 or y.size == 0:
        raise ShapeError("wasserstein_1d needs non-empty inputs")
    if x.size != y.size:
        raise ShapeError(
            f"wasserstein_1d compares equal-size distributions, got {x.size} and {y.size}",
            sizes=(int(x.size), int(y.size)),
        )
    gaps = np.abs(Projection1D.of(x).values - Projection1D.of(y).values)
    if order.t == 1.0:
        return float(np.mean(gaps))
    return float(np.mean(gaps**order.t) ** (1.0 / order.t))


def sample_directions(d: int, L: int, seed: int = 0) -> DirectionSet:
    """
    Draw L directions uniformly on the unit sphere of R^d by normalizing
    standard Gaussian vectors. Deterministic in `seed`.
    """
    if d < 1 or L < 1:
        raise ConfigError(f"Need d >= 1 and L >= 1, got d={d}, L={L}", d=d, L=L)
    rng = child_rng(seed, DIRECTION_STREAM)
    raw = rng.standard_normal((L, d))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    # a zero draw has probability 0; replace it instead of dividing by zero
    while np.any(norms == 0):
        bad = norms[:, 0] == 0
        raw[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
    return DirectionSet(directions=raw / norms, seed=int(seed))


def project_all(points, dirs: DirectionSet) -> np.ndarray:
    """N x L matrix of projections of every row onto every direction"""
    pts = _as_matrix(points, "points")
    if pts.shape[1] != dirs.d:
        raise ShapeError(
            f"Dimension mismatch: points have d={pts.shape[1]}, directions have d={dirs.d}",
            points_d=pts.shape[1],
            direction_d=dirs.d,
        )
    # column by column, so a row's projections do not depend on its position
    out = np.zeros((pts.shape[0], dirs.L))
    for k in range(dirs.d):
        out += np.outer(pts[:, k], dirs.directions[:, k])
    return out


def sliced_wasserstein(U, V, t: OTOrder | float, dirs: DirectionSet) -> float:
    """
    Monte-Carlo sliced Wasserstein distance between two equal-size point clouds:
    ((1/L) * sum_l W_t(project(U, theta_l), project(V, theta_l))^t)^(1/t)
    """
    order = OTOrder.of(t)
    u = _as_matrix(U, "U")
    v = _as_matrix(V, "V")
    if u.shape[0] != v.shape[0]:
        raise ShapeError(
            f"sliced_wasserstein compares equal-size distributions, got {u.shape[0]} and {v.shape[0]}",
            sizes=(u.shape[0], v.shape[0]),
        )
    if u.shape[0] == 0:
        raise ShapeError("sliced_wasserstein needs non-empty inputs")
    pu = np.sort(project_all(u, dirs), axis=0, kind="stable")
    pv = np.sort(project_all(v, dirs), axis=0, kind="stable")
    # per-direction W_t^t, then the power mean over directions
    per_direction = np.mean(np.abs(pu - pv) ** order.t, axis=0)
    return float(np.mean(per_direction) ** (1.0 / order.t))


def mean_abs_projection(d: int) -> float:
    """
    E|<theta, e>| for theta uniform on the sphere of R^d and a fixed unit e:
    Gamma(d/2) / (sqrt(pi) * Gamma((d+1)/2)). Equals 1 for d=1 and 2/pi for d=2.
    """
    if d < 1:
        raise ConfigError(f"Dimension must be >= 1, got {d}", d=d)
    return float(np.exp(gammaln(d / 2.0) - gammaln((d + 1) / 2.0)) / np.sqrt(np.pi))


class LeaveOneOutProjector:
    """
    Sliced distances between leave-one-out versions of one dataset.

    Every projection is sorted once. Removing the atoms at sorted ranks a < b
    yields two sequences that agree except on positions a..b-1, where one holds
    s[k+1] and the other s[k]; so the per-direction cost is the sum of
    |s[k+1] - s[k]|^t over a <= k < b, read from a prefix sum. For t = 1 this
    telescopes to |<theta, z_i - z_j>|.
    """

    def __init__(self, projections: np.ndarray, t: OTOrder | float = 1.0):
        proj = np.asarray(projections, dtype=float)
        if proj.ndim != 2 or proj.shape[0] < 2:
            raise ShapeError("Need an N x L projection matrix with N >= 2", shape=proj.shape)
        self.t = OTOrder.of(t).t
        self.n_samples, self.n_directions = proj.shape
        order = np.argsort(proj, axis=0, kind="stable")
        sorted_proj = np.take_along_axis(proj, order, axis=0)
        self.ranks = np.empty_like(order)
        np.put_along_axis(self.ranks, order, np.arange(self.n_samples)[:, None], axis=0)
        gap_cost = np.abs(np.diff(sorted_proj, axis=0)) ** self.t
        self.prefix = np.vstack([np.zeros((1, self.n_directions)), np.cumsum(gap_cost, axis=0)])
        self._columns = np.arange(self.n_directions)

    @classmethod
    def from_points(cls, points, dirs: DirectionSet, t: OTOrder | float = 1.0) -> "LeaveOneOutProjector":
        return cls(project_all(points, dirs), t)

    def distances(self, i: int, others) -> np.ndarray:
        """Sliced distances between the dataset without row i and without each row of `others`"""
        js = np.atleast_1d(np.asarray(others, dtype=int))
        rank_i = self.ranks[i][None, :]
        rank_j = self.ranks[js]
        lo = np.minimum(rank_i, rank_j)
        hi = np.maximum(rank_i, rank_j)
        cost = (self.prefix[hi, self._columns] - self.prefix[lo, self._columns]) / (self.n_samples - 1)
        return np.mean(cost, axis=1) ** (1.0 / self.t)
