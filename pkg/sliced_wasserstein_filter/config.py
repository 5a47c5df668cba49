import numbers
import os
from dataclasses import asdict, dataclass, replace
from typing import Literal

from sliced_wasserstein_filter.components.errors import ConfigError

ThresholdMode = Literal["raw", "normalized"]
THRESHOLD_MODES = ("raw", "normalized")

DEFAULT_T = 1.0
DEFAULT_L = 50
DEFAULT_EPSILON = 0.05
DEFAULT_ETA = 1.0
DEFAULT_P = 0.7
DEFAULT_MAX_VOTES = 30
MIN_CHUNK_SIZE = 4

LOG_LEVEL_ENV = "SWFILTER_LOG_LEVEL"

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_FINDINGS = 3


def get_log_level(default: str = "WARNING") -> str:
    """Get the log level from the environment (only logging is configurable this way)"""
    return os.getenv(LOG_LEVEL_ENV, default).upper()


def default_votes(n_samples: int) -> int:
    return max(1, min(DEFAULT_MAX_VOTES, n_samples - 1))


@dataclass(frozen=True)
class FilterConfig:
    """
    Hyperparameters of the SWAD / FEAD filters.

    Args:
        t: Wasserstein order (>= 1)
        L: number of projection directions
        epsilon: sliced-Wasserstein vote threshold (SWAD)
        eta: Euclidean vote threshold (FEAD)
        p: fraction of positive votes needed to flag a sample
        n: votes per candidate, None means min(30, N-1)
        seed: base seed for directions, comparator draws and chunk shuffling
        chunk_size: chunk size for the chunked filter, None means no chunking
        threshold_mode: "raw" compares against epsilon, "normalized" against
            epsilon / (N_eff - 1)
    """

    t: float = DEFAULT_T
    L: int = DEFAULT_L
    epsilon: float = DEFAULT_EPSILON
    eta: float = DEFAULT_ETA
    p: float = DEFAULT_P
    n: int | None = None
    seed: int = 0
    chunk_size: int | None = None
    threshold_mode: ThresholdMode = "raw"

    def __post_init__(self):
        ok, message = check_filter_config(self)
        if not ok:
            raise ConfigError(message, config=self.as_dict())

    def resolved(self, n_samples: int) -> "FilterConfig":
        """Copy with every default materialized for a dataset of n_samples rows"""
        if self.n is not None:
            return self
        return replace(self, n=default_votes(n_samples))

    def as_dict(self) -> dict:
        return asdict(self)


def is_real(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def is_int(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def check_filter_config(cfg: FilterConfig) -> tuple[bool, str]:
    """
    Validate hyperparameters that do not depend on the data

    Returns:
        Tuple of (is_valid, error_message)
    """
    errors = []
    wrong_type = [
        name
        for name, value in (("t", cfg.t), ("epsilon", cfg.epsilon), ("eta", cfg.eta), ("p", cfg.p))
        if not is_real(value)
    ]
    if wrong_type:
        return False, "Invalid filter configuration: " + ", ".join(wrong_type) + " must be numbers"
    if not (cfg.t >= 1):
        errors.append(f"t must be >= 1 (got {cfg.t})")
    if not is_int(cfg.L) or cfg.L < 1:
        errors.append(f"L must be a positive integer (got {cfg.L})")
    if not (cfg.epsilon > 0):
        errors.append(f"epsilon must be > 0 (got {cfg.epsilon})")
    if not (cfg.eta >= 0):
        errors.append(f"eta must be >= 0 (got {cfg.eta})")
    if not (0 <= cfg.p <= 1):
        errors.append(f"p must lie in [0, 1] (got {cfg.p})")
    if cfg.n is not None and (not is_int(cfg.n) or cfg.n < 1):
        errors.append(f"n must be a positive integer (got {cfg.n})")
    if not is_int(cfg.seed) or cfg.seed < 0:
        errors.append(f"seed must be an unsigned integer (got {cfg.seed})")
    if cfg.chunk_size is not None and (not is_int(cfg.chunk_size) or cfg.chunk_size < MIN_CHUNK_SIZE):
        errors.append(f"chunk_size must be an integer >= {MIN_CHUNK_SIZE} (got {cfg.chunk_size})")
    if not isinstance(cfg.threshold_mode, str) or cfg.threshold_mode not in THRESHOLD_MODES:
        errors.append(f"threshold_mode must be one of {THRESHOLD_MODES} (got {cfg.threshold_mode!r})")

    if errors:
        return False, "Invalid filter configuration: " + "; ".join(errors)
    return True, ""
