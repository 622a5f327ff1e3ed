"""
Monte Carlo estimates with batch-means standard errors.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from achronal.config import get_config
from achronal.errors import InvalidArgumentError


@dataclass(frozen=True)
class MCEstimate:
    """Mean of per-sample values with its batch-means standard error."""

    value: float
    std_error: float
    n_samples: int
    seed: int
    n_batches: int = 0
    effective_sample_size: float = 0.0

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        """True if |value - target| <= sigmas * std_error (exact match when std_error is 0)."""
        return abs(self.value - target) <= sigmas * self.std_error + 1e-15

    def to_dict(self) -> Dict[str, Any]:
        return {
            "estimate": self.value,
            "std_error": self.std_error,
            "n": self.n_samples,
            "seed": self.seed,
            "batches": self.n_batches,
            "effective_sample_size": self.effective_sample_size,
        }


def batch_means(values: np.ndarray, n_batches: int):
    """
    Split values into n_batches contiguous batches and return (mean, std_error).

    The standard error is the standard deviation of batch means over sqrt(n_batches).
    """
    batches = np.array_split(values, n_batches)
    means = np.array([batch.mean() for batch in batches])
    sizes = np.array([batch.size for batch in batches], dtype=float)
    mean = float(np.sum(means * sizes) / sizes.sum())
    if n_batches < 2:
        return mean, 0.0
    return mean, float(np.std(means, ddof=1) / np.sqrt(n_batches))


def estimate_from_samples(
    values,
    seed: int,
    weights: Optional[np.ndarray] = None,
    min_batches: Optional[int] = None
) -> MCEstimate:
    """
    Build an MCEstimate from per-sample values, optionally importance weighted.

    With weights, the estimand is mean(weights * values) and the effective
    sample size is (sum w)^2 / sum w^2.

    Raises:
        InvalidArgumentError: If there are fewer samples than batches
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    min_batches = get_config().min_batches if min_batches is None else min_batches
    if n < min_batches:
        raise InvalidArgumentError("n_samples", f"n_samples must be at least {min_batches}, got {n}")

    if weights is None:
        ess = float(n)
        terms = values
    else:
        weights = np.asarray(weights, dtype=float)
        total = weights.sum()
        ess = float(total * total / np.sum(weights * weights)) if total > 0 else 0.0
        terms = weights * values

    mean, std_error = batch_means(terms, min_batches)
    return MCEstimate(
        value=mean,
        std_error=std_error,
        n_samples=int(n),
        seed=int(seed),
        n_batches=min_batches,
        effective_sample_size=ess,
    )


__all__ = ["MCEstimate", "batch_means", "estimate_from_samples"]
