"""Error metric, noise floor and bootstrap intervals used by the benchmark."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

# Extrema of the synthetic generator and the support of its uniform noise.
SYNTHETIC_MIN = -32.0
SYNTHETIC_MAX = 32.0
NOISE_LOW = 0.0
NOISE_HIGH = 8.0


@dataclass(frozen=True)
class AmerpeBounds:
    v_min: float
    v_max: float

    def __post_init__(self):
        if not (math.isfinite(self.v_min) and math.isfinite(self.v_max)):
            raise ValidationError("bounds must be finite", "bounds")
        if not self.v_max > self.v_min:
            raise ValidationError(f"need v_min < v_max, got [{self.v_min}, {self.v_max}]",
                                  "bounds")

    @property
    def span(self) -> float:
        return self.v_max - self.v_min


SYNTHETIC_BOUNDS = AmerpeBounds(SYNTHETIC_MIN, SYNTHETIC_MAX)


def amerpe(true_value, predicted, bounds: AmerpeBounds):
    """Absolute error as a percentage of the quantity's full variation range.

    Works elementwise on arrays. Not clamped: predictions outside the bounds
    can score above 100.
    """
    return 100.0 * np.abs(np.asarray(true_value) - np.asarray(predicted)) / bounds.span


def expected_min_error(a: float, b: float) -> float:
    """E|V - E[V]| for V ~ Uniform(a, b)."""
    if not b > a:
        raise ValidationError(f"need a < b, got ({a}, {b})")
    return (b - a) / 4.0


def amerpe_floor(noise_low: float = NOISE_LOW, noise_high: float = NOISE_HIGH,
                 bounds: AmerpeBounds = SYNTHETIC_BOUNDS) -> float:
    """Lowest expected AMERPE any interpolator can reach under additive uniform noise."""
    if noise_high == noise_low:
        return 0.0
    return 100.0 * expected_min_error(noise_low, noise_high) / bounds.span


def amerpe_floor_synthetic() -> float:
    return amerpe_floor()


def bootstrap_mean_ci(samples, n_resamples: int, level: float,
                      rng: np.random.Generator) -> tuple[float, float, float]:
    """Percentile bootstrap interval for the mean.

    Returns ``(mean, low, high)``. The interval is widened to include the
    sample mean if resampling happens to miss it.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot bootstrap an empty sample")
    if not 0.0 < level < 1.0:
        raise ValidationError(f"must be in (0, 1), got {level}", "ci_level")
    m = float(x.mean())
    if n_resamples < 1:
        return m, m, m
    means = np.empty(n_resamples)
    for r in range(n_resamples):
        means[r] = x[rng.integers(0, x.size, x.size)].mean()
    alpha = (1.0 - level) / 2.0
    low, high = np.quantile(means, [alpha, 1.0 - alpha])
    return m, min(float(low), m), max(float(high), m)
