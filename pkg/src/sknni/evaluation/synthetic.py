"""
Synthetic noisy geospatial field used for benchmarking.

Stations cluster around the equator and a handful of longitude bands. The
value field is a smooth latitude bump plus a longitude wave whose phase
advances with time (one period per 24 time units) plus Uniform(0, 8) noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

LAT_SIGMA = 30.0
LNG_SIGMA = 60.0
LNG_OFFSETS = np.array([-125.0, -75.0, 0.0, 75.0, 100.0, 135.0])
LNG_OFFSET_PROBS = np.array([0.15, 0.15, 0.15, 0.2, 0.2, 0.15])


@dataclass(frozen=True)
class SyntheticSpec:
    n_stations: int
    time: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n_stations) != self.n_stations or self.n_stations < 1:
            raise ValidationError(f"must be a positive integer, got {self.n_stations!r}",
                                  "n_stations")
        if not np.isfinite(self.time):
            raise ValidationError("must be finite", "time")


def truncated_normal(rng: np.random.Generator, mu: float, sigma: float,
                     low: float, high: float, size: int) -> np.ndarray:
    """Exact truncated normal draws by rejection from the untruncated normal."""
    out = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        # Over-draw a little so one pass usually suffices.
        draw = rng.normal(mu, sigma, need + need // 4 + 8)
        keep = draw[(draw >= low) & (draw <= high)][:need]
        out[filled:filled + keep.size] = keep
        filled += keep.size
    return out


def wrap_longitude(lng):
    """Map any real longitude into [-180, 180)."""
    wrapped = np.mod(np.asarray(lng, dtype=np.float64) + 180.0, 360.0) - 180.0
    # fmod rounding can land exactly on +180 for tiny negative inputs.
    return np.where(wrapped >= 180.0, -180.0, wrapped)


def field_value(lat, lng, time, noise):
    """Closed-form synthetic value at degree coordinates."""
    lat = np.asarray(lat, dtype=np.float64)
    lng = np.asarray(lng, dtype=np.float64)
    return (42.0 * np.sin(np.pi * (lat + 90.0) / 180.0)
            + 7.0 * np.cos(1.5 * np.pi * (lng + 180.0) / 180.0 + np.pi / 12.0 * time)
            + noise - 25.0)


def generate_synthetic(spec: SyntheticSpec) -> np.ndarray:
    """Draw ``spec.n_stations`` observations as an ``(N, 3)`` array of lat, lng, value.

    Deterministic for a given ``spec.seed``.
    """
    rng = np.random.default_rng(spec.seed)
    n = int(spec.n_stations)
    lat = truncated_normal(rng, 0.0, LAT_SIGMA, -90.0, 90.0, n)
    lng_base = truncated_normal(rng, 0.0, LNG_SIGMA, -180.0, 180.0, n)
    lng_offset = rng.choice(LNG_OFFSETS, size=n, p=LNG_OFFSET_PROBS)
    lng = wrap_longitude(lng_base + lng_offset)
    noise = rng.uniform(0.0, 8.0, n)
    return np.column_stack([lat, lng, field_value(lat, lng, spec.time, noise)])
