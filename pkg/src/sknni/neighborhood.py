from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NeighborhoodView:
    """Query points and their neighbor observations, all angles in radians.

    ``query_lat``/``query_lng`` have shape ``(M,)``; ``lat``, ``lng``,
    ``value`` and ``indices`` have shape ``(M, k)`` with column 0 holding
    the closest neighbor.
    """

    query_lat: np.ndarray
    query_lng: np.ndarray
    lat: np.ndarray
    lng: np.ndarray
    value: np.ndarray
    indices: np.ndarray | None = None

    def __post_init__(self):
        m = self.query_lat.shape
        if self.query_lng.shape != m or len(m) != 1:
            raise ValueError("query_lat and query_lng must be 1-D and equal length")
        shape = self.lat.shape
        if len(shape) != 2 or shape[0] != m[0]:
            raise ValueError(f"neighbor arrays must have shape (M, k), got {shape}")
        if self.lng.shape != shape or self.value.shape != shape:
            raise ValueError("lat, lng and value must share one (M, k) shape")

    @property
    def k(self) -> int:
        return self.lat.shape[1]

    def __len__(self) -> int:
        return self.query_lat.shape[0]

    def truncate(self, k: int) -> "NeighborhoodView":
        """Keep only the ``k`` closest neighbors of every row."""
        if not 1 <= k <= self.k:
            raise ValueError(f"k must be in [1, {self.k}], got {k}")
        idx = None if self.indices is None else self.indices[:, :k]
        return NeighborhoodView(self.query_lat, self.query_lng, self.lat[:, :k],
                                self.lng[:, :k], self.value[:, :k], idx)
