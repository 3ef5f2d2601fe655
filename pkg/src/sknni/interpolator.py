"""
Spherical k-nearest-neighbor interpolation.

Typical use::

    interp = Interpolator([[30, 120, 20], [30, -120, 10], [-30, -120, 20], [-30, 120, 0]])
    interp([[0, 0], [0, -120]], k=4)   # -> (M, 3) array of lat, lng, value

The index is built once; each call embeds the queries, finds their
neighborhoods in one batch and hands them to an interpolation function.
"""

from __future__ import annotations

import logging
import warnings
from typing import Iterable, Sequence

import numpy as np

from .errors import KClampedWarning, ValidationError
from .functions import DEFAULT_FUNCTION, InterpFunction, get_function
from .geodesy import (EARTH_RADIUS_KM, Embedding, GeoCoord, Observation, _check_radius,
                      normalize_coords, to_cartesian)
from .kdtree import KDTree
from .neighborhood import NeighborhoodView

logger = logging.getLogger(__name__)

DEFAULT_K = 20


def _as_observation_array(observations) -> np.ndarray:
    if isinstance(observations, np.ndarray):
        arr = observations.astype(np.float64, copy=True)
    else:
        observations = list(observations)
        if observations and isinstance(observations[0], Observation):
            arr = np.array([(o.coord.lat, o.coord.lng, o.value) for o in observations],
                           dtype=np.float64)
        else:
            arr = np.array(observations, dtype=np.float64)
    if arr.size == 0:
        raise ValidationError("at least one observation is required", "observations")
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValidationError(f"expected rows of (lat, lng, value), got shape {arr.shape}",
                              "observations")
    return arr


def _as_query_array(queries) -> np.ndarray:
    if not isinstance(queries, np.ndarray):
        queries = list(queries)
        if queries and isinstance(queries[0], GeoCoord):
            queries = [(q.lat, q.lng) for q in queries]
    arr = np.array(queries, dtype=np.float64)
    if arr.size == 0:
        raise ValidationError("no queries", "queries")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError(f"expected rows of (lat, lng), got shape {arr.shape}", "queries")
    return arr


class Interpolator:
    """Immutable interpolator over a fixed observation set.

    Parameters
    ----------
    observations : array_like of shape (N, 3) or sequence of Observation
        Rows of ``(lat, lng, value)`` in degrees and caller units.
    rho : float
        Sphere radius; distances come out in its unit. Defaults to the
        Earth's mean radius in km.
    mode : Embedding or str
        Embedding used for the spatial index.
    """

    def __init__(self, observations, rho: float = EARTH_RADIUS_KM,
                 mode: Embedding | str = Embedding.STANDARD):
        arr = _as_observation_array(observations)
        lat, lng = normalize_coords(arr[:, 0], arr[:, 1])
        value = arr[:, 2]
        bad = ~np.isfinite(value)
        if bad.any():
            raise ValidationError(f"must be finite, got {value[bad][0]!r} at row "
                                  f"{int(np.flatnonzero(bad)[0])}", "value")
        self.rho = _check_radius(rho)
        self.mode = Embedding(mode)
        self.observations = np.column_stack([lat, lng, value])
        self.observations.setflags(write=False)
        self._lat = np.radians(lat)
        self._lng = np.radians(lng)
        self._value = value.copy()
        self.index = KDTree(to_cartesian(lat, lng, self.rho, self.mode))

    @property
    def n(self) -> int:
        return self.index.n

    def effective_k(self, k: int) -> int:
        k = int(k)
        if k < 1:
            raise ValidationError(f"must be >= 1, got {k}", "k")
        if k > self.n:
            warnings.warn(f"k={k} exceeds the {self.n} available observations; using k={self.n}",
                          KClampedWarning, stacklevel=3)
            return self.n
        return k

    def neighborhoods(self, queries, k: int = DEFAULT_K) -> NeighborhoodView:
        """Batch neighbor lookup for ``(M, 2)`` degree queries; ``k`` is clamped to N."""
        q = _as_query_array(queries)
        lat, lng = normalize_coords(q[:, 0], q[:, 1])
        k = self.effective_k(k)
        idx = self.index.query(to_cartesian(lat, lng, self.rho, self.mode), k)
        return NeighborhoodView(np.radians(lat), np.radians(lng),
                                self._lat[idx], self._lng[idx], self._value[idx], idx)

    def estimate(self, view: NeighborhoodView, fn: str | InterpFunction = DEFAULT_FUNCTION
                 ) -> np.ndarray:
        """Apply an interpolation function to a prepared neighborhood view."""
        func = get_function(fn)
        out = np.asarray(func(view.query_lat, view.query_lng, view.lat, view.lng,
                              view.value, self.rho, view.k), dtype=np.float64)
        if out.shape != (len(view),):
            raise ValueError(f"interpolation function returned shape {out.shape}, "
                             f"expected ({len(view)},)")
        return out

    def __call__(self, queries, k: int = DEFAULT_K,
                 fn: str | InterpFunction = DEFAULT_FUNCTION) -> np.ndarray:
        """Interpolate at ``queries``; returns rows of ``(lat, lng, value)``.

        Coordinates are echoed back exactly as given, in the same order.
        """
        q = _as_query_array(queries)
        values = self.estimate(self.neighborhoods(q, k), fn)
        return np.column_stack([q, values])


def build_interpolator(observations: Iterable[Observation] | np.ndarray,
                       rho: float = EARTH_RADIUS_KM,
                       mode: Embedding | str = Embedding.STANDARD) -> Interpolator:
    return Interpolator(observations, rho=rho, mode=mode)


def interpolate(interp: Interpolator, queries: Sequence[GeoCoord] | np.ndarray,
                k: int = DEFAULT_K, fn: str | InterpFunction = DEFAULT_FUNCTION
                ) -> list[tuple[float, float, float]]:
    return [tuple(row) for row in interp(queries, k=k, fn=fn).tolist()]
