"""
Interpolation functions.

Every function here follows one calling convention::

    fn(query_lat, query_lng, nbr_lat, nbr_lng, nbr_value, rho, k) -> (M,) array

with angles in radians, query arrays of shape ``(M,)`` and neighbor arrays of
shape ``(M, k)`` ordered nearest first. Custom functions with the same
signature can be added through :func:`register`.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .geodesy import orthodromic_distance_rad
from .neighborhood import NeighborhoodView

InterpFunction = Callable[..., np.ndarray]

# eps = (EPS_SCALE * rho) ** 2, so weights do not depend on the length unit.
EPS_SCALE = 1e-6
# NDD falls back to the proximal weights when sum(w * eta) <= this * rho.
NDD_DEGENERATE_SCALE = 1e-12


def stability_epsilon(rho: float) -> float:
    return (EPS_SCALE * rho) ** 2


def proximal_distances(view: NeighborhoodView, rho: float) -> np.ndarray:
    """Great-circle distance from each query to each of its neighbors, shape (M, k)."""
    return orthodromic_distance_rad(view.query_lat[:, None], view.query_lng[:, None],
                                    view.lat, view.lng, rho)


def nisd_weights(delta: np.ndarray, eps: float) -> np.ndarray:
    """Normalized inverse squared distance weights, row-wise."""
    inv = 1.0 / (np.asarray(delta, dtype=np.float64) ** 2 + eps)
    return inv / inv.sum(axis=-1, keepdims=True)


def neighborhood_centroid(view: NeighborhoodView) -> tuple[np.ndarray, np.ndarray]:
    """Plain arithmetic mean of neighbor latitudes and longitudes.

    No antimeridian unwrapping: a neighborhood straddling +-180 degrees gets
    a centroid near longitude 0.
    """
    return view.lat.mean(axis=1), view.lng.mean(axis=1)


def ndd_reweight(view: NeighborhoodView, w_delta: np.ndarray, rho: float) -> np.ndarray:
    """Neighborhood distribution debiasing.

    Scales each proximal weight by the neighbor's great-circle distance to
    its neighborhood centroid and renormalizes, so neighbors bunched around
    the centroid lose influence relative to isolated ones. Rows whose
    weighted centroid distance is (numerically) zero, which includes every
    ``k == 1`` row, keep their proximal weights.
    """
    lat_bar, lng_bar = neighborhood_centroid(view)
    eta = orthodromic_distance_rad(lat_bar[:, None], lng_bar[:, None], view.lat, view.lng, rho)
    scaled = w_delta * eta
    total = scaled.sum(axis=1, keepdims=True)
    degenerate = total <= NDD_DEGENERATE_SCALE * rho
    safe_total = np.where(degenerate, 1.0, total)
    return np.where(degenerate, w_delta, scaled / safe_total)


def nddnisd(query_lat, query_lng, nbr_lat, nbr_lng, nbr_value, rho, k=None) -> np.ndarray:
    """Debiased inverse-squared-distance weighted mean of the neighbor values."""
    view = NeighborhoodView(np.asarray(query_lat, dtype=np.float64),
                            np.asarray(query_lng, dtype=np.float64),
                            np.asarray(nbr_lat, dtype=np.float64),
                            np.asarray(nbr_lng, dtype=np.float64),
                            np.asarray(nbr_value, dtype=np.float64))
    delta = proximal_distances(view, rho)
    w = ndd_reweight(view, nisd_weights(delta, stability_epsilon(rho)), rho)
    return (w * view.value).sum(axis=1)


def nearest(query_lat, query_lng, nbr_lat, nbr_lng, nbr_value, rho, k=None) -> np.ndarray:
    # Column 0 is the closest neighbor by construction.
    return np.asarray(nbr_value, dtype=np.float64)[:, 0].copy()


def mean(query_lat, query_lng, nbr_lat, nbr_lng, nbr_value, rho, k=None) -> np.ndarray:
    return np.asarray(nbr_value, dtype=np.float64).mean(axis=1)


def median(query_lat, query_lng, nbr_lat, nbr_lng, nbr_value, rho, k=None) -> np.ndarray:
    """Row median; for even ``k`` the midpoint of the two middle values."""
    return np.median(np.asarray(nbr_value, dtype=np.float64), axis=1)


_REGISTRY: dict[str, InterpFunction] = {
    "nddnisd": nddnisd,
    "nearest": nearest,
    "mean": mean,
    "median": median,
}

DEFAULT_FUNCTION = "nddnisd"


def register(name: str, fn: InterpFunction) -> None:
    if name in _REGISTRY:
        raise ValueError(f"interpolation function {name!r} is already registered")
    _REGISTRY[name] = fn


def get_function(name_or_fn: str | InterpFunction) -> InterpFunction:
    if callable(name_or_fn):
        return name_or_fn
    try:
        return _REGISTRY[name_or_fn]
    except KeyError:
        raise KeyError(f"unknown interpolation function {name_or_fn!r}; "
                       f"choose from {sorted(_REGISTRY)}") from None


def available_functions() -> list[str]:
    return list(_REGISTRY)
