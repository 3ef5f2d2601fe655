"""Spherical k-nearest-neighbor interpolation of sparse geospatial observations."""

from .errors import KClampedWarning, ValidationError
from .functions import available_functions, get_function, register
from .geodesy import (EARTH_RADIUS_KM, Embedding, GeoCoord, Observation, normalize_coord,
                      orthodromic_distance, to_cartesian)
from .interpolator import DEFAULT_K, Interpolator, build_interpolator, interpolate
from .kdtree import KDTree, build_index, query_knn

SkNNI = Interpolator

__all__ = [
    "DEFAULT_K", "EARTH_RADIUS_KM", "Embedding", "GeoCoord", "Interpolator", "KClampedWarning",
    "KDTree", "Observation", "SkNNI", "ValidationError", "available_functions",
    "build_index", "build_interpolator", "get_function", "interpolate", "normalize_coord",
    "orthodromic_distance", "query_knn", "register", "to_cartesian",
]
