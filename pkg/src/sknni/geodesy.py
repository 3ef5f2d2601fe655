"""
Coordinate handling and great-circle distances on a sphere.

User-facing coordinates are degrees of latitude in [-90, 90) and longitude
in [-180, 180). Everything past ingestion works in radians.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

EARTH_RADIUS_KM = 6371.01

# Largest double below 90; the closed upper latitude folds onto it.
_LAT_MAX = math.nextafter(90.0, 0.0)


class Embedding(str, enum.Enum):
    """How (lat, lng) is mapped into 3-D space for the spatial index.

    ``STANDARD`` is the usual latitude embedding and is injective.
    ``PAPER`` applies the colatitude formulas to a signed latitude, which
    folds (lat, lng) and (-lat, lng + 180) onto the same point and collapses
    the whole equator onto the +z pole. Keep it for reproduction studies only.
    """

    STANDARD = "standard"
    PAPER = "paper"


@dataclass(frozen=True)
class GeoCoord:
    lat: float
    lng: float


@dataclass(frozen=True)
class Observation:
    coord: GeoCoord
    value: float


def _check_radius(rho: float) -> float:
    rho = float(rho)
    if not (math.isfinite(rho) and rho > 0):
        raise ValidationError(f"must be finite and > 0, got {rho!r}", "radius")
    return rho


def normalize_coord(lat_deg: float, lng_deg: float) -> GeoCoord:
    """Validate a coordinate in degrees and fold closed bounds into the half-open domain.

    ``lng = 180`` becomes ``-180`` and ``lat = 90`` becomes the largest double
    below 90. Anything else in range passes through unchanged.
    """
    lat = float(lat_deg)
    lng = float(lng_deg)
    if not math.isfinite(lat) or not -90.0 <= lat <= 90.0:
        raise ValidationError(f"must be finite and within [-90, 90], got {lat_deg!r}", "lat")
    if not math.isfinite(lng) or not -180.0 <= lng <= 180.0:
        raise ValidationError(f"must be finite and within [-180, 180], got {lng_deg!r}", "lng")
    if lat == 90.0:
        lat = _LAT_MAX
    if lng == 180.0:
        lng = -180.0
    return GeoCoord(lat, lng)


def normalize_coords(lat_deg, lng_deg) -> tuple[np.ndarray, np.ndarray]:
    """Array version of :func:`normalize_coord`; returns new float64 arrays."""
    lat = np.array(lat_deg, dtype=np.float64, copy=True)
    lng = np.array(lng_deg, dtype=np.float64, copy=True)
    for name, arr, bound in (("lat", lat, 90.0), ("lng", lng, 180.0)):
        bad = ~np.isfinite(arr) | (arr < -bound) | (arr > bound)
        if bad.any():
            pos = int(np.flatnonzero(bad)[0])
            raise ValidationError(
                f"must be finite and within [{-bound:g}, {bound:g}], "
                f"got {arr.flat[pos]!r} at row {pos}",
                name,
            )
    lat[lat == 90.0] = _LAT_MAX
    lng[lng == 180.0] = -180.0
    return lat, lng


def to_cartesian(lat_deg, lng_deg, rho: float = EARTH_RADIUS_KM,
                 mode: Embedding | str = Embedding.STANDARD) -> np.ndarray:
    """Embed degree coordinates in 3-D space.

    Accepts scalars or arrays; returns an array of shape ``(..., 3)``.
    """
    rho = _check_radius(rho)
    mode = Embedding(mode)
    phi = np.radians(np.asarray(lat_deg, dtype=np.float64))
    theta = np.radians(np.asarray(lng_deg, dtype=np.float64))
    if mode is Embedding.STANDARD:
        cos_phi = np.cos(phi)
        xyz = (cos_phi * np.cos(theta), cos_phi * np.sin(theta), np.sin(phi))
    else:
        sin_phi = np.sin(phi)
        xyz = (np.cos(theta) * sin_phi, np.sin(theta) * sin_phi, np.cos(phi))
    return rho * np.stack(xyz, axis=-1)


def haversine_term(lat_a, lng_a, lat_b, lng_b) -> np.ndarray:
    """Clipped squared half-chord on the unit sphere; inputs in radians, broadcast."""
    a = (np.sin((lat_b - lat_a) / 2.0) ** 2
         + np.cos(lat_a) * np.cos(lat_b) * np.sin((lng_b - lng_a) / 2.0) ** 2)
    return np.clip(a, 0.0, 1.0)


def orthodromic_distance_rad(lat_a, lng_a, lat_b, lng_b, rho: float = EARTH_RADIUS_KM):
    """Great-circle distance for radian inputs, broadcasting like numpy ufuncs.

    Result lies in ``[0, pi * rho]``.
    """
    a = haversine_term(lat_a, lng_a, lat_b, lng_b)
    return 2.0 * rho * np.arctan2(np.sqrt(a), np.sqrt(1.0 - a))


def orthodromic_distance(a: GeoCoord, b: GeoCoord, rho: float = EARTH_RADIUS_KM) -> float:
    """Great-circle distance between two degree coordinates, in units of ``rho``."""
    rho = _check_radius(rho)
    d = orthodromic_distance_rad(math.radians(a.lat), math.radians(a.lng),
                                 math.radians(b.lat), math.radians(b.lng), rho)
    return float(d)
