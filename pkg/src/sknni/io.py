"""CSV readers and writers for observation, query and result files."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ValidationError
from .geodesy import normalize_coords

OBSERVATION_HEADER = ["lat", "lng", "value"]
QUERY_HEADER = ["lat", "lng"]


def _read_table(path, header: list[str]) -> np.ndarray:
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8-sig") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", "path") from exc
    if not rows:
        raise ValidationError(f"{path} is empty; expected header {','.join(header)}", "header")
    found = [c.strip() for c in rows[0]]
    if found != header:
        raise ValidationError(f"{path}: expected header {','.join(header)!r}, "
                              f"got {','.join(found)!r}", "header")
    out = np.empty((len(rows) - 1, len(header)))
    for i, row in enumerate(rows[1:]):
        lineno = i + 2
        if len(row) != len(header):
            raise ValidationError(f"{path}:{lineno}: expected {len(header)} fields, "
                                  f"got {len(row)}", "record")
        for j, (name, cell) in enumerate(zip(header, row)):
            try:
                # float() is locale-independent and only accepts '.' as decimal point.
                out[i, j] = float(cell)
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: not a number: {cell!r}", name) from None
            if not math.isfinite(out[i, j]):
                raise ValidationError(f"{path}:{lineno}: must be finite, got {cell!r}", name)
    if len(out):
        normalize_coords(out[:, 0], out[:, 1])
    return out


def read_observations(path) -> np.ndarray:
    """Load a ``lat,lng,value`` file as an ``(N, 3)`` array. Raises on any bad record."""
    return _read_table(path, OBSERVATION_HEADER)


def read_queries(path) -> np.ndarray:
    """Load a ``lat,lng`` file as an ``(M, 2)`` array."""
    return _read_table(path, QUERY_HEADER)


def _write(path, header: list[str], rows: Iterable[Iterable[str]]) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_observations(path, observations) -> None:
    """Write ``(N, 3)`` rows at full (round-trip) precision."""
    _write(path, OBSERVATION_HEADER,
           ([repr(v) for v in row] for row in np.asarray(observations, dtype=float).tolist()))


def write_queries(path, queries) -> None:
    _write(path, QUERY_HEADER,
           ([repr(v) for v in row] for row in np.asarray(queries, dtype=float).tolist()))


def write_interpolation(path, result, decimals: int = 6) -> None:
    """Write ``(M, 3)`` interpolation output.

    Coordinates are written exactly as received; values with ``decimals``
    places.
    """
    _write(path, OBSERVATION_HEADER,
           ([repr(lat), repr(lng), f"{value:.{decimals}f}"]
            for lat, lng, value in np.asarray(result, dtype=float).tolist()))
