"""
Holdout benchmark: hide observations, interpolate at their coordinates, score.

Each run draws (or loads) one observation set, samples ``n_fit`` of them
without replacement to build an interpolator, and predicts the rest for every
(function, k) pair. Run ``i`` seeds its RNG streams from ``base_seed ^ i`` so
runs do not depend on execution order.
"""

from __future__ import annotations

import csv
import json
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, TextIO

import numpy as np

from ..errors import KClampedWarning, ValidationError
from ..functions import available_functions
from ..geodesy import EARTH_RADIUS_KM, Embedding
from ..interpolator import Interpolator
from ..io import read_observations
from .metrics import SYNTHETIC_BOUNDS, AmerpeBounds, amerpe, bootstrap_mean_ci
from .synthetic import SyntheticSpec, generate_synthetic

logger = logging.getLogger(__name__)

RESULT_HEADER = ["function", "k", "mean_amerpe", "ci_low", "ci_high", "n_pairs"]
RAW_HEADER = ["run", "function", "k", "obs_index", "lat", "lng", "true", "predicted", "amerpe"]

DEFAULT_N_STATIONS = 4000


@dataclass(frozen=True)
class SyntheticSource:
    n_stations: int = DEFAULT_N_STATIONS
    # None means time = run index.
    time: float | None = None


@dataclass(frozen=True)
class CsvSource:
    paths: tuple[Path, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    data: SyntheticSource | CsvSource = field(default_factory=SyntheticSource)
    n_fit: int = 1000
    runs: int = 100
    k_values: tuple[int, ...] = tuple(range(1, 26))
    functions: tuple[str, ...] = ("nddnisd", "nearest", "mean", "median")
    bounds: AmerpeBounds = SYNTHETIC_BOUNDS
    bootstrap_samples: int = 100
    ci_level: float = 0.95
    base_seed: int = 0
    embedding: Embedding = Embedding.STANDARD
    radius: float = EARTH_RADIUS_KM

    def __post_init__(self):
        if self.n_fit < 1:
            raise ValidationError("must be >= 1", "n_fit")
        if self.runs < 1:
            raise ValidationError("must be >= 1", "runs")
        if not self.k_values or any(int(k) != k or k < 1 for k in self.k_values):
            raise ValidationError("must be a nonempty list of positive integers", "k_values")
        known = available_functions()
        if not self.functions:
            raise ValidationError("must name at least one function", "functions")
        for name in self.functions:
            if name not in known:
                raise ValidationError(f"unknown function {name!r}; choose from {known}",
                                      "functions")
        if self.bootstrap_samples < 0:
            raise ValidationError("must be >= 0", "bootstrap_samples")
        if not 0.0 < self.ci_level < 1.0:
            raise ValidationError("must be in (0, 1)", "ci_level")
        if not 0 <= self.base_seed < 2**64:
            raise ValidationError("must be in [0, 2**64)", "base_seed")
        if not self.radius > 0:
            raise ValidationError("must be > 0", "radius")
        if isinstance(self.data, SyntheticSource):
            if self.data.n_stations < 1:
                raise ValidationError("must be >= 1", "data.n_stations")
            if self.n_fit >= self.data.n_stations:
                raise ValidationError(
                    f"holdout empty: n_fit={self.n_fit} >= n_stations={self.data.n_stations}",
                    "n_fit")
        elif not self.data.paths:
            raise ValidationError("must list at least one file", "data.paths")

    @classmethod
    def from_dict(cls, doc: dict, base_dir: Path | str = ".") -> "ExperimentConfig":
        """Build a config from a parsed JSON document.

        Relative CSV paths resolve against ``base_dir``. Unknown keys are
        rejected.
        """
        if not isinstance(doc, dict):
            raise ValidationError("config must be a JSON object")
        allowed = {"data", "n_fit", "runs", "k_values", "functions", "bounds",
                   "bootstrap_samples", "ci_level", "base_seed", "embedding", "radius"}
        extra = sorted(set(doc) - allowed)
        if extra:
            raise ValidationError(f"unknown key(s) {extra}", "config")

        kwargs = {}
        data = doc.get("data", {"type": "synthetic"})
        if not isinstance(data, dict):
            raise ValidationError("must be an object", "data")
        kind = data.get("type", "synthetic")
        if kind == "synthetic":
            time = data.get("time", "auto")
            if time != "auto" and not isinstance(time, (int, float)):
                raise ValidationError("must be a number or 'auto'", "data.time")
            kwargs["data"] = SyntheticSource(
                n_stations=_int(data.get("n_stations", DEFAULT_N_STATIONS), "data.n_stations"),
                time=None if time == "auto" else float(time))
        elif kind == "csv":
            paths = data.get("paths")
            if not isinstance(paths, list) or not all(isinstance(p, str) for p in paths):
                raise ValidationError("must be a list of file paths", "data.paths")
            kwargs["data"] = CsvSource(tuple(Path(base_dir) / p for p in paths))
            if "bounds" not in doc:
                raise ValidationError("required for CSV data", "bounds")
            kwargs["runs"] = len(paths)
        else:
            raise ValidationError(f"must be 'synthetic' or 'csv', got {kind!r}", "data.type")

        for key in ("n_fit", "runs", "bootstrap_samples", "base_seed"):
            if key in doc:
                kwargs[key] = _int(doc[key], key)
        if "k_values" in doc:
            ks = doc["k_values"]
            if not isinstance(ks, list):
                raise ValidationError("must be a list of integers", "k_values")
            kwargs["k_values"] = tuple(_int(k, "k_values") for k in ks)
        if "functions" in doc:
            fns = doc["functions"]
            if not isinstance(fns, list):
                raise ValidationError("must be a list of names", "functions")
            kwargs["functions"] = tuple(fns)
        if "bounds" in doc:
            b = doc["bounds"]
            if isinstance(b, dict):
                b = [b.get("v_min"), b.get("v_max")]
            if (not isinstance(b, list) or len(b) != 2
                    or not all(isinstance(v, (int, float)) for v in b)):
                raise ValidationError("must be [v_min, v_max] or {v_min, v_max}", "bounds")
            kwargs["bounds"] = AmerpeBounds(float(b[0]), float(b[1]))
        for key in ("ci_level", "radius"):
            if key in doc:
                if not isinstance(doc[key], (int, float)):
                    raise ValidationError("must be a number", key)
                kwargs[key] = float(doc[key])
        if "embedding" in doc:
            try:
                kwargs["embedding"] = Embedding(doc["embedding"])
            except ValueError:
                raise ValidationError("must be 'standard' or 'paper'", "embedding") from None
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path: Path | str) -> "ExperimentConfig":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc.strerror}", "config") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})", "config") from exc
        return cls.from_dict(doc, base_dir=path.parent)


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"must be an integer, got {value!r}", name)
    return value


def run_seed(base_seed: int, run: int) -> int:
    return base_seed ^ run


@dataclass(frozen=True)
class RunBlock:
    """Holdout predictions of one (run, function, k) combination."""

    run: int
    function: str
    k: int
    obs_index: np.ndarray
    lat: np.ndarray
    lng: np.ndarray
    truth: np.ndarray
    predicted: np.ndarray
    error: np.ndarray


@dataclass(frozen=True)
class AmerpeStat:
    function: str
    k: int
    mean: float
    ci_low: float
    ci_high: float
    n_pairs: int


def load_run_data(config: ExperimentConfig, run: int) -> np.ndarray:
    """Observation set for ``run`` as an ``(N, 3)`` array."""
    data = config.data
    if isinstance(data, SyntheticSource):
        time = float(run) if data.time is None else data.time
        return generate_synthetic(SyntheticSpec(data.n_stations, time,
                                                run_seed(config.base_seed, run)))
    path = data.paths[run % len(data.paths)]
    obs = read_observations(path)
    if config.n_fit >= len(obs):
        raise ValidationError(f"holdout empty: n_fit={config.n_fit} but {path} has "
                              f"{len(obs)} observations", "n_fit")
    return obs


def split_holdout(n: int, n_fit: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Disjoint (fit, holdout) index arrays; fit is a seeded sample without replacement."""
    if not 1 <= n_fit < n:
        raise ValidationError(f"holdout empty: n_fit={n_fit} with {n} observations", "n_fit")
    rng = np.random.default_rng([seed, 1])
    perm = rng.permutation(n)
    return np.sort(perm[:n_fit]), np.sort(perm[n_fit:])


def iter_run_blocks(config: ExperimentConfig) -> Iterator[RunBlock]:
    """Yield one block per (run, function, k) in a fixed order."""
    for run in range(config.runs):
        obs = load_run_data(config, run)
        fit, hold = split_holdout(len(obs), config.n_fit, run_seed(config.base_seed, run))
        interp = Interpolator(obs[fit], rho=config.radius, mode=config.embedding)
        queries = obs[hold, :2]
        truth = obs[hold, 2]

        # Exact kNN lists are prefix-consistent, so one query at the largest k
        # serves every smaller k.
        k_max = max(config.k_values)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", KClampedWarning)
            full = interp.neighborhoods(queries, k_max)
        if k_max > full.k:
            logger.warning("run %d: k clamped to %d available observations", run, full.k)

        for fn in config.functions:
            for k in config.k_values:
                view = full.truncate(min(k, full.k))
                pred = interp.estimate(view, fn)
                yield RunBlock(run, fn, k, hold, queries[:, 0], queries[:, 1], truth, pred,
                               amerpe(truth, pred, config.bounds))
        logger.info("run %d/%d done (%d fit, %d holdout)", run + 1, config.runs,
                    len(fit), len(hold))


def write_raw_block(writer, block: RunBlock) -> None:
    for i, lat, lng, t, p, e in zip(block.obs_index.tolist(), block.lat.tolist(),
                                    block.lng.tolist(), block.truth.tolist(),
                                    block.predicted.tolist(), block.error.tolist()):
        writer.writerow([block.run, block.function, block.k, i,
                         repr(lat), repr(lng), repr(t), repr(p), repr(e)])


def run_experiment(config: ExperimentConfig, raw: TextIO | None = None) -> list[AmerpeStat]:
    """Run the full campaign and aggregate AMERPE per (function, k).

    If ``raw`` is given, every truth/prediction pair is streamed to it as CSV
    at full precision.
    """
    errors: dict[tuple[str, int], list[np.ndarray]] = {
        (fn, k): [] for fn in config.functions for k in config.k_values}
    writer = None
    if raw is not None:
        writer = csv.writer(raw, lineterminator="\n")
        writer.writerow(RAW_HEADER)
    for block in iter_run_blocks(config):
        errors[block.function, block.k].append(block.error)
        if writer is not None:
            write_raw_block(writer, block)

    stats = []
    for fn_pos, fn in enumerate(config.functions):
        for k in config.k_values:
            pooled = np.concatenate(errors[fn, k])
            rng = np.random.default_rng([config.base_seed, 2, fn_pos, k])
            m, lo, hi = bootstrap_mean_ci(pooled, config.bootstrap_samples, config.ci_level, rng)
            stats.append(AmerpeStat(fn, k, m, lo, hi, int(pooled.size)))
    return stats


def stats_table(stats: list[AmerpeStat]) -> dict[tuple[str, int], AmerpeStat]:
    return {(s.function, s.k): s for s in stats}


def write_stats(path_or_file, stats: list[AmerpeStat], decimals: int = 6) -> None:
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_HEADER)
        for s in stats:
            w.writerow([s.function, s.k, f"{s.mean:.{decimals}f}", f"{s.ci_low:.{decimals}f}",
                        f"{s.ci_high:.{decimals}f}", s.n_pairs])

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="", encoding="utf-8") as fh:
            emit(fh)
