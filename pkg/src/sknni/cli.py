"""
Command-line interface.

    sknni interpolate --observations obs.csv --queries q.csv --output out.csv [--k 20]
    sknni synth --n 4000 --runs 5 --seed 7 --output data/
    sknni grid --lat-step 1 --lng-step 1 --output grid.csv
    sknni evaluate --config campaign.json --output results.csv [--raw raw.csv]

Exit status: 0 on success, 2 for usage or validation errors, 1 otherwise.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import warnings
from pathlib import Path

from . import io
from .errors import KClampedWarning, ValidationError
from .functions import DEFAULT_FUNCTION, available_functions
from .geodesy import EARTH_RADIUS_KM, Embedding
from .interpolator import DEFAULT_K, Interpolator

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def cmd_interpolate(args) -> int:
    obs = io.read_observations(args.observations)
    queries = io.read_queries(args.queries)
    if len(queries) == 0:
        raise ValidationError("no queries", "queries")
    interp = Interpolator(obs, rho=args.radius, mode=args.embedding)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", KClampedWarning)
        result = interp(queries, k=args.k, fn=args.fn)
    for w in caught:
        _warn(str(w.message))
    io.write_interpolation(args.output, result)
    return EXIT_OK


def cmd_synth(args) -> int:
    from .evaluation.experiment import run_seed
    from .evaluation.synthetic import SyntheticSpec, generate_synthetic

    if args.n < 1:
        raise ValidationError(f"must be >= 1, got {args.n}", "--n")
    if args.runs < 1:
        raise ValidationError(f"must be >= 1, got {args.runs}", "--runs")
    if not 0 <= args.seed < 2**64:
        raise ValidationError("must be in [0, 2**64)", "--seed")
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for run in range(args.runs):
            time = float(run) if args.time == "auto" else float(args.time)
            obs = generate_synthetic(SyntheticSpec(args.n, time, run_seed(args.seed, run)))
            io.write_observations(out / f"run_{run}.csv", obs)
    except OSError as exc:
        raise ValidationError(f"cannot write to {out}: {exc.strerror}", "--output") from exc
    return EXIT_OK


def grid_coords(lat_step: float, lng_step: float) -> list[tuple[float, float]]:
    """Cell-centered latitudes, edge-aligned longitudes, latitude-major order."""
    for name, step in (("--lat-step", lat_step), ("--lng-step", lng_step)):
        if not (math.isfinite(step) and step > 0):
            raise ValidationError(f"must be a positive number, got {step}", name)
    lats = []
    i = 0
    while (lat := -90.0 + lat_step / 2.0 + i * lat_step) < 90.0:
        lats.append(lat)
        i += 1
    lngs = []
    j = 0
    while (lng := -180.0 + j * lng_step) < 180.0:
        lngs.append(lng)
        j += 1
    return [(lat, lng) for lat in lats for lng in lngs]


def cmd_grid(args) -> int:
    coords = grid_coords(args.lat_step, args.lng_step)
    try:
        io.write_queries(args.output, coords)
    except OSError as exc:
        raise ValidationError(f"cannot write {args.output}: {exc.strerror}", "--output") from exc
    return EXIT_OK


def cmd_evaluate(args) -> int:
    from .evaluation.experiment import ExperimentConfig, run_experiment, write_stats

    config = ExperimentConfig.from_json(args.config)
    if args.raw:
        with open(args.raw, "w", newline="", encoding="utf-8") as raw:
            stats = run_experiment(config, raw=raw)
    else:
        stats = run_experiment(config)
    write_stats(args.output, stats)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sknni", description="Spherical k-nearest-neighbor interpolation.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpolate", help="interpolate observations at query coordinates")
    p.add_argument("--observations", required=True, help="CSV with header lat,lng,value")
    p.add_argument("--queries", required=True, help="CSV with header lat,lng")
    p.add_argument("--output", required=True, help="output CSV path")
    p.add_argument("--k", type=int, default=DEFAULT_K, help="neighbors per query (default %(default)s)")
    p.add_argument("--fn", choices=available_functions(), default=DEFAULT_FUNCTION)
    p.add_argument("--radius", type=float, default=EARTH_RADIUS_KM)
    p.add_argument("--embedding", choices=[e.value for e in Embedding],
                   default=Embedding.STANDARD.value)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("synth", help="generate synthetic observation sets")
    p.add_argument("--n", type=int, required=True, help="stations per set")
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time", default="auto",
                   help="time value, or 'auto' to use the run index (default)")
    p.add_argument("--output", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("grid", help="write a regular query grid")
    p.add_argument("--lat-step", type=float, required=True)
    p.add_argument("--lng-step", type=float, required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("evaluate", help="run a holdout benchmark campaign")
    p.add_argument("--config", required=True, help="experiment JSON")
    p.add_argument("--output", required=True, help="aggregated results CSV")
    p.add_argument("--raw", help="optional per-pair CSV dump")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "time", "auto") != "auto":
        try:
            if not math.isfinite(float(args.time)):
                raise ValueError
        except ValueError:
            print(f"error: --time: expected a number or 'auto', got {args.time!r}", file=sys.stderr)
            return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
