from .experiment import (AmerpeStat, CsvSource, ExperimentConfig, RunBlock, SyntheticSource,
                         iter_run_blocks, run_experiment, split_holdout, stats_table, write_stats)
from .metrics import (SYNTHETIC_BOUNDS, AmerpeBounds, amerpe, amerpe_floor,
                      amerpe_floor_synthetic, bootstrap_mean_ci, expected_min_error)
from .synthetic import SyntheticSpec, generate_synthetic, truncated_normal, wrap_longitude

__all__ = [
    "AmerpeBounds", "AmerpeStat", "CsvSource", "ExperimentConfig", "RunBlock",
    "SYNTHETIC_BOUNDS", "SyntheticSource", "SyntheticSpec", "amerpe", "amerpe_floor",
    "amerpe_floor_synthetic", "bootstrap_mean_ci", "expected_min_error", "generate_synthetic",
    "iter_run_blocks", "run_experiment", "split_holdout", "stats_table", "truncated_normal",
    "wrap_longitude", "write_stats",
]
