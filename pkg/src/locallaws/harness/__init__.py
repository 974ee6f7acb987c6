"""Experiment grids, histogram cache, reports and the command line."""

from .cache import CacheWarning, cache_load, cache_path, cache_store, format_histogram, parse_histogram
from .config import ConfigError, ExperimentConfig, parse_config, resolve_y
from .experiment import COLUMNS, Report, emit_metadata, emit_report, run_experiment

__all__ = [
    "COLUMNS", "CacheWarning", "ConfigError", "ExperimentConfig", "Report", "cache_load",
    "cache_path", "cache_store", "emit_metadata", "emit_report", "format_histogram",
    "parse_config", "parse_histogram", "resolve_y", "run_experiment",
]
