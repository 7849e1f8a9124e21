"""Positive-feedback preference (PFP) internet topology model, its baselines,
and the metrics used to compare them with the AS-level internet."""

__version__ = "0.1.0"

from .generators import (
    ModelConfig,
    PreferenceScheme,
    expected_link_ratio,
    generate,
    preference_ratio,
    preference_weight,
    preset,
)
from .graph import EdgeKind, Graph, is_connected, read_edgelist, write_edgelist
from .metrics import MetricsReport, report

__all__ = [
    "EdgeKind",
    "Graph",
    "MetricsReport",
    "ModelConfig",
    "PreferenceScheme",
    "expected_link_ratio",
    "generate",
    "is_connected",
    "preference_ratio",
    "preference_weight",
    "preset",
    "read_edgelist",
    "report",
    "write_edgelist",
]
