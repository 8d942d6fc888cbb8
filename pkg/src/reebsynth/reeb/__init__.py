"""Reeb graph computation by exact level sweeps."""

from .core import (FOLD, IDEAL, ComputedReebGraph, LevelComponent, ReebEdge, ReebError,
                   ReebNode, build_augmented_reeb, compute_reeb, level_complex,
                   smooth_inessential)
from .kernel import DEFAULT as DEFAULT_BACKEND, available as available_backends

__all__ = ["FOLD", "IDEAL", "ComputedReebGraph", "LevelComponent", "ReebEdge", "ReebError",
           "ReebNode", "build_augmented_reeb", "compute_reeb", "level_complex",
           "smooth_inessential", "DEFAULT_BACKEND", "available_backends"]
