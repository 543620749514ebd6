"""
model/__init__.py

Public API for the beam models.

Truth model:
    - ModeSpec, ModeSet, DEFAULT_MODES: Modal constants of the clamped-free beam
    - SnapshotData: Node-by-time displacement matrix
    - mode_shape, shape_matrix, modal_frequencies, node_positions
    - simulate, simulate_loaded: Snapshot synthesis

Mass correction:
    - MassLoad, CorrectedModes
    - perturbation_matrix, corrected_modes
"""

from .truth import (
    DEFAULT_MODES,
    ModeSet,
    ModeSpec,
    SnapshotData,
    modal_frequencies,
    mode_shape,
    node_positions,
    sample_count,
    shape_matrix,
    simulate,
    simulate_loaded,
)
from .anc import CorrectedModes, MassLoad, corrected_modes, perturbation_matrix

__all__ = [
    "DEFAULT_MODES",
    "ModeSet",
    "ModeSpec",
    "SnapshotData",
    "modal_frequencies",
    "mode_shape",
    "node_positions",
    "sample_count",
    "shape_matrix",
    "simulate",
    "simulate_loaded",
    "CorrectedModes",
    "MassLoad",
    "corrected_modes",
    "perturbation_matrix",
]
