"""
placement/__init__.py

Public API for sensor/actuator placement.

Cost and search:
    - placement_cost, PlacementProblem
    - DenseHankelEvaluator, ModalHankelEvaluator
    - exhaustive_search, cost_landscape, PlacementResult, LandscapeEntry

Design loop:
    - DesignTemplate, DesignIteration, DesignResult
    - identify_and_place, design_step, run_design_loop, fixed_points
"""

from .cost import (
    DenseHankelEvaluator,
    HankelEvaluator,
    ModalHankelEvaluator,
    PlacementProblem,
    placement_cost,
)
from .search import LandscapeEntry, PlacementResult, cost_landscape, exhaustive_search
from .design_loop import (
    DesignIteration,
    DesignResult,
    DesignTemplate,
    PlacementRun,
    design_step,
    fixed_points,
    identify_and_place,
    loaded_modes,
    run_design_loop,
    unloaded_iteration,
)

__all__ = [
    "DenseHankelEvaluator",
    "HankelEvaluator",
    "ModalHankelEvaluator",
    "PlacementProblem",
    "placement_cost",
    "LandscapeEntry",
    "PlacementResult",
    "cost_landscape",
    "exhaustive_search",
    "DesignIteration",
    "DesignResult",
    "DesignTemplate",
    "PlacementRun",
    "design_step",
    "fixed_points",
    "identify_and_place",
    "loaded_modes",
    "run_design_loop",
    "unloaded_iteration",
]
