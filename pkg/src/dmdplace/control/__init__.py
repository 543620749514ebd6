"""
control/__init__.py

Public API for the vibration-suppression harness.

    - ModalLti, build_modal_lti, continuous_modal_matrices: Placement-dependent modal model
    - LqrSolution, solve_lqr: Discrete LQR by Riccati value iteration
    - PsdResult, StepMetrics, psd_variance, step_metrics, control_effort: Metrics
    - ControlSettings, Trajectory, MetricReport, Comparison: Evaluation types
    - simulate_closed_loop, metric_report, compare_configs: Evaluation
    - format_metric_table, trajectory_rows, psd_rows: Report output
"""

from .lti import ModalLti, build_modal_lti, continuous_modal_matrices
from .lqr import LqrSolution, solve_lqr
from .metrics import PsdResult, StepMetrics, control_effort, psd_variance, step_metrics
from .evaluation import (
    Comparison,
    ControlSettings,
    MetricReport,
    Trajectory,
    compare_configs,
    format_metric_table,
    metric_report,
    psd_rows,
    simulate_closed_loop,
    trajectory_rows,
)

__all__ = [
    "ModalLti",
    "build_modal_lti",
    "continuous_modal_matrices",
    "LqrSolution",
    "solve_lqr",
    "PsdResult",
    "StepMetrics",
    "control_effort",
    "psd_variance",
    "step_metrics",
    "Comparison",
    "ControlSettings",
    "MetricReport",
    "Trajectory",
    "compare_configs",
    "format_metric_table",
    "metric_report",
    "psd_rows",
    "simulate_closed_loop",
    "trajectory_rows",
]
