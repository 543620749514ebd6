"""
evaluation.py

Open- and closed-loop simulation of placements and the metric report that compares them.

Three configurations are compared under the same weight recipe, excitation and horizon: the
optimal placement, a suboptimal placement (both under LQR full-state feedback) and the open
loop. Each placement is simulated on the beam carrying its own sensor/actuator masses; the
open loop shares the optimal configuration's beam and sensors.

Purpose:
- Simulate trajectories and reduce them to per-channel and aggregate metrics.
- Format the comparison as a text table and as CSV-ready rows.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .lqr import solve_lqr
from .lti import ModalLti, build_modal_lti
from .metrics import control_effort, psd_variance, step_metrics
from ..exceptions import ValidationError
from ..model.anc import MassLoad, corrected_modes
from ..model.truth import ModeSet, node_positions
from ..validators import FloatValidator, IntegerValidator, RangeValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControlSettings:
    """
    Shared evaluation settings.

    Attributes:
        rho: Input weight, R = rho * I.
        state_weight: ``"energy"`` weighs the modal mechanical energy, which does not depend on
            the placement; ``"output"`` uses Q = C^T C of the placement's own sensors.
        dt: Control sample interval (s).
        horizon: Simulated time (s).
        n_modes: Retained modes.
        settling_band: Settling band fraction.
        segments, window: Welch parameters.
        n_candidates: Mesh size besides the root.
        pair_mass: Mass ratio carried by each placed pair.
    """

    rho: float = 1e-2
    dt: float = 1e-3
    horizon: float = 10.0
    n_modes: int = 3
    settling_band: float = 0.02
    segments: int = 8
    window: str = "hann"
    n_candidates: int = 50
    pair_mass: float = 0.0
    state_weight: str = "energy"

    def __post_init__(self):
        FloatValidator(positive_only=True, field_name="rho").validate(self.rho)
        FloatValidator(positive_only=True, field_name="dt").validate(self.dt)
        FloatValidator(positive_only=True, field_name="horizon").validate(self.horizon)
        IntegerValidator(positive_only=True, field_name="n_modes").validate(self.n_modes)
        RangeValidator(0.0, 1.0, min_inclusive=False, max_inclusive=False,
                       field_name="settling_band").validate(self.settling_band)
        RangeValidator(min_value=0.0, field_name="pair_mass").validate(self.pair_mass)
        if self.state_weight not in ("energy", "output"):
            raise ValidationError(f"Unknown state weight '{self.state_weight}'",
                                  field="state_weight", value=self.state_weight)

    @property
    def n_steps(self) -> int:
        return int(round(self.horizon / self.dt))


@dataclass(frozen=True)
class Trajectory:
    """Simulated response; x is states x samples, y outputs x samples, u inputs x samples."""

    t: np.ndarray
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    dt: float = 1.0


def simulate_closed_loop(sys: ModalLti, K: Optional[np.ndarray], x0, horizon: float) -> Trajectory:
    """
    Simulate x_{k+1} = A x_k + B u_k with u_k = -K x_k (u = 0 when K is None).

    Samples t_k = k dt for k = 0..round(horizon / dt).
    """
    FloatValidator(positive_only=True, field_name="horizon").validate(horizon)
    A, B, C, dt = sys.system.A, sys.system.B, sys.system.C, sys.system.dt
    n_steps = int(round(horizon / dt))
    x = np.zeros((A.shape[0], n_steps + 1))
    u = np.zeros((B.shape[1], n_steps + 1))
    x[:, 0] = np.asarray(x0, dtype=float)
    closed = A if K is None else A - B @ K
    for k in range(n_steps):
        x[:, k + 1] = closed @ x[:, k]
    if K is not None:
        u = -K @ x
    return Trajectory(np.arange(n_steps + 1) * dt, x, C @ x, u, dt)


@dataclass(frozen=True)
class MetricReport:
    """
    Per-channel and aggregate metrics of one configuration.

    Aggregates: integrated PSD and control effort are summed, overshoot is averaged and
    settling time is the maximum over channels (math.inf when any channel never settles).
    """

    label: str
    placement: Tuple[int, ...]
    psd_variance: Tuple[float, ...]
    overshoot_pct: Tuple[float, ...]
    settling_time: Tuple[float, ...]
    control_effort: Tuple[float, ...]
    horizon: float
    trajectory: Optional[Trajectory] = field(default=None, repr=False, compare=False)

    @property
    def total_psd(self) -> float:
        return float(sum(self.psd_variance))

    @property
    def mean_overshoot(self) -> float:
        return float(np.mean(self.overshoot_pct)) if self.overshoot_pct else 0.0

    @property
    def max_settling(self) -> float:
        return max(self.settling_time, default=0.0)

    @property
    def total_effort(self) -> float:
        return float(sum(self.control_effort))

    def settling_label(self, value: Optional[float] = None) -> str:
        value = self.max_settling if value is None else value
        return f"{value:.3f}" if math.isfinite(value) else f"> {self.horizon:g}"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "placement": list(self.placement),
            "channels": {
                "psd_variance": list(self.psd_variance),
                "overshoot_pct": list(self.overshoot_pct),
                "settling_time": [self.settling_label(v) for v in self.settling_time],
                "control_effort": list(self.control_effort),
            },
            "aggregate": {
                "psd_variance_sum": self.total_psd,
                "overshoot_pct_mean": self.mean_overshoot,
                "settling_time_max": self.settling_label(),
                "settled": math.isfinite(self.max_settling),
                "control_effort_sum": self.total_effort,
            },
        }


def metric_report(label: str, sys: ModalLti, trajectory: Trajectory,
                  settings: ControlSettings) -> MetricReport:
    """Reduce a trajectory to a MetricReport (regulation toward zero)."""
    dt = sys.dt
    psd = tuple(psd_variance(y, dt, settings.segments, settings.window).variance
                for y in trajectory.y)
    steps = [step_metrics(y, dt, settings.settling_band, final=0.0) for y in trajectory.y]
    effort = tuple(float(e) for e in control_effort(trajectory.u, dt, per_channel=True))
    return MetricReport(
        label=label,
        placement=sys.sensor_nodes,
        psd_variance=psd,
        overshoot_pct=tuple(s.overshoot_pct for s in steps),
        settling_time=tuple(s.settling_time for s in steps),
        control_effort=effort,
        horizon=float(trajectory.t[-1]),
        trajectory=trajectory,
    )


@dataclass(frozen=True)
class Comparison:
    """Reports of the optimal, suboptimal and open-loop configurations."""

    optimal: MetricReport
    suboptimal: MetricReport
    open_loop: MetricReport

    @property
    def reports(self) -> Tuple[MetricReport, MetricReport, MetricReport]:
        return self.optimal, self.suboptimal, self.open_loop

    def orderings(self) -> Dict[str, bool]:
        """Whether the optimal configuration wins each aggregate metric."""
        o, s, ol = self.reports
        return {
            "psd_optimal_below_suboptimal": o.total_psd < s.total_psd,
            "psd_optimal_below_open_loop": o.total_psd < ol.total_psd,
            "overshoot_optimal_below_suboptimal": o.mean_overshoot < s.mean_overshoot,
            "settling_optimal_below_suboptimal": o.max_settling < s.max_settling,
            "effort_optimal_below_suboptimal": o.total_effort < s.total_effort,
            "open_loop_unsettled": not math.isfinite(ol.max_settling),
        }

    def to_dict(self) -> dict:
        return {
            "optimal": self.optimal.to_dict(),
            "suboptimal": self.suboptimal.to_dict(),
            "open_loop": self.open_loop.to_dict(),
            "orderings": self.orderings(),
        }


def _placement_model(mode_set: ModeSet, placement: Sequence[int], settings: ControlSettings,
                     excitation_scale: float) -> Tuple[ModalLti, np.ndarray]:
    node_x = node_positions(settings.n_candidates, mode_set.beam_length)
    modes = corrected_modes(mode_set, MassLoad.at_nodes(node_x, placement, settings.pair_mass))
    sys = build_modal_lti(modes, placement, dt=settings.dt, n_candidates=settings.n_candidates,
                          n_modes=settings.n_modes)
    return sys, sys.modal_excitation() * excitation_scale


def _closed_loop(label: str, sys: ModalLti, x0: np.ndarray,
                 settings: ControlSettings) -> MetricReport:
    C = sys.system.C
    Q = sys.energy_weight() if settings.state_weight == "energy" else C.T @ C
    R = settings.rho * np.eye(sys.system.n_inputs)
    K = solve_lqr(sys, Q, R).K
    return metric_report(label, sys, simulate_closed_loop(sys, K, x0, settings.horizon), settings)


def compare_configs(mode_set: ModeSet, optimal: Sequence[int], suboptimal: Sequence[int],
                    settings: Optional[ControlSettings] = None, excitation_scale: float = 1.0,
                    workers: Optional[int] = None) -> Comparison:
    """
    Evaluate optimal, suboptimal and open-loop configurations under identical Q, R,
    excitation and horizon.

    Args:
        mode_set: Unloaded modes.
        optimal, suboptimal: Placements (mesh indices, collocated pairs).
        settings: Control settings.
        excitation_scale: Multiplier on the modal-amplitude initial condition (0 gives zero
            trajectories).
        workers: Threads for the two closed-loop evaluations.
    """
    settings = settings or ControlSettings()
    opt_sys, opt_x0 = _placement_model(mode_set, optimal, settings, excitation_scale)
    sub_sys, sub_x0 = _placement_model(mode_set, suboptimal, settings, excitation_scale)

    jobs = [("optimal", opt_sys, opt_x0), ("suboptimal", sub_sys, sub_x0)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            closed = list(pool.map(lambda job: _closed_loop(*job, settings), jobs))
    else:
        closed = [_closed_loop(*job, settings) for job in jobs]

    open_loop = metric_report("open-loop", opt_sys,
                              simulate_closed_loop(opt_sys, None, opt_x0, settings.horizon),
                              settings)
    comparison = Comparison(closed[0], closed[1], open_loop)
    logger.info("control comparison orderings: %s", comparison.orderings())
    return comparison


def format_metric_table(comparison: Comparison) -> str:
    """Text table with one row per configuration and one column per aggregate metric."""
    header = ("Configuration", "Integrated PSD (sum)", "Overshoot % (avg)",
              "Settling time s (max)", "Control effort (sum)")
    rows = [header]
    for report in comparison.reports:
        rows.append((
            report.label,
            f"{report.total_psd:.6g}",
            f"{report.mean_overshoot:.3f}",
            report.settling_label(),
            f"{report.total_effort:.6g}",
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for index, row in enumerate(rows):
        lines.append(" | ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if index == 0:
            lines.append("-+-".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def trajectory_rows(comparison: Comparison) -> Tuple[List[str], List[List[float]]]:
    """Header and rows t, then y and u per channel for every configuration."""
    header = ["t"]
    columns = []
    t = comparison.optimal.trajectory.t
    for report in comparison.reports:
        tag = report.label.replace("-", "_")
        traj = report.trajectory
        for i, y in enumerate(traj.y):
            header.append(f"{tag}_y{i}")
            columns.append(y)
        for i, u in enumerate(traj.u):
            header.append(f"{tag}_u{i}")
            columns.append(u)
    rows = [[float(t[k])] + [float(c[k]) for c in columns] for k in range(t.size)]
    return header, rows


def psd_rows(comparison: Comparison,
             settings: Optional[ControlSettings] = None) -> Tuple[List[str], List[List[float]]]:
    """Header and rows freq_hz, then the PSD of every output channel of every configuration."""
    settings = settings or ControlSettings()
    header = ["freq_hz"]
    curves = []
    freq = None
    for report in comparison.reports:
        tag = report.label.replace("-", "_")
        for i, y in enumerate(report.trajectory.y):
            result = psd_variance(y, report.trajectory.dt, settings.segments, settings.window)
            freq = result.freq_hz
            header.append(f"{tag}_y{i}")
            curves.append(result.psd)
    rows = [[float(freq[k])] + [float(c[k]) for c in curves] for k in range(freq.size)]
    return header, rows
