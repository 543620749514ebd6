"""
design_loop.py

Iterative placement against mass-loaded dynamics.

Each iteration attaches a sensor/actuator pair mass at every node of the previous placement,
corrects the beam modes for the added mass, regenerates snapshot data for the loaded beam,
refits DMD and re-runs the exhaustive placement search. The loop stops at a fixed point,
at a revisited placement (cycle) or when the iteration budget runs out; non-convergence is
reported in the result, never raised.

Purpose:
- Chain identification and placement into one reusable step.
- Run the placement/mass fixed-point iteration with a full audit history.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .cost import DenseHankelEvaluator, ModalHankelEvaluator, PlacementProblem
from .search import LandscapeEntry, PlacementResult, exhaustive_search
from .._internal.iteration import IterationTracker
from ..exceptions import ValidationError
from ..identification.dmd import DmdModel, build_shifted_snapshots, fit_dmd, reconstruct
from ..identification.hankel import choose_hankel_depth
from ..model.anc import CorrectedModes, MassLoad, corrected_modes
from ..model.truth import ModeSet, SnapshotData, simulate, simulate_loaded
from ..validators import FloatValidator, IntegerValidator

logger = logging.getLogger(__name__)

REPORTED_MODES = 3


@dataclass(frozen=True)
class DesignTemplate:
    """
    Fixed settings shared by every identification/placement step.

    Attributes:
        n_candidates: Mesh nodes besides the clamped root; candidates are nodes 1..n_candidates.
        dt, t_final: Snapshot sampling.
        q, rank: DMD stacking depth and truncation rank.
        stride: Snapshot decimation for the DMD fit.
        n_a, n_r: Pairs to place and singular values in the cost.
        s: Hankel depth, or None to derive it from the reconstruction.
        lower, upper: Optional inclusive candidate-index bounds.
        workers: Threads for subset scoring.
        evaluator: ``"modal"`` (exact low-rank) or ``"dense"`` (Hankel SVD).
    """

    n_candidates: int = 50
    dt: float = 1.0 / 4000.0
    t_final: float = 2.0
    q: int = 2
    rank: int = 6
    stride: int = 10
    n_a: int = 2
    n_r: int = 6
    s: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    workers: Optional[int] = None
    evaluator: str = "modal"

    def __post_init__(self):
        IntegerValidator(positive_only=True, field_name="n_candidates").validate(self.n_candidates)
        IntegerValidator(positive_only=True, field_name="stride").validate(self.stride)
        if self.evaluator not in ("modal", "dense"):
            raise ValidationError(f"Unknown evaluator '{self.evaluator}'", field="evaluator",
                                  value=self.evaluator)

    @property
    def n_nodes(self) -> int:
        return self.n_candidates + 1

    @property
    def candidates(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n_nodes))

    @property
    def feasible_candidates(self) -> Tuple[int, ...]:
        low = 1 if self.lower is None else self.lower
        high = self.n_candidates if self.upper is None else self.upper
        return tuple(c for c in self.candidates if low <= c <= high)


@dataclass(frozen=True)
class PlacementRun:
    """Identification and placement outputs of one snapshot set."""

    data: SnapshotData = field(repr=False)
    model: DmdModel = field(repr=False)
    problem: PlacementProblem = field(repr=False)
    result: PlacementResult


def identify_and_place(data: SnapshotData, template: DesignTemplate) -> PlacementRun:
    """Fit DMD, reconstruct every node, choose the Hankel depth and search placements."""
    model = fit_dmd(build_shifted_snapshots(data, template.q, template.stride), template.rank)
    Y = reconstruct(model)
    candidates = template.candidates
    s = template.s
    if s is None:
        s = choose_hankel_depth(Y[list(candidates)], data.dt)
    problem = PlacementProblem(Y, candidates, template.n_a, s, template.n_r,
                               template.lower, template.upper)
    if template.evaluator == "modal":
        evaluator = ModalHankelEvaluator.for_problem(model, problem)
    else:
        evaluator = DenseHankelEvaluator(problem)
    result = exhaustive_search(problem, evaluator, template.workers)
    return PlacementRun(data, model, problem, result)


@dataclass(frozen=True)
class DesignIteration:
    """
    One loop iteration.

    Attributes:
        index: k; 0 is the unloaded optimum.
        placement: Placement chosen at this iteration.
        cost: Its J value.
        frequencies_hz: Damped frequencies of the first modes the placement was computed on.
        dmd_rank: DMD truncation rank.
        eigenvalues: DMD eigenvalues.
        hankel_depth: Hankel depth s used by the search.
        loaded_at: Placement whose masses loaded the beam (empty for k = 0).
    """

    index: int
    placement: Tuple[int, ...]
    cost: float
    frequencies_hz: Tuple[float, ...]
    dmd_rank: int
    eigenvalues: Tuple[complex, ...] = field(repr=False)
    hankel_depth: int
    loaded_at: Tuple[int, ...] = ()
    landscape: Tuple[LandscapeEntry, ...] = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "placement": list(self.placement),
            "cost": self.cost,
            "frequencies_hz": list(self.frequencies_hz),
            "dmd_rank": self.dmd_rank,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "hankel_depth": self.hankel_depth,
            "loaded_at": list(self.loaded_at),
        }


@dataclass(frozen=True)
class DesignResult:
    """
    Loop outcome.

    Attributes:
        history: Every iteration, starting with the unloaded optimum.
        converged: The last two placements are identical.
        cycle: The loop stopped at a placement visited earlier.
    """

    history: Tuple[DesignIteration, ...]
    converged: bool
    cycle: bool = False

    @property
    def final_placement(self) -> Tuple[int, ...]:
        return self.history[-1].placement

    @property
    def naive_placement(self) -> Tuple[int, ...]:
        return self.history[0].placement

    def to_dict(self) -> dict:
        return {
            "history": [it.to_dict() for it in self.history],
            "summary": {
                "iterations": len(self.history),
                "converged": self.converged,
                "cycle": self.cycle,
                "naive_placement": list(self.naive_placement),
                "final_placement": list(self.final_placement),
            },
        }


def _iteration(index: int, run: PlacementRun, frequencies_hz, loaded_at) -> DesignIteration:
    return DesignIteration(
        index=index,
        placement=run.result.best_subset,
        cost=run.result.best_cost,
        frequencies_hz=tuple(float(f) for f in frequencies_hz[:REPORTED_MODES]),
        dmd_rank=run.model.rank,
        eigenvalues=tuple(complex(z) for z in run.model.eigvals),
        hankel_depth=run.problem.s,
        loaded_at=tuple(loaded_at),
        landscape=run.result.landscape,
    )


def loaded_modes(mode_set: ModeSet, placement: Tuple[int, ...], pair_mass: float,
                 template: DesignTemplate) -> CorrectedModes:
    """Corrected modes with one pair mass at every placed node."""
    node_x = np.linspace(0.0, mode_set.beam_length, template.n_nodes)
    return corrected_modes(mode_set, MassLoad.at_nodes(node_x, placement, pair_mass))


def design_step(mode_set: ModeSet, placement: Tuple[int, ...], pair_mass: float,
                template: DesignTemplate, index: int = 1) -> DesignIteration:
    """
    Re-optimize the placement for a beam loaded at ``placement``.

    A placement is a fixed point of the loop when design_step returns it unchanged.
    """
    FloatValidator(field_name="pair_mass").validate(pair_mass)
    corrected = loaded_modes(mode_set, placement, pair_mass, template)
    data = simulate_loaded(corrected, template.n_nodes, template.dt, template.t_final)
    run = identify_and_place(data, template)
    return _iteration(index, run, corrected.damped_frequencies_hz, placement)


def unloaded_iteration(mode_set: ModeSet, template: DesignTemplate) -> DesignIteration:
    """Iteration 0: the naive optimum of the unloaded beam."""
    data = simulate(mode_set, template.n_nodes, template.dt, template.t_final)
    run = identify_and_place(data, template)
    return _iteration(0, run, [m.freq_hz for m in mode_set.modes], ())


def run_design_loop(mode_set: ModeSet, pair_mass: float = 0.05,
                    template: Optional[DesignTemplate] = None, max_iters: int = 20) -> DesignResult:
    """
    Iterate placement against the mass-loaded beam until the placement repeats.

    Args:
        mode_set: Unloaded modes.
        pair_mass: Mass ratio of one sensor/actuator pair.
        template: Identification and search settings.
        max_iters: Maximum number of loaded iterations after the unloaded optimum.

    Returns:
        DesignResult with the full history.
    """
    template = template or DesignTemplate()
    IntegerValidator(positive_only=True, field_name="max_iters").validate(max_iters)
    FloatValidator(field_name="pair_mass").validate(pair_mass)

    tracker = IterationTracker(max_iters)
    history: List[DesignIteration] = [unloaded_iteration(mode_set, template)]
    tracker.visit(history[0].placement)
    logger.info("iteration 0: unloaded optimum %s (J=%.6g)", history[0].placement, history[0].cost)

    converged = cycle = False
    while tracker.can_continue():
        tracker.increment()
        step = design_step(mode_set, history[-1].placement, pair_mass, template, tracker.iterations)
        history.append(step)
        tracker.visit(step.placement)
        logger.info("iteration %d: loaded at %s -> %s (J=%.6g)",
                    step.index, step.loaded_at, step.placement, step.cost)
        if tracker.is_fixed_point():
            converged = True
            break
        if tracker.is_cycle():
            cycle = True
            logger.warning("placement %s revisited; stopping without convergence", step.placement)
            break

    if not converged and not cycle:
        logger.warning("no fixed point within %d iterations", max_iters)
    return DesignResult(tuple(history), converged, cycle)


def fixed_points(mode_set: ModeSet, pair_mass: float,
                 template: DesignTemplate) -> List[Tuple[int, ...]]:
    """
    Every admissible placement that the loop maps to itself.

    Enumerates all placements; meant for small candidate sets.
    """
    points = []
    for placement in itertools.combinations(template.feasible_candidates, template.n_a):
        if design_step(mode_set, placement, pair_mass, template).placement == placement:
            points.append(placement)
    return points
