"""
search.py

Exhaustive subset search for sensor/actuator placement.

Every size-n_a subset of the admissible candidates is scored and the global minimizer is
returned; ties go to the lexicographically smallest subset. Subset scores are independent, so
they may be computed on a thread pool; results are always reduced in subset order.

Purpose:
- Run the exhaustive placement search under a subset budget.
- Produce the per-candidate cost landscape for pair placements.
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .cost import DenseHankelEvaluator, HankelEvaluator, PlacementProblem
from ..exceptions import RangeError
from ..validators import SubsetBudgetValidator

logger = logging.getLogger(__name__)

SUBSET_BUDGET = 10 ** 6


@dataclass(frozen=True)
class LandscapeEntry:
    """Best partner of one outer candidate in a pair placement."""

    outer_index: int
    partner_index: int
    cost: float


@dataclass(frozen=True)
class PlacementResult:
    """
    Outcome of an exhaustive search.

    Attributes:
        best_subset: Sorted winning candidate indices.
        best_cost: J of the winning subset (math.inf if every subset is degenerate).
        landscape: Per-outer-candidate entries (pair placements only).
        evaluations: Number of subsets scored.
    """

    best_subset: Tuple[int, ...]
    best_cost: float
    landscape: Tuple[LandscapeEntry, ...] = ()
    evaluations: int = 0
    n_a: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "best_subset": list(self.best_subset),
            "best_cost": self.best_cost,
            "evaluations": self.evaluations,
            "landscape": [
                {"outer_index": e.outer_index, "partner_index": e.partner_index, "cost": e.cost}
                for e in self.landscape
            ],
        }


def _score(evaluator: HankelEvaluator, subsets: Sequence[Tuple[int, ...]],
           workers: Optional[int]) -> List[float]:
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluator.cost, subsets))
    return [evaluator.cost(subset) for subset in subsets]


def _landscape(candidates: Sequence[int], costs: Dict[Tuple[int, int], float]) -> Tuple[LandscapeEntry, ...]:
    entries = []
    for i in candidates:
        best_partner, best_cost = None, math.inf
        for j in candidates:
            if j == i:
                continue
            cost = costs[(min(i, j), max(i, j))]
            if best_partner is None or cost < best_cost:
                best_partner, best_cost = j, cost
        entries.append(LandscapeEntry(i, best_partner, best_cost))
    return tuple(entries)


def exhaustive_search(problem: PlacementProblem, evaluator: Optional[HankelEvaluator] = None,
                      workers: Optional[int] = None, budget: int = SUBSET_BUDGET) -> PlacementResult:
    """
    Score every size-n_a subset of the admissible candidates.

    Args:
        problem: Search definition.
        evaluator: Singular-value source (default: dense Hankel SVD on problem.Y).
        workers: Thread count for subset scoring; None or 1 runs inline.
        budget: Maximum number of subsets.

    Returns:
        PlacementResult; ``landscape`` is filled for n_a = 2.

    Raises:
        SubsetBudgetExceeded: If C(|candidates|, n_a) > budget.
    """
    candidates = problem.feasible_candidates
    SubsetBudgetValidator(budget=budget).validate((len(candidates), problem.n_a))
    evaluator = evaluator or DenseHankelEvaluator(problem)

    subsets = list(itertools.combinations(candidates, problem.n_a))
    costs = _score(evaluator, subsets, workers)

    best_index = 0
    for index, cost in enumerate(costs):
        if cost < costs[best_index]:
            best_index = index
    best_cost = costs[best_index]
    if math.isinf(best_cost):
        logger.warning("every one of %d subsets is degenerate (infinite cost)", len(subsets))

    landscape: Tuple[LandscapeEntry, ...] = ()
    if problem.n_a == 2 and len(candidates) >= 2:
        landscape = _landscape(candidates, dict(zip(subsets, costs)))

    logger.debug("exhaustive search over %d subsets -> %s (J=%.6g)",
                 len(subsets), subsets[best_index], best_cost)
    return PlacementResult(subsets[best_index], best_cost, landscape, len(subsets), problem.n_a)


def cost_landscape(problem: PlacementProblem, evaluator: Optional[HankelEvaluator] = None,
                   workers: Optional[int] = None) -> Tuple[LandscapeEntry, ...]:
    """
    Best partner and pair cost for every outer candidate of a pair placement.

    Raises:
        RangeError: If problem.n_a is not 2.
    """
    if problem.n_a != 2:
        raise RangeError(2, 2, actual_value=problem.n_a, field="n_a",
                         message="The cost landscape is defined for pair placements (n_a = 2)")
    return exhaustive_search(problem, evaluator, workers).landscape
