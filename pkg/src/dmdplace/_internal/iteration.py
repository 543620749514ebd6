"""
iteration.py

Internal iteration bookkeeping for fixed-point loops.

Provides IterationTracker for counting iterations against a budget and remembering visited
states so that cycles are detected. Used by the placement design loop.

Purpose:
- Keep loop counters and termination state out of the algorithm code.
- Guarantee termination: fixed point, revisited state or exhausted budget.
"""

from typing import Hashable, List


class IterationTracker:
    """
    Tracker for iteration counts and visited states.

    Records every state handed to ``visit`` in order; a state seen before marks a cycle.
    """

    def __init__(self, max_iters: int = 20):
        """
        Initialize iteration tracker.

        Args:
            max_iters: Maximum number of iterations after the initial state.
        """
        self.max_iters = max_iters
        self.iterations = 0
        self.visited: List[Hashable] = []

    def increment(self) -> None:
        """Increment iteration counter."""
        self.iterations += 1

    def can_continue(self) -> bool:
        return self.iterations < self.max_iters

    def visit(self, state: Hashable) -> None:
        """Record a state."""
        self.visited.append(state)

    def is_fixed_point(self) -> bool:
        """True if the last two recorded states are equal."""
        return len(self.visited) >= 2 and self.visited[-1] == self.visited[-2]

    def is_cycle(self) -> bool:
        """True if the last state repeats an earlier, non-adjacent one."""
        if len(self.visited) < 3:
            return False
        last = self.visited[-1]
        return last != self.visited[-2] and last in self.visited[:-2]
