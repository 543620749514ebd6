"""
cost.py

Reciprocal Hankel-singular-value placement cost and the evaluators that supply the
singular values of a candidate subset.

    J(subset) = sum_{i <= n_r} 1 / sigma_i(H(subset))

A subset whose Hankel matrix cannot reach n_r nonzero singular values gets an infinite cost,
so it ranks last without stopping a sweep.

Evaluators:
- DenseHankelEvaluator: builds the output-data Hankel of the subset and takes its SVD.
- ModalHankelEvaluator: exact singular values of the Hankel of a DMD reconstruction, obtained
  from its exponential structure without forming the Hankel matrix.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..exceptions import RangeError, RequiredValueError, ValidationError
from ..identification.dmd import DmdModel
from ..identification.hankel import build_output_hankel
from ..validators import IntegerValidator

logger = logging.getLogger(__name__)

SENTINEL_FLOOR = 1e-12


def placement_cost(sigma: Sequence[float], n_r: int) -> float:
    """
    Sum of reciprocals of the n_r largest singular values.

    Args:
        sigma: Singular values (any order).
        n_r: Number of leading values, 1 <= n_r <= len(sigma).

    Returns:
        J, or math.inf if any of the leading n_r values is at or below
        max(sigma_1 * 1e-12, smallest positive float).
    """
    IntegerValidator(positive_only=True, field_name="n_r").validate(n_r)
    values = np.sort(np.asarray(sigma, dtype=float).ravel())[::-1]
    if n_r > values.size:
        raise RangeError(max_value=values.size, actual_value=n_r, field="n_r",
                         message=f"n_r = {n_r} exceeds the {values.size} available singular values")
    leading = values[:n_r]
    floor = max(values[0] * SENTINEL_FLOOR, np.finfo(float).tiny)
    if np.any(leading <= floor):
        return math.inf
    return float(np.sum(1.0 / leading))


@dataclass(frozen=True)
class PlacementProblem:
    """
    Placement search definition.

    Attributes:
        Y: Output matrix (rows indexed by candidate index, one column per sample).
        candidates: Candidate row indices.
        n_a: Number of sensor/actuator pairs to place.
        s: Hankel depth.
        n_r: Number of singular values in the cost.
        lower, upper: Optional inclusive index bounds on admissible candidates.
    """

    Y: np.ndarray = field(repr=False)
    candidates: Tuple[int, ...]
    n_a: int
    s: int
    n_r: int = 6
    lower: Optional[int] = None
    upper: Optional[int] = None

    def __post_init__(self):
        Y = np.atleast_2d(np.asarray(self.Y, dtype=float))
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "candidates", tuple(sorted(int(c) for c in self.candidates)))
        IntegerValidator(positive_only=True, field_name="n_a").validate(self.n_a)
        IntegerValidator(positive_only=True, field_name="s").validate(self.s)
        IntegerValidator(positive_only=True, field_name="n_r").validate(self.n_r)
        if not self.candidates:
            raise RequiredValueError(field="candidates")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValidationError("Candidates must be distinct", field="candidates")
        if self.candidates[0] < 0 or self.candidates[-1] >= Y.shape[0]:
            raise RangeError(0, Y.shape[0] - 1, actual_value=list(self.candidates), field="candidates")
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise RangeError(message=f"Lower bound {self.lower} exceeds upper bound {self.upper}",
                             field="lower", actual_value=self.lower, max_value=self.upper)
        if self.n_a > len(self.feasible_candidates):
            raise RangeError(max_value=len(self.feasible_candidates), actual_value=self.n_a,
                             field="n_a",
                             message=f"Cannot place {self.n_a} pairs on "
                                     f"{len(self.feasible_candidates)} admissible candidates")
        if self.n_t < 2 * self.s:
            raise RangeError(min_value=2 * self.s, actual_value=self.n_t, field="n_t",
                             message=f"n_t = {self.n_t} is too short for Hankel depth s = {self.s}")

    @property
    def n_t(self) -> int:
        return self.Y.shape[1]

    @property
    def hankel_columns(self) -> int:
        return self.n_t - 2 * self.s + 1

    @property
    def feasible_candidates(self) -> Tuple[int, ...]:
        low = -math.inf if self.lower is None else self.lower
        high = math.inf if self.upper is None else self.upper
        return tuple(c for c in self.candidates if low <= c <= high)

    def without(self, removed: Sequence[int]) -> "PlacementProblem":
        """Same problem with some candidates removed."""
        kept = tuple(c for c in self.candidates if c not in set(removed))
        return PlacementProblem(self.Y, kept, self.n_a, self.s, self.n_r, self.lower, self.upper)

    def scaled(self, factor: float) -> "PlacementProblem":
        return PlacementProblem(self.Y * factor, self.candidates, self.n_a, self.s, self.n_r,
                                self.lower, self.upper)


class HankelEvaluator(ABC):
    """Source of Hankel singular values for a candidate subset."""

    def __init__(self, n_r: int):
        self.n_r = n_r

    @abstractmethod
    def singular_values(self, subset: Sequence[int]) -> np.ndarray:
        """Singular values of the subset's output Hankel, nonincreasing."""

    def cost(self, subset: Sequence[int]) -> float:
        return placement_cost(self.singular_values(subset), self.n_r)


class DenseHankelEvaluator(HankelEvaluator):
    """Builds each subset's Hankel matrix and takes its singular values."""

    def __init__(self, problem: PlacementProblem):
        super().__init__(problem.n_r)
        self.problem = problem

    def singular_values(self, subset: Sequence[int]) -> np.ndarray:
        H = build_output_hankel(self.problem.Y, subset, self.problem.s)
        return linalg.svdvals(H)


class ModalHankelEvaluator(HankelEvaluator):
    """
    Exact Hankel singular values of a DMD reconstruction.

    The reconstruction y_i(t) = Re sum_j phi_ij b_j lambda_j^t is a sum of exponentials, so
    the subset Hankel factors as H = G V with G = [P D_i]_i and V[k, c] = mu_k^c. Its nonzero
    singular values are the square roots of the eigenvalues of R (G^H G) R^H, where
    V^H = Q R, and G^H G = sum_i (d_i^* d_i^T) o (P^H P).
    """

    def __init__(self, model: DmdModel, s: int, n_t: int, n_r: int = 6,
                 rows: Optional[Sequence[int]] = None):
        super().__init__(n_r)
        IntegerValidator(positive_only=True, field_name="s").validate(s)
        if n_t < 2 * s:
            raise RangeError(min_value=2 * s, actual_value=n_t, field="n_t")
        self.s = s
        self.n_t = n_t
        self.columns = n_t - 2 * s + 1
        rows = np.arange(model.n_nodes) if rows is None else np.asarray(rows, dtype=int)

        coeffs = model.modes[rows] * model.amplitudes
        exponents, weights = self._merge_exponentials(
            np.concatenate([model.eigvals, np.conj(model.eigvals)]),
            np.hstack([coeffs / 2.0, np.conj(coeffs) / 2.0]),
        )
        self.exponents = exponents
        self.weights = weights

        P = np.power(exponents[None, :], np.arange(s)[:, None])
        self._row_gram = P.conj().T @ P
        V_h = np.power(np.conj(exponents)[None, :], np.arange(self.columns)[:, None])
        self._column_factor = np.linalg.qr(V_h, mode="r")

    @staticmethod
    def _merge_exponentials(exponents: np.ndarray, weights: np.ndarray):
        unique = []
        merged = []
        for k, mu in enumerate(exponents):
            for u, existing in enumerate(unique):
                if abs(mu - existing) <= 1e-10 * max(abs(mu), 1.0):
                    merged[u] = merged[u] + weights[:, k]
                    break
            else:
                unique.append(mu)
                merged.append(weights[:, k].copy())
        return np.array(unique), np.column_stack(merged)

    @classmethod
    def for_problem(cls, model: DmdModel, problem: PlacementProblem) -> "ModalHankelEvaluator":
        return cls(model, problem.s, problem.n_t, problem.n_r)

    def singular_values(self, subset: Sequence[int]) -> np.ndarray:
        rows = list(subset)
        if not rows:
            raise RequiredValueError(field="subset")
        gram = np.zeros_like(self._row_gram)
        for i in rows:
            d = self.weights[i]
            gram += np.outer(np.conj(d), d) * self._row_gram
        R = self._column_factor
        M = R @ gram @ R.conj().T
        eig = linalg.eigvalsh(0.5 * (M + M.conj().T))
        sigma = np.sqrt(np.clip(eig, 0.0, None))[::-1]
        size = min(self.s * len(rows), self.columns)
        if size > sigma.size:
            sigma = np.concatenate([sigma, np.zeros(size - sigma.size)])
        return sigma[:size]
