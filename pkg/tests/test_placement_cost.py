"""
Test suite for dmdplace.placement.cost module.

Covers the reciprocal singular-value cost, PlacementProblem validation and agreement of the
dense and modal Hankel evaluators.
"""
import math

import numpy as np
import pytest
from scipy import linalg

from dmdplace.exceptions import RangeError, RequiredValueError, ValidationError
from dmdplace.identification import build_output_hankel
from dmdplace.model import simulate
from dmdplace.placement import (
    DenseHankelEvaluator, ModalHankelEvaluator, PlacementProblem, identify_and_place,
    placement_cost)


@pytest.fixture(scope="module")
def toy_run(three_modes, toy_template):
    data = simulate(three_modes, toy_template.n_nodes, toy_template.dt, toy_template.t_final)
    return identify_and_place(data, toy_template)


class TestPlacementCost:
    def test_two_values(self):
        assert placement_cost([2.0, 1.0], 2) == pytest.approx(1.5)

    def test_uses_largest_values(self):
        assert placement_cost([0.5, 4.0, 2.0], 2) == pytest.approx(0.75)

    def test_scaling_halves_cost(self):
        sigma = np.array([5.0, 3.0, 1.0, 0.2])
        assert placement_cost(2.0 * sigma, 4) == pytest.approx(placement_cost(sigma, 4) / 2.0)

    def test_zero_value_gives_sentinel(self):
        assert math.isinf(placement_cost([3.0, 0.0], 2))

    def test_tiny_value_gives_sentinel(self):
        assert math.isinf(placement_cost([1.0, 1e-14], 2))

    def test_trailing_zero_ignored(self):
        assert placement_cost([3.0, 0.0], 1) == pytest.approx(1.0 / 3.0)

    def test_all_zero(self):
        assert math.isinf(placement_cost([0.0, 0.0], 1))

    def test_n_r_too_large(self):
        with pytest.raises(RangeError):
            placement_cost([1.0, 2.0], 3)

    def test_n_r_not_positive(self):
        with pytest.raises(ValidationError):
            placement_cost([1.0], 0)


class TestPlacementProblem:
    def test_candidates_sorted(self):
        problem = PlacementProblem(np.ones((4, 20)), (3, 1, 2), n_a=2, s=3)
        assert problem.candidates == (1, 2, 3)
        assert problem.n_t == 20
        assert problem.hankel_columns == 15

    def test_duplicate_candidates(self):
        with pytest.raises(ValidationError):
            PlacementProblem(np.ones((4, 20)), (1, 1, 2), n_a=1, s=3)

    def test_candidate_out_of_range(self):
        with pytest.raises(RangeError):
            PlacementProblem(np.ones((4, 20)), (1, 4), n_a=1, s=3)

    def test_empty_candidates(self):
        with pytest.raises(RequiredValueError):
            PlacementProblem(np.ones((4, 20)), (), n_a=1, s=3)

    def test_too_many_pairs(self):
        with pytest.raises(RangeError):
            PlacementProblem(np.ones((4, 20)), (1, 2), n_a=3, s=3)

    def test_depth_too_large(self):
        with pytest.raises(RangeError):
            PlacementProblem(np.ones((4, 20)), (1, 2), n_a=1, s=11)

    def test_bounds(self):
        problem = PlacementProblem(np.ones((6, 20)), range(1, 6), n_a=2, s=3, lower=2, upper=4)
        assert problem.feasible_candidates == (2, 3, 4)

    def test_bounds_reversed(self):
        with pytest.raises(RangeError):
            PlacementProblem(np.ones((6, 20)), range(1, 6), n_a=1, s=3, lower=4, upper=2)

    def test_bounds_limit_pairs(self):
        with pytest.raises(RangeError):
            PlacementProblem(np.ones((6, 20)), range(1, 6), n_a=2, s=3, lower=3, upper=3)

    def test_without(self):
        problem = PlacementProblem(np.ones((6, 20)), range(1, 6), n_a=2, s=3)
        assert problem.without((2, 5)).candidates == (1, 3, 4)

    def test_scaled(self):
        Y = np.arange(40.0).reshape(2, 20)
        problem = PlacementProblem(Y, (0, 1), n_a=1, s=3).scaled(3.0)
        assert np.allclose(problem.Y, 3.0 * Y)


class TestDenseHankelEvaluator:
    def test_matches_explicit_svd(self):
        rng = np.random.default_rng(0)
        problem = PlacementProblem(rng.standard_normal((4, 30)), (1, 2, 3), n_a=2, s=4, n_r=3)
        evaluator = DenseHankelEvaluator(problem)
        expected = linalg.svdvals(build_output_hankel(problem.Y, (1, 3), 4))
        assert np.allclose(evaluator.singular_values((1, 3)), expected)
        assert evaluator.cost((1, 3)) == pytest.approx(float(np.sum(1.0 / expected[:3])))

    def test_zero_row_sentinel(self):
        Y = np.zeros((2, 30))
        Y[1] = np.sin(np.arange(30))
        evaluator = DenseHankelEvaluator(PlacementProblem(Y, (0, 1), n_a=1, s=4, n_r=2))
        assert math.isinf(evaluator.cost((0,)))
        assert math.isfinite(evaluator.cost((1,)))


class TestModalHankelEvaluator:
    def test_agrees_with_dense(self, toy_run):
        dense = DenseHankelEvaluator(toy_run.problem)
        modal = ModalHankelEvaluator.for_problem(toy_run.model, toy_run.problem)
        for subset in [(1,), (5,), (2, 4), (4, 5)]:
            expected = dense.singular_values(subset)[:6]
            actual = modal.singular_values(subset)[:6]
            assert np.allclose(actual, expected, rtol=1e-6, atol=1e-9 * expected[0])
            assert modal.cost(subset) == pytest.approx(dense.cost(subset), rel=1e-6)

    def test_padded_length(self, toy_run):
        modal = ModalHankelEvaluator.for_problem(toy_run.model, toy_run.problem)
        s = toy_run.problem.s
        sigma = modal.singular_values((1, 2))
        assert sigma.size == min(2 * s, toy_run.problem.hankel_columns)
        assert np.all(np.diff(sigma) <= 1e-9 * sigma[0])

    def test_root_row_degenerate(self, toy_run):
        modal = ModalHankelEvaluator.for_problem(toy_run.model, toy_run.problem)
        assert math.isinf(modal.cost((0,)))

    def test_empty_subset(self, toy_run):
        modal = ModalHankelEvaluator.for_problem(toy_run.model, toy_run.problem)
        with pytest.raises(RequiredValueError):
            modal.singular_values(())

    def test_depth_too_large(self, toy_run):
        with pytest.raises(RangeError):
            ModalHankelEvaluator(toy_run.model, s=600, n_t=1000)
