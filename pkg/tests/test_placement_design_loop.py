"""
Test suite for dmdplace.placement.design_loop module.
"""
import dataclasses
import math

import pytest

from dmdplace.exceptions import ValidationError
from dmdplace.model import DEFAULT_MODES
from dmdplace.placement import (
    DesignTemplate, design_step, fixed_points, loaded_modes, run_design_loop,
    unloaded_iteration)


@pytest.fixture(scope="module")
def single_pair_template(toy_template):
    return dataclasses.replace(toy_template, n_a=1)


class TestDesignTemplate:
    def test_defaults(self):
        template = DesignTemplate()
        assert template.n_nodes == 51
        assert template.candidates == tuple(range(1, 51))
        assert template.evaluator == "modal"

    def test_bounds(self):
        template = DesignTemplate(n_candidates=10, lower=3, upper=5)
        assert template.feasible_candidates == (3, 4, 5)

    def test_unknown_evaluator(self):
        with pytest.raises(ValidationError):
            DesignTemplate(evaluator="greedy")


class TestDesignStep:
    def test_zero_mass_keeps_unloaded_optimum(self, three_modes, toy_template):
        naive = unloaded_iteration(three_modes, toy_template)
        step = design_step(three_modes, naive.placement, 0.0, toy_template)
        assert step.placement == naive.placement
        assert step.loaded_at == naive.placement
        assert step.frequencies_hz == pytest.approx(naive.frequencies_hz)

    def test_mass_lowers_frequencies(self, three_modes, toy_template):
        corrected = loaded_modes(three_modes, (4, 5), 0.05, toy_template)
        for loaded, mode in zip(corrected.damped_frequencies_hz, three_modes.modes):
            assert loaded < mode.freq_hz

    def test_negative_mass(self, three_modes, toy_template):
        with pytest.raises(ValidationError):
            design_step(three_modes, (5,), -0.1, toy_template)

    def test_record(self, three_modes, toy_template):
        step = design_step(three_modes, (2, 5), 0.05, toy_template, index=3)
        payload = step.to_dict()
        assert payload["index"] == 3
        assert payload["loaded_at"] == [2, 5]
        assert payload["dmd_rank"] == 6
        assert len(payload["eigenvalues"]) == 6
        assert len(payload["frequencies_hz"]) == 3


class TestRunDesignLoop:
    def test_zero_mass_converges_immediately(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.0, template=toy_template)
        assert result.converged
        assert not result.cycle
        assert len(result.history) == 2
        assert result.final_placement == result.naive_placement

    def test_history_indices(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.05, template=toy_template)
        assert [it.index for it in result.history] == list(range(len(result.history)))
        assert result.history[0].loaded_at == ()
        for previous, current in zip(result.history, result.history[1:]):
            assert current.loaded_at == previous.placement

    def test_terminates(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.3, template=toy_template, max_iters=4)
        assert 2 <= len(result.history) <= 5
        assert not (result.converged and result.cycle)
        if result.converged:
            assert result.history[-1].placement == result.history[-2].placement
        elif result.cycle:
            earlier = [it.placement for it in result.history[:-2]]
            assert result.final_placement in earlier
        else:
            assert len(result.history) == 5

    def test_small_candidate_set_always_settles(self, three_modes, toy_template):
        # Ten pair placements and twenty steps: a repeat is unavoidable.
        result = run_design_loop(three_modes, pair_mass=0.3, template=toy_template)
        assert result.converged != result.cycle
        assert all(math.isfinite(it.cost) for it in result.history)

    def test_small_mass_converges(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.05, template=toy_template)
        assert result.converged
        assert not result.cycle
        assert all(math.isfinite(it.cost) for it in result.history)
        assert result.history[-1].placement == result.history[-2].placement

    def test_fixed_point_is_stable(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.05, template=toy_template)
        assert result.converged
        again = design_step(three_modes, result.final_placement, 0.05, toy_template)
        assert again.placement == result.final_placement

    def test_agrees_with_fixed_point_enumeration(self, three_modes, single_pair_template):
        points = fixed_points(three_modes, 0.1, single_pair_template)
        result = run_design_loop(three_modes, pair_mass=0.1, template=single_pair_template)
        assert result.converged != result.cycle
        assert result.converged == (result.final_placement in points)
        for point in points:
            step = design_step(three_modes, point, 0.1, single_pair_template)
            assert step.placement == point

    def test_max_iters_one(self, three_modes, toy_template):
        result = run_design_loop(three_modes, pair_mass=0.05, template=toy_template, max_iters=1)
        assert len(result.history) == 2

    def test_invalid_max_iters(self, three_modes, toy_template):
        with pytest.raises(ValidationError):
            run_design_loop(three_modes, template=toy_template, max_iters=0)

    def test_to_dict(self, three_modes, toy_template):
        payload = run_design_loop(three_modes, pair_mass=0.0, template=toy_template).to_dict()
        assert payload["summary"]["iterations"] == 2
        assert payload["summary"]["converged"] is True
        assert payload["summary"]["final_placement"] == payload["summary"]["naive_placement"]

    @pytest.mark.slow
    def test_default_mass_moves_placement(self):
        result = run_design_loop(DEFAULT_MODES, pair_mass=0.05)
        assert result.converged
        assert 50 in result.naive_placement
        assert result.final_placement != result.naive_placement
