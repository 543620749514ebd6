"""
Test suite for dmdplace.config module.
"""
import dataclasses
import json

import pytest

from dmdplace.config import ExperimentConfig, ExperimentConfigValidator, validate_config
from dmdplace.exceptions import (
    ConfigFileError, MultiValidationError, NyquistError, SubsetBudgetExceeded, ValidationError)
from dmdplace.model import DEFAULT_MODES


def _fields(error):
    return {e.field for e in error.errors}


class TestDefaults:
    def test_reference_scenario(self):
        config = ExperimentConfig()
        assert config.simulation.n_candidates == 50
        assert config.simulation.dt == 1.0 / 4000.0
        assert config.n_t == 8000
        assert (config.dmd.q, config.dmd.rank, config.dmd.stride) == (2, 6, 10)
        assert config.loop.pair_mass == 0.05
        assert config.loop.max_iters == 20
        assert config.control.rho == 1e-2
        assert config.mode_set() == DEFAULT_MODES

    def test_defaults_valid(self):
        assert validate_config(ExperimentConfig())
        assert ExperimentConfigValidator().validate(ExperimentConfig())

    def test_empty_document(self):
        assert ExperimentConfig.from_dict({}) == ExperimentConfig()

    def test_round_trip(self):
        config = ExperimentConfig.from_dict({"simulation": {"t_final": 1.0}, "seed": 4})
        assert ExperimentConfig.from_dict(json.loads(json.dumps(config.to_dict()))) == config

    def test_design_template(self):
        template = ExperimentConfig.from_dict({"hankel": {"s": 100}}).design_template()
        assert template.s == 100
        assert template.n_candidates == 50
        assert template.evaluator == "modal"

    def test_control_settings(self):
        settings = ExperimentConfig().control_settings()
        assert settings.pair_mass == 0.05
        assert settings.horizon == 10.0
        assert settings.state_weight == "energy"


class TestOverrides:
    def test_cli_values(self):
        config = ExperimentConfig().with_overrides(output_dir="run", seed=3, max_iters=4,
                                                   pair_mass=0.0)
        assert config.output_dir == "run"
        assert config.seed == 3
        assert config.loop == dataclasses.replace(config.loop, max_iters=4, pair_mass=0.0)

    def test_none_keeps_values(self):
        assert ExperimentConfig().with_overrides() == ExperimentConfig()


class TestValidation:
    def test_unknown_keys(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"colour": 1, "dmd": {"depth": 2}})
        assert _fields(exc.value) == {"colour", "dmd.depth"}

    def test_errors_aggregated(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"dmd": {"q": 0}, "control": {"rho": -1.0},
                                        "placement": {"evaluator": "greedy"}})
        assert _fields(exc.value) == {"dmd.q", "control.rho", "placement.evaluator"}

    def test_unknown_state_weight(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"control": {"state_weight": "effort"}})
        assert _fields(exc.value) == {"control.state_weight"}

    def test_schema_version(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"schema_version": 2})
        assert "schema_version" in _fields(exc.value)

    def test_not_an_object(self):
        with pytest.raises(ValidationError):
            ExperimentConfig.from_dict([1, 2])

    def test_nyquist(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"simulation": {"dt": 0.01}})
        assert any(isinstance(e, NyquistError) for e in exc.value.errors)
        assert "Nyquist" in str(exc.value)

    def test_three_modes_coarse_grid(self):
        rows = DEFAULT_MODES.dominant(3).to_rows()
        config = ExperimentConfig.from_dict({"modes": rows, "simulation": {"dt": 0.001},
                                             "dmd": {"stride": 1}})
        assert config.mode_set().n_modes == 3
        assert config.design_template().stride == 1

    def test_stride_too_coarse_for_identified_modes(self):
        rows = DEFAULT_MODES.dominant(3).to_rows()
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"modes": rows, "simulation": {"dt": 0.001}})
        stride_errors = [e for e in exc.value.errors if e.field == "dmd.stride"]
        assert len(stride_errors) == 1
        assert isinstance(stride_errors[0], NyquistError)

    def test_stride_ignores_modes_beyond_rank(self):
        config = ExperimentConfig.from_dict({"dmd": {"rank": 4, "stride": 20}})
        assert config.dmd.stride == 20

    def test_stride_leaves_too_few_snapshots(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"dmd": {"stride": 4000},
                                        "modes": DEFAULT_MODES.dominant(1).to_rows(),
                                        "control": {"n_modes": 1}})
        assert {"dmd.q", "dmd.rank"} <= _fields(exc.value)

    def test_rank_too_large(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"dmd": {"rank": 200}})
        assert "dmd.rank" in _fields(exc.value)

    def test_hankel_depth_too_large(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"hankel": {"s": 4001}})
        assert "hankel.s" in _fields(exc.value)

    def test_bounds_reversed(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"placement": {"lower": 30, "upper": 10}})
        assert "placement.lower" in _fields(exc.value)

    def test_subset_budget(self):
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"placement": {"n_a": 6}})
        assert any(isinstance(e, SubsetBudgetExceeded) for e in exc.value.errors)

    def test_control_modes(self):
        rows = DEFAULT_MODES.dominant(2).to_rows()
        with pytest.raises(MultiValidationError) as exc:
            ExperimentConfig.from_dict({"modes": rows})
        assert "control.n_modes" in _fields(exc.value)

    def test_bad_mode_rows(self):
        with pytest.raises(MultiValidationError):
            ExperimentConfig.from_dict({"modes": [{"lambda_const": 1.0}]})

    def test_negative_pair_mass_override(self):
        with pytest.raises(MultiValidationError):
            validate_config(ExperimentConfig().with_overrides(pair_mass=-1.0))

    def test_validator_rejects_other_types(self):
        with pytest.raises(ValidationError):
            ExperimentConfigValidator().validate({})


class TestConfigFile:
    def test_load(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"loop": {"max_iters": 3}}), encoding="utf-8")
        assert ExperimentConfig.from_json_file(path).loop.max_iters == 3

    def test_missing(self, tmp_path):
        with pytest.raises(ConfigFileError):
            ExperimentConfig.from_json_file(tmp_path / "none.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigFileError):
            ExperimentConfig.from_json_file(path)
