"""
config.py

Experiment configuration for the dmdplace pipeline.

A configuration is one JSON document (schema_version 1). Every key is optional and falls back
to the default scenario: the ten-mode beam table, a 50-candidate mesh sampled at 4 kHz for
2 s, DMD with q = 2 and r = 6 fitted on every tenth snapshot, pair placement with six
singular values, pair mass ratio 0.05 and LQR evaluation over 10 s. Unknown keys are rejected.

Purpose:
- Load, override and serialize configurations.
- Check every downstream precondition before a stage runs, reporting all violations at once.
"""

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from .control.evaluation import ControlSettings
from .exceptions import (
    ConfigFileError, MultiValidationError, NyquistError, RangeError, ValidationError)
from .model.truth import DEFAULT_MODES, ModeSet, sample_count
from .placement.design_loop import DesignTemplate
from .validators import (
    CompositeValidator,
    FieldMapValidator,
    FloatValidator,
    IntegerValidator,
    ModeTableValidator,
    RangeValidator,
    SamplingValidator,
    SubsetBudgetValidator,
)
from .validators.core import BaseValidator

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SimulationConfig:
    n_candidates: int = 50
    beam_length: float = 1.0
    dt: float = 1.0 / 4000.0
    t_final: float = 2.0


@dataclass(frozen=True)
class DmdConfig:
    q: int = 2
    rank: int = 6
    stride: int = 10


@dataclass(frozen=True)
class HankelConfig:
    s: Optional[int] = None


@dataclass(frozen=True)
class PlacementConfig:
    n_a: int = 2
    n_r: int = 6
    lower: Optional[int] = None
    upper: Optional[int] = None
    workers: Optional[int] = None
    evaluator: str = "modal"


@dataclass(frozen=True)
class LoopConfig:
    pair_mass: float = 0.05
    max_iters: int = 20


@dataclass(frozen=True)
class ControlConfig:
    rho: float = 1e-2
    dt: float = 1e-3
    horizon: float = 10.0
    n_modes: int = 3
    settling_band: float = 0.02
    segments: int = 8
    window: str = "hann"
    state_weight: str = "energy"


@dataclass(frozen=True)
class GramianConfig:
    trials: int = 100
    n_max: int = 6
    tol: float = 1e-8
    workers: Optional[int] = None


SECTIONS = {
    "simulation": SimulationConfig,
    "dmd": DmdConfig,
    "hankel": HankelConfig,
    "placement": PlacementConfig,
    "loop": LoopConfig,
    "control": ControlConfig,
    "gramian": GramianConfig,
}


class _ChoiceValidator(BaseValidator):
    def __init__(self, choices, field_name=None):
        super().__init__(field_name=field_name)
        self.choices = tuple(choices)

    def validate(self, value: Any) -> bool:
        if value not in self.choices:
            self._raise_validation_error(
                f"{self._label()} must be one of {', '.join(self.choices)} (got {value!r})",
                value=value)
        return True


class _ModeRowsValidator(BaseValidator):
    def validate(self, value: Any) -> bool:
        if not isinstance(value, list) or not all(isinstance(row, dict) for row in value):
            self._raise_validation_error(f"{self._label()} must be a list of objects", value=value)
        return ModeTableValidator(field_name=self.field_name).validate(value)


class _StringValidator(BaseValidator):
    def validate(self, value: Any) -> bool:
        if not isinstance(value, str) or not value:
            self._raise_validation_error(f"{self._label()} must be a non-empty string", value=value)
        return True


def _positive_int(name: str) -> IntegerValidator:
    return IntegerValidator(positive_only=True, field_name=name)


def _positive_float(name: str) -> FloatValidator:
    return FloatValidator(positive_only=True, field_name=name)


SECTION_VALIDATORS: Dict[str, Dict[str, BaseValidator]] = {
    "simulation": {
        "n_candidates": _positive_int("simulation.n_candidates"),
        "beam_length": _positive_float("simulation.beam_length"),
        "dt": _positive_float("simulation.dt"),
        "t_final": _positive_float("simulation.t_final"),
    },
    "dmd": {
        "q": _positive_int("dmd.q"),
        "rank": _positive_int("dmd.rank"),
        "stride": _positive_int("dmd.stride"),
    },
    "hankel": {
        "s": _positive_int("hankel.s"),
    },
    "placement": {
        "n_a": _positive_int("placement.n_a"),
        "n_r": _positive_int("placement.n_r"),
        "lower": _positive_int("placement.lower"),
        "upper": _positive_int("placement.upper"),
        "workers": _positive_int("placement.workers"),
        "evaluator": _ChoiceValidator(("modal", "dense"), field_name="placement.evaluator"),
    },
    "loop": {
        "pair_mass": RangeValidator(min_value=0.0, field_name="loop.pair_mass"),
        "max_iters": _positive_int("loop.max_iters"),
    },
    "control": {
        "rho": _positive_float("control.rho"),
        "dt": _positive_float("control.dt"),
        "horizon": _positive_float("control.horizon"),
        "n_modes": _positive_int("control.n_modes"),
        "settling_band": RangeValidator(0.0, 1.0, min_inclusive=False, max_inclusive=False,
                                        field_name="control.settling_band"),
        "segments": _positive_int("control.segments"),
        "window": _StringValidator(field_name="control.window"),
        "state_weight": _ChoiceValidator(("energy", "output"), field_name="control.state_weight"),
    },
    "gramian": {
        "trials": _positive_int("gramian.trials"),
        "n_max": _positive_int("gramian.n_max"),
        "tol": _positive_float("gramian.tol"),
        "workers": _positive_int("gramian.workers"),
    },
}

TOP_LEVEL_VALIDATORS: Dict[str, BaseValidator] = {
    "schema_version": IntegerValidator(positive_only=True, field_name="schema_version"),
    "output_dir": _StringValidator(field_name="output_dir"),
    "seed": IntegerValidator(non_negative=True, field_name="seed"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Complete pipeline configuration.

    Sections are frozen dataclasses; ``modes`` holds the mode-table rows as dicts with keys
    lambda_const, amplitude, freq_hz and zeta.
    """

    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    dmd: DmdConfig = field(default_factory=DmdConfig)
    hankel: HankelConfig = field(default_factory=HankelConfig)
    placement: PlacementConfig = field(default_factory=PlacementConfig)
    loop: LoopConfig = field(default_factory=LoopConfig)
    control: ControlConfig = field(default_factory=ControlConfig)
    gramian: GramianConfig = field(default_factory=GramianConfig)
    modes: Tuple[dict, ...] = field(default_factory=lambda: tuple(DEFAULT_MODES.to_rows()))
    output_dir: str = "out"
    seed: int = 0
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ExperimentConfig":
        """
        Build a configuration from a parsed JSON document.

        Raises:
            MultiValidationError: With every structural or precondition violation.
        """
        if not isinstance(payload, dict):
            raise ValidationError("Config document must be a JSON object", field="config")
        validators: Dict[str, BaseValidator] = dict(TOP_LEVEL_VALIDATORS)
        for name, section_validators in SECTION_VALIDATORS.items():
            validators[name] = FieldMapValidator(section_validators, allow_unknown=False,
                                                 field_name=name)
        validators["modes"] = _ModeRowsValidator(field_name="modes")

        errors: List[ValidationError] = []
        try:
            FieldMapValidator(validators, allow_unknown=False).validate(payload)
        except MultiValidationError as e:
            errors.extend(e.errors)
        except ValidationError as e:
            errors.append(e)
        version = payload.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            errors.append(ValidationError(
                f"Unsupported schema_version {version}; expected {SCHEMA_VERSION}",
                field="schema_version", value=version))
        if errors:
            raise MultiValidationError(errors)

        kwargs: Dict[str, Any] = {}
        for name, section_cls in SECTIONS.items():
            if payload.get(name) is not None:
                kwargs[name] = section_cls(**payload[name])
        if payload.get("modes") is not None:
            kwargs["modes"] = tuple(
                {key: float(row[key]) for key in ("lambda_const", "amplitude", "freq_hz", "zeta")}
                for row in payload["modes"])
        for name in ("output_dir", "seed", "schema_version"):
            if payload.get(name) is not None:
                kwargs[name] = payload[name]
        config = cls(**kwargs)
        validate_config(config)
        return config

    @classmethod
    def from_json_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """
        Load and validate a configuration file.

        Raises:
            ConfigFileError: If the file cannot be read or is not valid JSON.
            MultiValidationError: If the document violates the schema or a precondition.
        """
        try:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
        except OSError as e:
            raise ConfigFileError(path=str(path), reason=str(e))
        except json.JSONDecodeError as e:
            raise ConfigFileError(path=str(path), reason=f"invalid JSON: {e}")
        return cls.from_dict(payload)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            name: dataclasses.asdict(getattr(self, name)) for name in SECTIONS}
        payload["modes"] = [dict(row) for row in self.modes]
        payload["output_dir"] = self.output_dir
        payload["seed"] = self.seed
        payload["schema_version"] = self.schema_version
        return payload

    def with_overrides(self, output_dir: Optional[str] = None, seed: Optional[int] = None,
                       max_iters: Optional[int] = None,
                       pair_mass: Optional[float] = None) -> "ExperimentConfig":
        """Copy with command-line overrides applied; None leaves a value unchanged."""
        config = self
        if output_dir is not None:
            config = dataclasses.replace(config, output_dir=output_dir)
        if seed is not None:
            config = dataclasses.replace(config, seed=seed)
        loop = config.loop
        if max_iters is not None:
            loop = dataclasses.replace(loop, max_iters=max_iters)
        if pair_mass is not None:
            loop = dataclasses.replace(loop, pair_mass=pair_mass)
        return dataclasses.replace(config, loop=loop)

    def mode_set(self) -> ModeSet:
        return ModeSet.from_rows(self.modes, self.simulation.beam_length)

    @property
    def n_t(self) -> int:
        return sample_count(self.simulation.dt, self.simulation.t_final)

    def design_template(self) -> DesignTemplate:
        return DesignTemplate(
            n_candidates=self.simulation.n_candidates,
            dt=self.simulation.dt,
            t_final=self.simulation.t_final,
            q=self.dmd.q,
            rank=self.dmd.rank,
            stride=self.dmd.stride,
            n_a=self.placement.n_a,
            n_r=self.placement.n_r,
            s=self.hankel.s,
            lower=self.placement.lower,
            upper=self.placement.upper,
            workers=self.placement.workers,
            evaluator=self.placement.evaluator,
        )

    def control_settings(self) -> ControlSettings:
        c = self.control
        return ControlSettings(
            rho=c.rho, dt=c.dt, horizon=c.horizon, n_modes=c.n_modes,
            settling_band=c.settling_band, segments=c.segments, window=c.window,
            state_weight=c.state_weight,
            n_candidates=self.simulation.n_candidates, pair_mass=self.loop.pair_mass,
        )


class _ConfigCheck(BaseValidator):
    """Run one check function against a whole ExperimentConfig."""

    def __init__(self, check: Callable[["ExperimentConfig"], None],
                 field_name: Optional[str] = None):
        super().__init__(field_name=field_name)
        self.check = check

    def validate(self, value: Any) -> bool:
        self.check(value)
        return True


def _section_check(name: str) -> _ConfigCheck:
    fields = FieldMapValidator(SECTION_VALIDATORS[name], field_name=name)
    return _ConfigCheck(lambda config: fields.validate(dataclasses.asdict(getattr(config, name))),
                        field_name=name)


def _check_modes(config: ExperimentConfig) -> None:
    ModeTableValidator(field_name="modes").validate(list(config.modes))


def _check_range(name: str, value: int, low: int, high: int, message: str) -> None:
    if not low <= value <= high:
        raise RangeError(low, high, actual_value=value, field=name, message=message)


def _check_sampling(config: ExperimentConfig) -> None:
    sim = config.simulation
    max_freq = max(row["freq_hz"] for row in config.modes)
    SamplingValidator(max_freq, min_samples=3, field_name="simulation").validate(
        {"dt": sim.dt, "t_final": sim.t_final})


def _decimated_count(config: ExperimentConfig) -> int:
    return -(-config.n_t // config.dmd.stride)


def _check_stacking(config: ExperimentConfig) -> None:
    q, stride = config.dmd.q, config.dmd.stride
    n_kept = _decimated_count(config)
    _check_range("dmd.q", q, 1, max(1, n_kept - 1),
                 f"Stacking depth {q} needs at least {q + 1} snapshots after stride {stride} "
                 f"(have {n_kept})")


def _check_rank(config: ExperimentConfig) -> None:
    dmd = config.dmd
    max_rank = min(dmd.q * (config.simulation.n_candidates + 1),
                   max(_decimated_count(config) - dmd.q, 1))
    _check_range("dmd.rank", dmd.rank, 1, max_rank,
                 f"DMD rank {dmd.rank} exceeds the snapshot matrix size limit {max_rank}")


def _check_stride(config: ExperimentConfig) -> None:
    dmd = config.dmd
    identified = config.modes[:min(len(config.modes), math.ceil(dmd.rank / 2))]
    target_hz = max(row["freq_hz"] for row in identified)
    step = config.simulation.dt * dmd.stride
    if not step < 1.0 / (2.0 * target_hz):
        raise NyquistError(
            dt=step, max_freq_hz=target_hz, field="dmd.stride",
            message=f"Stride {dmd.stride} gives a DMD step of {step} s, which violates the "
                    f"Nyquist bound for the {len(identified)} identified modes "
                    f"(up to {target_hz} Hz)")


def _check_hankel_depth(config: ExperimentConfig) -> None:
    s, n_t = config.hankel.s, config.n_t
    if s is not None:
        _check_range("hankel.s", s, 1, max(1, n_t // 2),
                     f"Hankel depth {s} needs n_t >= {2 * s} (have {n_t})")


def _check_bounds(config: ExperimentConfig) -> None:
    placement, n_candidates = config.placement, config.simulation.n_candidates
    low = placement.lower if placement.lower is not None else 1
    high = placement.upper if placement.upper is not None else n_candidates
    if low > high:
        raise RangeError(message=f"placement.lower {low} exceeds placement.upper {high}",
                         field="placement.lower", actual_value=low, max_value=high)
    admissible = len(range(max(low, 1), min(high, n_candidates) + 1))
    SubsetBudgetValidator().validate((admissible, placement.n_a))


def _check_control(config: ExperimentConfig) -> None:
    control = config.control
    if control.n_modes > len(config.modes):
        raise RangeError(max_value=len(config.modes), actual_value=control.n_modes,
                         field="control.n_modes")
    retained = config.modes[:control.n_modes]
    natural_hz = max(row["freq_hz"] / math.sqrt(1.0 - row["zeta"] ** 2) for row in retained)
    SamplingValidator(natural_hz, min_samples=3, field_name="control").validate(
        {"dt": control.dt, "t_final": control.horizon})


FIELD_CHECKS: Tuple[BaseValidator, ...] = (
    *(_section_check(name) for name in ("simulation", "dmd", "hankel", "placement", "loop",
                                        "control", "gramian")),
    _ConfigCheck(_check_modes, field_name="modes"),
)

CROSS_CHECKS: Tuple[BaseValidator, ...] = (
    _ConfigCheck(_check_sampling, field_name="simulation"),
    _ConfigCheck(_check_stacking, field_name="dmd.q"),
    _ConfigCheck(_check_rank, field_name="dmd.rank"),
    _ConfigCheck(_check_stride, field_name="dmd.stride"),
    _ConfigCheck(_check_hankel_depth, field_name="hankel.s"),
    _ConfigCheck(_check_bounds, field_name="placement"),
    _ConfigCheck(_check_control, field_name="control"),
)


class ExperimentConfigValidator(CompositeValidator):
    """
    Every stage precondition of an ExperimentConfig.

    Field checks run first; the cross-field checks only run once every field is well formed.
    Failures are always raised as one MultiValidationError.
    """

    def __init__(self, field_name: Optional[str] = "config"):
        super().__init__(list(FIELD_CHECKS), field_name=field_name)

    def validate(self, value: Any) -> bool:
        if not isinstance(value, ExperimentConfig):
            self._raise_validation_error(
                f"Expected an ExperimentConfig for {self._label()}, got {type(value).__name__}",
                value=value)
        try:
            super().validate(value)
            CompositeValidator(list(CROSS_CHECKS), field_name=self.field_name).validate(value)
        except MultiValidationError:
            raise
        except ValidationError as e:
            raise MultiValidationError([e])
        return True


def validate_config(config: ExperimentConfig) -> bool:
    """
    Check every stage precondition of a configuration.

    Raises:
        MultiValidationError: Aggregating every violation found.
    """
    return ExperimentConfigValidator().validate(config)
