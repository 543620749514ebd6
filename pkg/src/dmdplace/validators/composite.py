"""
composite.py

Validators for structured inputs: mode tables, sampling settings, search budgets and
dictionaries of fields.

Purpose:
- Check the cross-field invariants that single-number validators cannot see.
- Report every violation of a section at once.
"""

import math
from typing import Any, Dict, Optional, Sequence

from .core import BaseValidator
from .numeric import FloatValidator, IntegerValidator, RangeValidator
from ..exceptions import (
    MultiValidationError, NyquistError, RangeError, RequiredValueError, SubsetBudgetExceeded,
    ValidationError)


class FieldMapValidator(BaseValidator):
    """
    Validator for a dict of named fields, one validator per field.

    Unknown keys are rejected when ``allow_unknown`` is False.
    """

    def __init__(
        self,
        field_validators: Dict[str, BaseValidator],
        require_all: bool = False,
        allow_unknown: bool = True,
        field_name: Optional[str] = None
    ):
        super().__init__(field_name=field_name)
        self.field_validators = field_validators
        self.require_all = require_all
        self.allow_unknown = allow_unknown

    def validate(self, value: Any) -> bool:
        if not isinstance(value, dict):
            self._raise_validation_error(
                f"Expected a mapping for {self._label()}, got {type(value).__name__}",
                value=value
            )

        errors = []
        for name, validator in self.field_validators.items():
            if name not in value:
                if self.require_all:
                    errors.append(RequiredValueError(field=self._qualify(name)))
                continue
            if value[name] is None:
                continue
            try:
                validator.validate(value[name])
            except MultiValidationError as e:
                errors.extend(e.errors)
            except ValidationError as e:
                errors.append(e)

        if not self.allow_unknown:
            for name in value:
                if name not in self.field_validators:
                    errors.append(ValidationError(
                        f"Unknown key '{self._qualify(name)}'", field=self._qualify(name)))

        if errors:
            raise MultiValidationError(errors)
        return True

    def _qualify(self, name: str) -> str:
        return f"{self.field_name}.{name}" if self.field_name else name


class ModeTableValidator(BaseValidator):
    """
    Validator for a table of modal constants.

    Each entry must expose ``lambda_const``, ``amplitude``, ``freq_hz`` and ``zeta``
    (attributes or mapping keys). Checks per-row ranges and that eigen-constants and
    frequencies are strictly increasing.
    """

    _amplitude = RangeValidator(min_value=0.0, field_name="amplitude")
    _freq = FloatValidator(positive_only=True, field_name="freq_hz")
    _zeta = RangeValidator(0.0, 1.0, min_inclusive=False, max_inclusive=False, field_name="zeta")
    _lambda = FloatValidator(positive_only=True, field_name="lambda_const")

    @staticmethod
    def _get(row: Any, name: str) -> Any:
        if isinstance(row, dict):
            if name not in row:
                raise RequiredValueError(field=name)
            return row[name]
        return getattr(row, name)

    def validate(self, value: Sequence[Any]) -> bool:
        if len(value) == 0:
            raise RequiredValueError(field=self.field_name or "modes")

        errors = []
        for index, row in enumerate(value):
            for name, validator in (("lambda_const", self._lambda), ("amplitude", self._amplitude),
                                    ("freq_hz", self._freq), ("zeta", self._zeta)):
                try:
                    validator.validate(self._get(row, name))
                except ValidationError as e:
                    e.context["mode_index"] = index
                    errors.append(e)
        if errors:
            raise MultiValidationError(errors)

        for name in ("lambda_const", "freq_hz"):
            values = [self._get(row, name) for row in value]
            for i in range(1, len(values)):
                if values[i] <= values[i - 1]:
                    errors.append(ValidationError(
                        f"{name} must be strictly increasing (mode {i} has {values[i]} "
                        f"after {values[i - 1]})", field=name, value=values[i]))
        if errors:
            raise MultiValidationError(errors)
        return True


class SamplingValidator(BaseValidator):
    """
    Validator for a (dt, t_final) sampling plan.

    Enforces the Nyquist bound dt < 1/(2 * max_freq_hz) and a minimum number of samples,
    where the sample count is round(t_final / dt).
    """

    def __init__(self, max_freq_hz: float, min_samples: int = 3, field_name: Optional[str] = None):
        super().__init__(field_name=field_name)
        self.max_freq_hz = max_freq_hz
        self.min_samples = min_samples

    def validate(self, value: Dict[str, float]) -> bool:
        dt = value.get("dt")
        t_final = value.get("t_final")
        FloatValidator(positive_only=True, field_name=self._sub("dt")).validate(dt)
        if dt >= 1.0 / (2.0 * self.max_freq_hz):
            raise NyquistError(dt=dt, max_freq_hz=self.max_freq_hz, field=self._sub("dt"))
        if t_final is not None:
            FloatValidator(positive_only=True, field_name=self._sub("t_final")).validate(t_final)
            n_t = int(round(t_final / dt))
            if n_t < self.min_samples:
                raise RangeError(
                    min_value=self.min_samples, actual_value=n_t, field=self._sub("t_final"),
                    message=(f"t_final/dt gives {n_t} samples for {self._label()}; "
                             f"at least {self.min_samples} are required"))
        return True

    def _sub(self, name: str) -> str:
        return f"{self.field_name}.{name}" if self.field_name else name


class SubsetBudgetValidator(BaseValidator):
    """
    Validator for exhaustive search sizes given as (n_candidates, n_a).

    Raises SubsetBudgetExceeded when C(n_candidates, n_a) is above the budget.
    """

    def __init__(self, budget: int = 10 ** 6, field_name: Optional[str] = None):
        super().__init__(field_name=field_name)
        self.budget = budget

    def validate(self, value: Sequence[int]) -> bool:
        n_candidates, n_a = value
        IntegerValidator(positive_only=True, field_name="n_a").validate(n_a)
        if n_a > n_candidates:
            raise RangeError(
                max_value=n_candidates, actual_value=n_a, field="n_a",
                message=f"Cannot place {n_a} sensors on {n_candidates} candidates")
        subsets = math.comb(n_candidates, n_a)
        if subsets > self.budget:
            raise SubsetBudgetExceeded(subsets=subsets, budget=self.budget)
        return True
