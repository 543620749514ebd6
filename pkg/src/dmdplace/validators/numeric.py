"""
numeric.py

Validation rules for numeric parameters in dmdplace.

This module provides validators for:
- Integer counts (positive, non-negative, any)
- Finite real values (positive, negative, any)
- Range-limited numbers with inclusive or exclusive bounds

Purpose:
- Ensure numeric parameters are valid before any computation starts.
- Keep numeric validation modular and reusable across config sections and domain types.
"""

import math
import numbers
from typing import Any, Optional, Union

from .core import BaseValidator
from ..exceptions import InvalidTypeError, RangeError, ValidatorConfigurationError


def _is_integer(value: Any) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_real(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


class IntegerValidator(BaseValidator):
    """
    Validator for integer values.

    Booleans are rejected even though they are ints in Python. numpy integers are accepted.
    """

    def __init__(
        self,
        positive_only: bool = False,
        non_negative: bool = False,
        field_name: Optional[str] = None
    ):
        """
        Initialize integer validator.

        Args:
            positive_only: If True, only accept integers >= 1.
            non_negative: If True, only accept integers >= 0.
            field_name: Optional field name for error messages.
        """
        super().__init__(field_name=field_name)
        if positive_only and non_negative:
            raise ValidatorConfigurationError(
                "IntegerValidator", "positive_only and non_negative are mutually exclusive")
        self.positive_only = positive_only
        self.non_negative = non_negative

    def validate(self, value: Any) -> bool:
        if not _is_integer(value):
            raise InvalidTypeError("int", type(value).__name__, field=self.field_name)

        if self.positive_only and value <= 0:
            raise RangeError(
                min_value=1,
                actual_value=value,
                field=self.field_name,
                message=f"Integer must be positive for {self._label()} (got {value})"
            )
        if self.non_negative and value < 0:
            raise RangeError(
                min_value=0,
                actual_value=value,
                field=self.field_name,
                message=f"Integer must be non-negative for {self._label()} (got {value})"
            )
        return True


class FloatValidator(BaseValidator):
    """
    Validator for finite real values.

    Integers are accepted as reals; NaN and infinities are rejected.
    """

    def __init__(
        self,
        positive_only: bool = False,
        negative_only: bool = False,
        field_name: Optional[str] = None
    ):
        """
        Initialize float validator.

        Args:
            positive_only: If True, only accept values > 0.
            negative_only: If True, only accept values < 0.
            field_name: Optional field name for error messages.
        """
        super().__init__(field_name=field_name)
        if positive_only and negative_only:
            raise ValidatorConfigurationError(
                "FloatValidator", "positive_only and negative_only are mutually exclusive")
        self.positive_only = positive_only
        self.negative_only = negative_only

    def validate(self, value: Any) -> bool:
        if not _is_real(value):
            raise InvalidTypeError("float", type(value).__name__, field=self.field_name)
        if not math.isfinite(float(value)):
            self._raise_validation_error(f"Value must be finite for {self._label()}", value=value)

        if self.positive_only and value <= 0:
            raise RangeError(
                min_value=0.0,
                actual_value=value,
                field=self.field_name,
                message=f"Value must be positive for {self._label()} (got {value})"
            )
        if self.negative_only and value >= 0:
            raise RangeError(
                max_value=0.0,
                actual_value=value,
                field=self.field_name,
                message=f"Value must be negative for {self._label()} (got {value})"
            )
        return True


class RangeValidator(BaseValidator):
    """
    Validator for numeric values within a specified range.

    Works with both integers and floats. Supports inclusive or exclusive bounds.
    """

    def __init__(
        self,
        min_value: Optional[Union[int, float]] = None,
        max_value: Optional[Union[int, float]] = None,
        min_inclusive: bool = True,
        max_inclusive: bool = True,
        field_name: Optional[str] = None
    ):
        """
        Initialize range validator.

        Args:
            min_value: Minimum allowed value (None for no minimum).
            max_value: Maximum allowed value (None for no maximum).
            min_inclusive: If True, min_value is inclusive.
            max_inclusive: If True, max_value is inclusive.
            field_name: Optional field name for error messages.
        """
        super().__init__(field_name=field_name)
        if min_value is not None and max_value is not None and min_value > max_value:
            raise ValidatorConfigurationError("RangeValidator", "min_value cannot be greater than max_value")
        self.min_value = min_value
        self.max_value = max_value
        self.min_inclusive = min_inclusive
        self.max_inclusive = max_inclusive

    def _interval(self) -> str:
        left = "[" if self.min_inclusive else "("
        right = "]" if self.max_inclusive else ")"
        lo = "-inf" if self.min_value is None else self.min_value
        hi = "inf" if self.max_value is None else self.max_value
        return f"{left}{lo}, {hi}{right}"

    def validate(self, value: Any) -> bool:
        if not _is_real(value):
            raise InvalidTypeError("number", type(value).__name__, field=self.field_name)
        if math.isnan(float(value)):
            self._raise_validation_error(f"Value must not be NaN for {self._label()}", value=value)

        too_low = self.min_value is not None and (
            value < self.min_value if self.min_inclusive else value <= self.min_value)
        too_high = self.max_value is not None and (
            value > self.max_value if self.max_inclusive else value >= self.max_value)

        if too_low or too_high:
            raise RangeError(
                min_value=self.min_value,
                max_value=self.max_value,
                actual_value=value,
                field=self.field_name,
                message=f"Value {value} for {self._label()} must lie in {self._interval()}"
            )
        return True
