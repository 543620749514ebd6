"""
validation.py

This module defines exception classes for configuration and precondition failures in dmdplace.

Classes:
    - ValidationError: Base class for validation-related errors.
    - RequiredValueError: Indicates a required value is missing.
    - InvalidTypeError: Raised when a value has the wrong type.
    - RangeError: Raised when numeric input is out of range.
    - NyquistError: Raised when a sample interval cannot resolve the fastest mode.
    - SubsetBudgetExceeded: An exhaustive search would enumerate too many subsets.
    - ValidatorConfigurationError: Indicates a validator is misconfigured.
    - MultiValidationError: Represents multiple validation failures.

The CLI maps this whole family to exit status 2.
"""
from .base import DmdPlaceError


class ValidationError(DmdPlaceError):
    """
    Base exception for all validation errors in dmdplace.

    Args:
        message: A description of the validation failure.
        field: (Optional) The config field or parameter involved.
        value: (Optional) The invalid value, if applicable.
        **context: Additional context for debugging.
    """
    def __init__(self, message=None, field=None, value=None, **context):
        if message is None:
            message = f"Validation failed{f' for {field}' if field else ''}."
        self.field = field
        self.value = value
        super().__init__(message, **context)


class ValidatorConfigurationError(ValidationError):
    """
    Raised when a validator is built with contradictory arguments.

    Args:
        validator: Name of the validator.
        detail: Description of the configuration error.
    """
    def __init__(self, validator=None, detail=None, message=None):
        if message is None:
            message = f"Validator{f' {validator}' if validator else ''} is misconfigured: {detail or 'see documentation.'}"
        super().__init__(message, validator=validator, detail=detail)


class MultiValidationError(ValidationError):
    """
    Raised when several preconditions fail at once (e.g. a whole experiment config).

    Args:
        errors: List of ValidationError instances.
    """
    def __init__(self, errors, message=None):
        self.errors = list(errors)
        if message is None:
            submessages = "; ".join(str(e) for e in self.errors)
            message = f"{len(self.errors)} validation error(s): {submessages}"
        super().__init__(message, errors=self.errors)


class RequiredValueError(ValidationError):
    """
    Raised when a required value is missing.

    Args:
        field: Optional name of the required field.
    """
    def __init__(self, field=None, message=None):
        if message is None:
            message = f"Required value{f' for {field}' if field else ''} is missing."
        super().__init__(message, field=field)


class InvalidTypeError(ValidationError):
    """
    Raised when the value type is incorrect.

    Args:
        expected: The expected type(s).
        actual: The received type.
        field: Optional field name.
    """
    def __init__(self, expected, actual, field=None, message=None):
        if message is None:
            message = f"Expected type {expected}, got {actual}{f' for {field}' if field else ''}."
        super().__init__(message, field=field, value=None, expected=expected, actual=actual)


class RangeError(ValidationError):
    """
    Raised when numeric values are out of allowed range.

    Args:
        min_value: Minimal allowed.
        max_value: Maximum allowed.
        actual_value: The offending value.
        field: Optional field name.
    """
    def __init__(self, min_value=None, max_value=None, actual_value=None, field=None, message=None):
        if message is None:
            message = (
                f"Value {actual_value} out of range"
                f"{f' [{min_value}, {max_value}]' if min_value is not None or max_value is not None else ''}"
                f"{f' for {field}' if field else ''}."
            )
        self.min_value = min_value
        self.max_value = max_value
        super().__init__(message, field=field, value=actual_value,
                         min_value=min_value, max_value=max_value)


class NyquistError(RangeError):
    """
    Raised when a sample interval violates dt < 1/(2 * f_max).

    Args:
        dt: The offending sample interval (s).
        max_freq_hz: Highest frequency that must be resolved (Hz).
        field: Optional field name.
    """
    def __init__(self, dt=None, max_freq_hz=None, field=None, message=None):
        bound = None
        if max_freq_hz:
            bound = 1.0 / (2.0 * max_freq_hz)
        if message is None:
            message = (
                f"Sample interval dt={dt} violates the Nyquist bound dt < {bound!r} s "
                f"(1/(2*{max_freq_hz} Hz)){f' for {field}' if field else ''}."
            )
        super().__init__(max_value=bound, actual_value=dt, field=field, message=message)
        self.dt = dt
        self.max_freq_hz = max_freq_hz


class SubsetBudgetExceeded(ValidationError):
    """
    Raised when C(n, k) exceeds the exhaustive-search budget.

    Args:
        subsets: Number of subsets the search would enumerate.
        budget: Maximum allowed.
    """
    def __init__(self, subsets=None, budget=None, message=None):
        if message is None:
            message = f"Exhaustive search over {subsets} subsets exceeds the budget of {budget}."
        super().__init__(message, field="n_a", subsets=subsets, budget=budget)
        self.subsets = subsets
        self.budget = budget
