"""
core.py

Core logic shared by all validators.

This module provides the base validator class and the composite that runs several validators
against one value, collecting every failure.

Purpose:
- Give every precondition check in dmdplace one calling convention: validate(value) -> True or raise.
- Keep error reporting (field names, offending values) consistent.
"""

from abc import ABC, abstractmethod
from typing import Any, List, Optional

from ..exceptions import MultiValidationError, ValidationError


class BaseValidator(ABC):
    """
    Abstract base class for all validators in dmdplace.

    Attributes:
        field_name: Optional field name for better error messages.
    """

    def __init__(self, field_name: Optional[str] = None):
        self.field_name = field_name

    @abstractmethod
    def validate(self, value: Any) -> bool:
        """
        Validate a value.

        Args:
            value: The value to validate.

        Returns:
            True if validation passes.

        Raises:
            ValidationError: If validation fails.
        """

    def _label(self) -> str:
        return self.field_name or "value"

    def _raise_validation_error(self, message: str, value: Any = None, **context) -> None:
        """
        Raise a validation error carrying this validator's field name.

        Args:
            message: Error message.
            value: The invalid value.
            **context: Additional context for the error.
        """
        raise ValidationError(message=message, field=self.field_name, value=value, **context)


class CompositeValidator(BaseValidator):
    """
    Validator that applies several validators to the same value.

    Every validator runs; failures are reported together as a MultiValidationError.
    """

    def __init__(self, validators: List[BaseValidator], field_name: Optional[str] = None):
        super().__init__(field_name=field_name)
        self.validators = validators

    def validate(self, value: Any) -> bool:
        errors = []
        for validator in self.validators:
            try:
                validator.validate(value)
            except MultiValidationError as e:
                errors.extend(e.errors)
            except ValidationError as e:
                errors.append(e)

        if len(errors) == 1:
            raise errors[0]
        if errors:
            raise MultiValidationError(errors)

        return True
