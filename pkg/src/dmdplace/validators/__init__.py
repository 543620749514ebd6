"""
validators/__init__.py

Public API for all validation classes in dmdplace.

Core:
    - BaseValidator: Base class for all validators
    - CompositeValidator: Combine multiple validators

Numeric:
    - IntegerValidator: Integer counts (positive, non-negative, any)
    - FloatValidator: Finite reals (positive, negative, any)
    - RangeValidator: Range-limited numbers

Structured:
    - FieldMapValidator: Dict of fields, one validator per field
    - ModeTableValidator: Modal constant tables
    - SamplingValidator: Nyquist and sample-count checks
    - SubsetBudgetValidator: Exhaustive-search size guard
"""

from .core import BaseValidator, CompositeValidator
from .numeric import IntegerValidator, FloatValidator, RangeValidator
from .composite import (
    FieldMapValidator,
    ModeTableValidator,
    SamplingValidator,
    SubsetBudgetValidator,
)

__all__ = [
    "BaseValidator",
    "CompositeValidator",
    "IntegerValidator",
    "FloatValidator",
    "RangeValidator",
    "FieldMapValidator",
    "ModeTableValidator",
    "SamplingValidator",
    "SubsetBudgetValidator",
]
