"""
exceptions

The dmdplace.exceptions package contains all error and exception classes used in dmdplace.

You can import any exception directly from this package to simplify error handling.

Available exceptions:
    - DmdPlaceError (base)
    - ValidationError, RequiredValueError, InvalidTypeError, RangeError, NyquistError,
      ValidatorConfigurationError, MultiValidationError, SubsetBudgetExceeded
    - NumericalError, RankDeficiencyError, DegenerateSignalError, UnstableSystemError,
      RiccatiConvergenceError
    - ArtifactError, ArtifactWriteError, ConfigFileError, StageError
"""
from .base import DmdPlaceError
from .validation import (
    ValidationError, RequiredValueError, InvalidTypeError, RangeError, NyquistError,
    ValidatorConfigurationError, MultiValidationError, SubsetBudgetExceeded)
from .numerical import (
    NumericalError, RankDeficiencyError, DegenerateSignalError, UnstableSystemError,
    RiccatiConvergenceError)
from .system import (
    ArtifactError, ArtifactWriteError, ConfigFileError, StageError)

__all__ = [
    "DmdPlaceError",
    "ValidationError", "RequiredValueError", "InvalidTypeError", "RangeError", "NyquistError",
    "ValidatorConfigurationError", "MultiValidationError", "SubsetBudgetExceeded",
    "NumericalError", "RankDeficiencyError", "DegenerateSignalError", "UnstableSystemError",
    "RiccatiConvergenceError",
    "ArtifactError", "ArtifactWriteError", "ConfigFileError", "StageError",
]
