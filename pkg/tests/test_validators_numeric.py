"""
Test suite for dmdplace.validators.numeric module.

Tests the numeric validators with valid and invalid cases.
"""
import math

import numpy as np
import pytest
from dmdplace.validators.numeric import IntegerValidator, FloatValidator, RangeValidator
from dmdplace.exceptions import (
    InvalidTypeError, RangeError, ValidationError, ValidatorConfigurationError)


class TestIntegerValidator:
    def test_valid_integer(self):
        validator = IntegerValidator()
        assert validator.validate(123) is True
        assert validator.validate(-4) is True
        assert validator.validate(np.int64(7)) is True

    def test_positive_only(self):
        validator = IntegerValidator(positive_only=True)
        assert validator.validate(1) is True
        with pytest.raises(RangeError):
            validator.validate(0)

    def test_non_negative(self):
        validator = IntegerValidator(non_negative=True)
        assert validator.validate(0) is True
        with pytest.raises(RangeError):
            validator.validate(-1)

    def test_invalid_integer(self):
        validator = IntegerValidator()
        with pytest.raises(InvalidTypeError):
            validator.validate(12.5)
        with pytest.raises(InvalidTypeError):
            validator.validate("12")

    def test_bool_rejected(self):
        with pytest.raises(InvalidTypeError):
            IntegerValidator().validate(True)

    def test_contradictory_flags(self):
        with pytest.raises(ValidatorConfigurationError):
            IntegerValidator(positive_only=True, non_negative=True)

    def test_field_name_in_error(self):
        with pytest.raises(RangeError) as excinfo:
            IntegerValidator(positive_only=True, field_name="dmd.rank").validate(0)
        assert excinfo.value.field == "dmd.rank"
        assert "dmd.rank" in str(excinfo.value)


class TestFloatValidator:
    def test_valid_float(self):
        validator = FloatValidator()
        assert validator.validate(3.14) is True
        assert validator.validate(2) is True

    def test_positive_only(self):
        validator = FloatValidator(positive_only=True)
        assert validator.validate(1e-9) is True
        with pytest.raises(RangeError):
            validator.validate(0.0)

    def test_negative_only(self):
        validator = FloatValidator(negative_only=True)
        assert validator.validate(-0.5) is True
        with pytest.raises(RangeError):
            validator.validate(0.5)

    def test_non_finite(self):
        validator = FloatValidator()
        with pytest.raises(ValidationError):
            validator.validate(math.inf)
        with pytest.raises(ValidationError):
            validator.validate(float("nan"))

    def test_invalid_float(self):
        with pytest.raises(InvalidTypeError):
            FloatValidator().validate("abc")


class TestRangeValidator:
    def test_valid_range(self):
        validator = RangeValidator(min_value=1, max_value=100)
        assert validator.validate(50) is True
        assert validator.validate(1) is True
        assert validator.validate(100.0) is True

    def test_below_minimum(self):
        validator = RangeValidator(min_value=1, max_value=100)
        with pytest.raises(RangeError):
            validator.validate(0)

    def test_above_maximum(self):
        validator = RangeValidator(min_value=1, max_value=100)
        with pytest.raises(RangeError):
            validator.validate(101)

    def test_exclusive_bounds(self):
        validator = RangeValidator(min_value=0.0, max_value=1.0, min_inclusive=False, max_inclusive=False)
        assert validator.validate(0.5) is True
        with pytest.raises(RangeError):
            validator.validate(0.0)
        with pytest.raises(RangeError):
            validator.validate(1.0)

    def test_open_ended(self):
        validator = RangeValidator(min_value=0.0)
        assert validator.validate(1e12) is True
        with pytest.raises(RangeError):
            validator.validate(-1e-12)

    def test_nan_rejected(self):
        with pytest.raises(ValidationError):
            RangeValidator(0, 1).validate(float("nan"))

    def test_misconfigured(self):
        with pytest.raises(ValidatorConfigurationError):
            RangeValidator(min_value=2, max_value=1)
