"""
Test suite for dmdplace.exceptions package.

Checks the hierarchy, default messages and the context carried by each error.
"""
import pytest
from dmdplace.exceptions import (
    ArtifactError, ArtifactWriteError, ConfigFileError, DegenerateSignalError, DmdPlaceError,
    InvalidTypeError, MultiValidationError, NumericalError, NyquistError, RangeError,
    RankDeficiencyError, RequiredValueError, RiccatiConvergenceError, StageError,
    SubsetBudgetExceeded, UnstableSystemError, ValidationError)


class TestHierarchy:
    @pytest.mark.parametrize("cls", [
        ValidationError, RangeError, NyquistError, MultiValidationError, SubsetBudgetExceeded,
        NumericalError, RankDeficiencyError, DegenerateSignalError, UnstableSystemError,
        RiccatiConvergenceError, ArtifactError, ArtifactWriteError, ConfigFileError, StageError,
    ])
    def test_single_root(self, cls):
        assert issubclass(cls, DmdPlaceError)

    def test_validation_branch(self):
        assert issubclass(NyquistError, RangeError)
        assert issubclass(SubsetBudgetExceeded, ValidationError)
        assert not issubclass(RankDeficiencyError, ValidationError)

    def test_artifact_branch(self):
        assert issubclass(ConfigFileError, ArtifactError)
        assert not issubclass(StageError, ArtifactError)


class TestMessages:
    def test_default_message(self):
        assert str(DmdPlaceError()) == "A dmdplace error occurred."

    def test_context_kept(self):
        error = DmdPlaceError("boom", stage="identify", rank=6)
        assert error.context == {"stage": "identify", "rank": 6}

    def test_range_error(self):
        error = RangeError(min_value=1, max_value=10, actual_value=11, field="rank")
        assert "11" in str(error) and "rank" in str(error)
        assert error.value == 11 and error.min_value == 1 and error.max_value == 10

    def test_nyquist_names_bound(self):
        error = NyquistError(dt=1e-3, max_freq_hz=903.47, field="dt")
        assert "Nyquist" in str(error)
        assert error.max_value == pytest.approx(1.0 / 1806.94)

    def test_required_and_type(self):
        assert "rank" in str(RequiredValueError(field="rank"))
        assert "int" in str(InvalidTypeError("int", "str", field="q"))

    def test_multi_validation_aggregates(self):
        error = MultiValidationError([RangeError(actual_value=0, field="q"),
                                      RequiredValueError(field="dt")])
        assert len(error.errors) == 2
        assert str(error).startswith("2 validation error(s)")

    def test_rank_deficiency(self):
        error = RankDeficiencyError(requested=8, available=6)
        assert error.requested == 8 and error.available == 6
        assert "8" in str(error)

    def test_unstable_system(self):
        assert UnstableSystemError(spectral_radius=1.2).spectral_radius == 1.2

    def test_stage_error_keeps_cause(self):
        cause = RankDeficiencyError(requested=8, available=6)
        error = StageError("identify", cause)
        assert error.stage == "identify"
        assert error.cause is cause
        assert "identify" in str(error)

    def test_write_error_path(self):
        error = ArtifactWriteError(path="/x/y.csv", reason="denied")
        assert error.path == "/x/y.csv"
        assert "denied" in str(error)
