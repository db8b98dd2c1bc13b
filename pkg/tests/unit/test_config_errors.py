"""Unit tests for settings loading and the error taxonomy."""

import pytest
from pydantic import ValidationError

from src.drinfeld_modpoly.config import Settings
from src.drinfeld_modpoly.errors import (
    BoundViolationError,
    CompositionError,
    ConfigError,
    DescentError,
    FieldError,
    GrammarError,
    ModpolyError,
    NonIntegralReductionError,
    PrecisionError,
    RingMismatchError,
    ShapeError,
    SingularMatrixError,
    ZeroDivisorError,
    ZeroPolynomialError,
)


class TestSettings:
    """Tests for environment-driven settings."""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("MODPOLY_LOG_LEVEL", raising=False)
        s = Settings(_env_file=None)
        assert s.log_level == "WARNING"
        assert s.precision_guard == 2
        assert s.use_bridge_cache is False

    def test_env_prefix(self, monkeypatch):
        monkeypatch.setenv("MODPOLY_LOG_LEVEL", "DEBUG")
        monkeypatch.setenv("MODPOLY_PROPERTY_SAMPLES", "7")
        s = Settings(_env_file=None)
        assert s.log_level == "DEBUG"
        assert s.property_samples == 7

    def test_out_of_range_value_rejected(self, monkeypatch):
        monkeypatch.setenv("MODPOLY_MAX_ENUMERATION_DEGREE", "99")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)


class TestErrors:
    """Tests for exit codes and structured error output."""

    @pytest.mark.parametrize(
        ("error_cls", "exit_code"),
        [
            (GrammarError, 2),
            (ConfigError, 2),
            (FieldError, 3),
            (ZeroPolynomialError, 3),
            (ZeroDivisorError, 3),
            (RingMismatchError, 3),
            (ShapeError, 3),
            (SingularMatrixError, 3),
            (CompositionError, 3),
            (PrecisionError, 4),
            (NonIntegralReductionError, 4),
            (DescentError, 4),
            (BoundViolationError, 4),
        ],
    )
    def test_exit_codes(self, error_cls, exit_code):
        error = error_cls("boom")
        assert isinstance(error, ModpolyError)
        assert error.exit_code == exit_code

    def test_to_dict(self):
        error = ShapeError("bad shape", rank=3, n="T")
        assert error.to_dict() == {
            "error": "shape_error",
            "message": "bad shape",
            "details": {"n": "T", "rank": "3"},
        }

    def test_builtin_bases(self):
        # callers that catch the builtin exceptions still see these
        assert issubclass(ZeroDivisorError, ZeroDivisionError)
        assert issubclass(GrammarError, ValueError)
        assert issubclass(RingMismatchError, TypeError)
