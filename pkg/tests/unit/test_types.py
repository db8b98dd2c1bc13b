"""Unit tests for job configuration and payload schemas."""

import json

import pytest
from pydantic import ValidationError

from src.drinfeld_modpoly.algebra.field import field_for_q
from src.drinfeld_modpoly.algebra.polya import poly_ring
from src.drinfeld_modpoly.algebra.series import laurent_polynomial, series_truncate
from src.drinfeld_modpoly.types import (
    CheckResult,
    CheckStatus,
    Command,
    CountPayload,
    ErrorPayload,
    ExpandTarget,
    JobConfig,
    OutputFormat,
    SeriesPayload,
    VerificationReport,
)


class TestJobConfig:
    """Tests for JobConfig validation."""

    def test_defaults(self):
        config = JobConfig(command=Command.COUNT)
        assert config.q == 2
        assert config.r == 2
        assert config.n == "T"
        assert config.output == OutputFormat.TEXT
        assert config.what == ExpandTarget.J

    def test_string_enums_accepted(self):
        config = JobConfig(command="expand", what="q-scaled", output="json")
        assert config.command == Command.EXPAND
        assert config.what == ExpandTarget.Q_SCALED

    @pytest.mark.parametrize("q", [1, 6, 10])
    def test_q_must_be_prime_power(self, q):
        with pytest.raises(ValidationError):
            JobConfig(command=Command.COUNT, q=q)

    def test_prime_power_q_accepted(self):
        assert JobConfig(command=Command.COUNT, q=9).q == 9

    def test_polynomial_text_is_stripped(self):
        assert JobConfig(command=Command.COUNT, n="  T^2+1 ").n == "T^2+1"

    def test_empty_level_rejected(self):
        with pytest.raises(ValidationError):
            JobConfig(command=Command.COUNT, n="   ")

    def test_expansion_needs_rank_two(self):
        with pytest.raises(ValidationError):
            JobConfig(command=Command.EXPAND, r=1)
        assert JobConfig(command=Command.COUNT, r=1).r == 1

    def test_snf_needs_matrix(self):
        with pytest.raises(ValidationError):
            JobConfig(command=Command.SNF)
        assert JobConfig(command=Command.SNF, matrix="T,1;0,T").matrix == "T,1;0,T"

    def test_rank_upper_limit(self):
        with pytest.raises(ValidationError):
            JobConfig(command=Command.COUNT, r=9)


class TestPayloads:
    """Tests for the JSON payload schemas."""

    def test_schema_key(self):
        payload = CountPayload(q=2, r=2, n="T", count=3, displayed_count="4")
        data = payload.to_dict()
        assert data["schema"] == 1
        assert "schema_version" not in data
        assert json.loads(json.dumps(data)) == data

    def test_payloads_are_frozen(self):
        payload = CountPayload(q=2, r=2, n="T", count=3)
        with pytest.raises(ValidationError):
            payload.count = 4

    def test_series_payload(self):
        A = poly_ring(field_for_q(2))
        series = series_truncate(laurent_polynomial(A, [(-1, 1), (0, A.T)]), 2)
        payload = SeriesPayload.from_series(series)
        assert payload.grid_denom == 1
        assert payload.terms == [(-1, "1"), (0, "T")]
        assert payload.prec_num == 2
        assert payload.root_exponent is None
        assert payload.text == "t^(-1) + T + O(t^2)"

    def test_exact_series_has_no_precision(self):
        A = poly_ring(field_for_q(3))
        payload = SeriesPayload.from_series(laurent_polynomial(A, [(0, 1)]), root_exponent="1/2")
        assert payload.prec_num is None
        assert payload.root_exponent == "1/2"

    def test_error_payload(self):
        payload = ErrorPayload(error="grammar_error", message="bad", exit_code=2)
        assert payload.to_dict() == {
            "schema": 1,
            "error": "grammar_error",
            "message": "bad",
            "details": {},
            "exit_code": 2,
        }


class TestReports:
    def test_reported_checks_do_not_fail(self):
        report = VerificationReport(
            q=2,
            seed=0,
            checks=[
                CheckResult(name="a", status=CheckStatus.PASSED),
                CheckResult(name="b", status=CheckStatus.REPORTED, detail="skipped"),
            ],
        )
        assert report.passed

    def test_failed_check_fails_report(self):
        report = VerificationReport(
            q=2, seed=0, checks=[CheckResult(name="a", status=CheckStatus.FAILED)]
        )
        assert not report.passed
