import json

import pytest
from pydantic import ValidationError

from jordanlens.config import DEFAULT_TOL, Settings, get_settings
from jordanlens.schemas import (
    BoundingBox,
    CheckResult,
    Command,
    DimensionCheck,
    EquivalenceReport,
    Interval,
    MatrixPayload,
    OutputFormat,
    RandomPairRequest,
    RunConfig,
    VerificationReport,
)


class TestInterval:
    """Interval invariants"""

    def test_valid_interval(self):
        interval = Interval(lo=0.5, hi=1.5)
        assert interval.radius == 1.5

    def test_lo_above_hi_is_rejected(self):
        with pytest.raises(ValidationError) as exc_info:
            Interval(lo=2.0, hi=1.0)
        assert "exceeds upper end" in str(exc_info.value)

    def test_radius_of_negative_interval(self):
        assert Interval(lo=-3.0, hi=1.0).radius == 3.0


class TestEquivalenceReport:

    def test_verdict_must_match_checks(self):
        checks = [DimensionCheck(name="a", first=1, second=0, passed=False)]
        with pytest.raises(ValidationError):
            EquivalenceReport(equivalent=True, dim_checks=checks, angle_deviation=0.0)

    def test_infinite_deviation_serialises_as_null(self):
        report = EquivalenceReport(equivalent=False, dim_checks=[], angle_deviation=float("inf"))
        assert json.loads(report.model_dump_json())["angle_deviation"] is None
        assert report.angle_deviation == float("inf")


class TestRunConfig:
    """Command-line arity and format rules"""

    def test_defaults(self):
        config = RunConfig(command="angles", inputs=["M.mat", "N.mat"])
        assert config.tol == DEFAULT_TOL
        assert config.samples == 720
        assert config.format == OutputFormat.TEXT

    @pytest.mark.parametrize("command,count", [
        (Command.ANGLES, 1),
        (Command.EQUIV, 2),
        (Command.RANDOM_PAIR, 2),
        (Command.VERIFY, 3),
    ])
    def test_wrong_arity(self, command, count):
        with pytest.raises(ValidationError) as exc_info:
            RunConfig(command=command, inputs=["x.mat"] * count)
        assert "expects" in str(exc_info.value)

    def test_corpus_verification_takes_no_inputs(self):
        assert RunConfig(command="verify", corpus=5).inputs == []
        with pytest.raises(ValidationError):
            RunConfig(command="verify", corpus=5, inputs=["M.mat", "N.mat"])

    def test_svg_only_for_product_range(self):
        RunConfig(command="numrange-product", inputs=["M.mat", "N.mat"], format="svg")
        with pytest.raises(ValidationError):
            RunConfig(command="angles", inputs=["M.mat", "N.mat"], format="svg")

    def test_tolerance_bounds(self):
        with pytest.raises(ValidationError):
            RunConfig(command="angles", inputs=["M.mat", "N.mat"], tol=0.5)
        with pytest.raises(ValidationError):
            RunConfig(command="angles", inputs=["M.mat", "N.mat"], tol=0)


class TestRequestBodies:

    def test_matrix_payload(self):
        payload = MatrixPayload(rows=[["1", "0.5-0.866i"], ["0", "i"]])
        assert payload.to_array()[1, 1] == 1j

    def test_ragged_rows_are_rejected(self):
        with pytest.raises(ValidationError):
            MatrixPayload(rows=[["1", "0"], ["1"]])

    def test_bad_literal_is_rejected(self):
        with pytest.raises(ValidationError):
            MatrixPayload(rows=[["one"]])

    def test_random_pair_angles_must_be_interior(self):
        with pytest.raises(ValidationError):
            RandomPairRequest(angles=[0.3, 1.6])


class TestReports:

    def test_verification_report_failures(self):
        checks = [
            CheckResult(name="ok", value=0.0, threshold=1e-10, passed=True),
            CheckResult(name="bad", value=1.0, threshold=1e-10, passed=False),
        ]
        report = VerificationReport(checks=checks)
        assert not report.passed
        assert [check.name for check in report.failures] == ["bad"]
        assert report.schema_version == 1

    def test_bounding_box_contains(self):
        box = BoundingBox(re_lo=0, re_hi=1, im_lo=-0.5, im_hi=0.5)
        assert box.contains(0.5 + 0.5j)
        assert not box.contains(1.1)


class TestSettings:

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("JORDANLENS_TOL", "1e-6")
        monkeypatch.setenv("JORDANLENS_SAMPLES", "90")
        settings = get_settings()
        assert settings.tol == 1e-6
        assert settings.samples == 90

    def test_defaults_without_environment(self, monkeypatch):
        for name in ("JORDANLENS_TOL", "JORDANLENS_SAMPLES", "JORDANLENS_WORKERS", "JORDANLENS_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        assert get_settings().tol == DEFAULT_TOL

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("JORDANLENS_TOL", "2")
        with pytest.raises(ValidationError):
            get_settings()

    def test_settings_bounds(self):
        with pytest.raises(ValidationError):
            Settings(samples=2)
