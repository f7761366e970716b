"""Tests for expectation files."""

import json
from pathlib import Path

import pytest

from findmy_sentinel.core.exceptions import ExpectationMismatchError, ScenarioConfigError
from findmy_sentinel.harness.expectations import (
    Expectations,
    RowExpectation,
    check_expectations,
    load_expectations,
    verify_expectations,
)
from findmy_sentinel.harness.runner import ComparisonRow


def row(tracker: str, engine: str, time: float | None, locations: int | None = None) -> ComparisonRow:
    return ComparisonRow(
        position="Pocket", tracker=tracker, kind="accessory", engine=engine,
        time_to_notification_s=time, locations=locations,
    )


ROWS = [row("AirTag", "airguard", 2120, 3), row("OpenHaystack", "ios", None)]


class TestCheck:
    def test_all_met(self) -> None:
        expectations = Expectations(
            rows=[
                RowExpectation(engine="airguard", min_time_s=1800, max_time_s=2700, locations=3),
                RowExpectation(tracker="OpenHaystack", notified=False),
            ]
        )
        assert check_expectations(ROWS, expectations) == []

    def test_time_bounds(self) -> None:
        expectations = Expectations(rows=[RowExpectation(engine="airguard", max_time_s=2000)])
        [mismatch] = check_expectations(ROWS, expectations)
        assert "above 2000" in mismatch

    def test_notified_flag(self) -> None:
        expectations = Expectations(rows=[RowExpectation(tracker="OpenHaystack", notified=True)])
        assert len(check_expectations(ROWS, expectations)) == 1

    def test_missing_time_fails_bounds(self) -> None:
        expectations = Expectations(rows=[RowExpectation(tracker="OpenHaystack", min_time_s=0)])
        assert len(check_expectations(ROWS, expectations)) == 1

    def test_no_matching_rows(self) -> None:
        expectations = Expectations(rows=[RowExpectation(position="Car")])
        assert check_expectations(ROWS, expectations) == ["Car: no matching rows"]

    def test_verify_raises_with_mismatches(self) -> None:
        expectations = Expectations(rows=[RowExpectation(engine="airguard", locations=4)])
        with pytest.raises(ExpectationMismatchError) as exc:
            verify_expectations(ROWS, expectations)
        assert exc.value.code == "EXPECTATION_MISMATCH"
        assert len(exc.value.details["mismatches"]) == 1


class TestLoad:
    def test_load(self, tmp_path: Path) -> None:
        path = tmp_path / "expect.json"
        path.write_text(json.dumps({"rows": [{"tracker": "AirTag", "notified": True}]}))
        assert load_expectations(path).rows[0].tracker == "AirTag"

    @pytest.mark.parametrize(
        "content",
        ["{not json", json.dumps({"rows": []}), json.dumps({"rows": [{"engine": "android"}]})],
    )
    def test_invalid(self, tmp_path: Path, content: str) -> None:
        path = tmp_path / "expect.json"
        path.write_text(content)
        with pytest.raises(ScenarioConfigError):
            load_expectations(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ScenarioConfigError, match="file not found"):
            load_expectations(tmp_path / "absent.json")
