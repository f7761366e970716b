"""Tests for persistence layer."""

import json
from pathlib import Path

import pytest

from findmy_sentinel.analytics import fleet_report, synthetic_fleet
from findmy_sentinel.core.exceptions import PersistenceError
from findmy_sentinel.models.ios import AdvertisementEvent, LocationEvent
from findmy_sentinel.persistence.exports import ExportStore, read_fleet_events, read_ta_events
from findmy_sentinel.persistence.storage import (
    append_jsonl,
    atomic_write,
    read_jsonl,
    run_id,
    safe_read,
    write_jsonl,
)
from tests.conftest import ORIGIN, make_sighting


class TestStorageFunctions:
    """Tests for storage utility functions."""

    def test_run_id_consistent(self) -> None:
        assert run_id("pocket", 7, "both") == run_id("pocket", 7, "both")
        assert run_id("pocket", 7, "both") != run_id("pocket", 8, "both")
        assert len(run_id("pocket", 7, "both")) == 12

    async def test_atomic_write_and_safe_read(self, tmp_path: Path) -> None:
        """Test atomic write and safe read."""
        file_path = tmp_path / "nested" / "test.json"
        data = {"key": "value", "number": 42}

        await atomic_write(file_path, data)

        assert await safe_read(file_path) == data
        assert not file_path.with_suffix(".json.tmp").exists()

    async def test_safe_read_nonexistent_file(self, tmp_path: Path) -> None:
        assert await safe_read(tmp_path / "nonexistent.json") is None

    async def test_safe_read_invalid_json(self, tmp_path: Path) -> None:
        file_path = tmp_path / "bad.json"
        file_path.write_text("{oops")

        with pytest.raises(PersistenceError) as exc:
            await safe_read(file_path)
        assert exc.value.code == "INVALID_JSON"

    async def test_jsonl_write_append_read(self, tmp_path: Path) -> None:
        file_path = tmp_path / "records.jsonl"

        await write_jsonl(file_path, [{"a": 1}])
        await append_jsonl(file_path, [{"a": 2}, {"a": 3}])

        assert await read_jsonl(file_path) == [{"a": 1}, {"a": 2}, {"a": 3}]

    async def test_read_jsonl_reports_line(self, tmp_path: Path) -> None:
        file_path = tmp_path / "records.jsonl"
        file_path.write_text('{"a": 1}\n\nnot json\n')

        with pytest.raises(PersistenceError) as exc:
            await read_jsonl(file_path)
        assert exc.value.code == "INVALID_JSON"
        assert exc.value.details["line"] == 3

    async def test_read_jsonl_missing(self, tmp_path: Path) -> None:
        with pytest.raises(PersistenceError) as exc:
            await read_jsonl(tmp_path / "absent.jsonl")
        assert exc.value.code == "NOT_FOUND"


class TestEventFiles:
    async def test_read_ta_events(self, tmp_path: Path) -> None:
        events = [
            LocationEvent(at=0, location=ORIGIN),
            AdvertisementEvent(at=5, sighting=make_sighting(5)),
        ]
        path = tmp_path / "events.jsonl"
        await write_jsonl(path, (e.model_dump(mode="json") for e in events))

        assert await read_ta_events(path) == events

    async def test_read_ta_events_rejects_unknown_kind(self, tmp_path: Path) -> None:
        path = tmp_path / "events.jsonl"
        path.write_text(json.dumps({"kind": "telepathy", "at": 1}) + "\n")

        with pytest.raises(PersistenceError) as exc:
            await read_ta_events(path)
        assert exc.value.code == "INVALID_EVENTS"

    async def test_read_fleet_events(self, tmp_path: Path) -> None:
        events = synthetic_fleet(users=15, days=3)
        path = tmp_path / "fleet.jsonl"
        await write_jsonl(path, (e.model_dump(mode="json") for e in events))

        assert await read_fleet_events(path) == events

    async def test_read_fleet_events_invalid(self, tmp_path: Path) -> None:
        path = tmp_path / "fleet.jsonl"
        path.write_text(json.dumps({"at": 1}) + "\n")

        with pytest.raises(PersistenceError, match="Invalid fleet event"):
            await read_fleet_events(path)


class TestExportStore:
    async def test_export_run(self, export_store: ExportStore, pocket_run) -> None:
        directory = await export_store.export_run(pocket_run)

        assert directory == export_store.run_dir("pocket", pocket_run.scenario.seed, "both")
        rows = json.loads((directory / "rows.json").read_text())
        assert len(rows["rows"]) == len(pocket_run.rows)
        for name in ("verdicts.jsonl", "devices.jsonl", "sightings-ios.jsonl", "sightings-airguard.jsonl"):
            assert (directory / name).exists()

        verdicts = await export_store.load_verdicts(directory / "verdicts.jsonl")
        expected = [*pocket_run.ios.verdicts, *pocket_run.airguard.verdicts]
        assert verdicts == expected

    async def test_export_fleet(self, export_store: ExportStore) -> None:
        report = fleet_report(synthetic_fleet(users=20, days=21))

        directory = await export_store.export_fleet(report, name="weekly")

        assert directory == export_store.base_dir / "weekly"
        assert (directory / "fleet_report.json").exists()
        assert sorted(p.name for p in directory.glob("*.csv")) == [
            "device_types.csv",
            "mean_rssi.csv",
            "notifications_per_user.csv",
            "risk_series.csv",
        ]
