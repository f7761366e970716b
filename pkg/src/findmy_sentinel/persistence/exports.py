"""Per-run export directories: device stores, verdicts, comparison rows, fleet reports."""

import logging
from pathlib import Path

from pydantic import ValidationError

from findmy_sentinel.analytics.fleet import AnonymizedEvent, FleetReport
from findmy_sentinel.config import settings
from findmy_sentinel.core.exceptions import PersistenceError
from findmy_sentinel.harness.report import fleet_csv_tables
from findmy_sentinel.harness.runner import ScenarioRun
from findmy_sentinel.models.detection import DetectorVerdict
from findmy_sentinel.models.ios import TaEvent, ta_event_adapter
from findmy_sentinel.persistence.storage import (
    atomic_write,
    atomic_write_text,
    read_jsonl,
    run_id,
    write_jsonl,
)

logger = logging.getLogger(__name__)


class ExportStore:
    """Writes run artifacts under ``<base_dir>/<scenario>-<run id>/``.

    Layout of a scenario run directory::

        rows.json             comparison rows
        verdicts.jsonl        every verdict, tagged with its engine
        devices.jsonl         AirGuard device store at the end of the run
        sightings-<eng>.jsonl radio sightings per engine schedule
    """

    def __init__(self, base_dir: Path | None = None):
        self.base_dir = base_dir or settings.exports_dir

    def run_dir(self, scenario: str, seed: int, engine: str) -> Path:
        return self.base_dir / f"{scenario}-{run_id(scenario, seed, engine)}"

    async def export_run(self, run: ScenarioRun, engine: str = "both") -> Path:
        directory = self.run_dir(run.scenario.name, run.scenario.seed, engine)
        await atomic_write(
            directory / "rows.json",
            {
                "scenario": run.scenario.name,
                "seed": run.scenario.seed,
                "rows": [row.model_dump(mode="json") for row in run.rows],
            },
        )

        verdicts = []
        for name, engine_run in (("ios", run.ios), ("airguard", run.airguard)):
            if engine_run is None:
                continue
            verdicts.extend(v.model_dump(mode="json") for v in engine_run.verdicts)
            await write_jsonl(
                directory / f"sightings-{name}.jsonl",
                (s.model_dump(mode="json") for s in engine_run.radio.sightings),
            )
        await write_jsonl(directory / "verdicts.jsonl", verdicts)

        if run.airguard is not None:
            await write_jsonl(
                directory / "devices.jsonl",
                (r.model_dump(mode="json") for r in run.airguard.records),
            )
        logger.info(f"Exported run '{run.scenario.name}' to {directory}")
        return directory

    async def export_fleet(self, report: FleetReport, name: str = "fleet") -> Path:
        """Write the report JSON plus one CSV per figure."""
        directory = self.base_dir / name
        await atomic_write(directory / "fleet_report.json", report.model_dump(mode="json"))
        for figure, text in fleet_csv_tables(report).items():
            await atomic_write_text(directory / f"{figure}.csv", text)
        logger.info(f"Exported fleet report to {directory}")
        return directory

    async def load_verdicts(self, path: Path) -> list[DetectorVerdict]:
        return [DetectorVerdict.model_validate(r) for r in await read_jsonl(path)]


async def read_fleet_events(path: Path) -> list[AnonymizedEvent]:
    """Load donated events from a JSON-lines file."""
    records = await read_jsonl(path)
    try:
        return [AnonymizedEvent.model_validate(r) for r in records]
    except ValidationError as e:
        raise PersistenceError(
            code="INVALID_EVENTS",
            message=f"Invalid fleet event in {path}: {e.errors()[0]['msg']}",
            details={"path": str(path)},
        )


async def read_ta_events(path: Path) -> list[TaEvent]:
    """Load a recorded iOS event stream from a JSON-lines file."""
    records = await read_jsonl(path)
    try:
        return [ta_event_adapter.validate_python(r) for r in records]
    except ValidationError as e:
        raise PersistenceError(
            code="INVALID_EVENTS",
            message=f"Invalid event in {path}: {e.errors()[0]['msg']}",
            details={"path": str(path)},
        )
