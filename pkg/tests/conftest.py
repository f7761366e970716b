"""Global test fixtures."""

from collections.abc import AsyncGenerator
from pathlib import Path

import pytest
import pytest_asyncio
from httpx import ASGITransport, AsyncClient

from findmy_sentinel.config import Settings
from findmy_sentinel.harness.canonical import backpack, car, pocket
from findmy_sentinel.harness.runner import ComparisonRow, ScenarioRun, execute_scenario
from findmy_sentinel.harness.scenario import Scenario
from findmy_sentinel.main import create_app
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import SightingRecord
from findmy_sentinel.persistence.exports import ExportStore

ORIGIN = GeoPoint(lat=49.8728, lon=8.6512)


@pytest.fixture
def tmp_data_dir(tmp_path: Path) -> Path:
    data_dir = tmp_path / ".findmy-sentinel"
    data_dir.mkdir(parents=True)
    return data_dir


@pytest.fixture
def test_settings(tmp_data_dir: Path) -> Settings:
    return Settings(host="127.0.0.1", port=5681, debug=False, data_dir=tmp_data_dir)


@pytest.fixture
def export_store(tmp_data_dir: Path) -> ExportStore:
    return ExportStore(base_dir=tmp_data_dir / "exports")


@pytest_asyncio.fixture
async def client(export_store: ExportStore) -> AsyncGenerator[AsyncClient, None]:
    """HTTP client against an app whose state is set up by hand (no lifespan)."""
    app = create_app()
    app.state.export_store = export_store
    async with AsyncClient(
        transport=ASGITransport(app=app),
        base_url="http://test",
    ) as client:
        yield client


def make_sighting(
    at: float,
    address: bytes = b"\xc1\x02\x03\x04\x05\x06",
    location: GeoPoint = ORIGIN,
    category: DeviceCategory = DeviceCategory.DURIAN,
    scan_index: int | None = None,
    rssi: float = -70.0,
) -> SightingRecord:
    return SightingRecord(
        address=address,
        category=category,
        rssi=rssi,
        at=at,
        location=location,
        scan_index=int(at) if scan_index is None else scan_index,
    )


@pytest.fixture
def sighting_factory():
    return make_sighting


# Canonical runs are deterministic; run each once per test session


@pytest.fixture(scope="session")
def pocket_run() -> ScenarioRun:
    return execute_scenario(pocket())


@pytest.fixture(scope="session")
def backpack_run() -> ScenarioRun:
    return execute_scenario(backpack())


@pytest.fixture(scope="session")
def car_run() -> ScenarioRun:
    return execute_scenario(car())


@pytest.fixture(scope="session")
def canonical_rows(pocket_run, backpack_run, car_run) -> list[ComparisonRow]:
    return [*pocket_run.rows, *backpack_run.rows, *car_run.rows]


@pytest.fixture
def pocket_scenario() -> Scenario:
    return pocket()


def row_for(rows: list[ComparisonRow], tracker: str, engine: str) -> ComparisonRow:
    return next(r for r in rows if r.tracker == tracker and r.engine == engine)
