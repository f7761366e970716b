"""Runs a scenario through the radio simulation and both detection engines."""

import logging
from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict

from findmy_sentinel.detection.airguard import AirGuardDetector
from findmy_sentinel.detection.ios.engine import IosDetector
from findmy_sentinel.harness.scenario import Scenario
from findmy_sentinel.models.codec import AdvertisementMode
from findmy_sentinel.models.detection import (
    DetectorVerdict,
    DeviceRecord,
    ScanWindow,
    SightingRecord,
)
from findmy_sentinel.models.ios import (
    AdvertisementEvent,
    LocationEvent,
    TaEvent,
    UserActivityEvent,
    VehicularState,
    VehicularStateEvent,
)
from findmy_sentinel.models.simulation import UserActivity
from findmy_sentinel.simulation.radio import RadioResult, RadioSimulator

logger = logging.getLogger(__name__)

EngineChoice = Literal["airguard", "ios", "both"]


class ComparisonRow(BaseModel):
    """One tracker/engine outcome of a scenario."""

    model_config = ConfigDict(frozen=True)

    position: str
    tracker: str
    kind: str
    engine: Literal["airguard", "ios"]
    time_to_notification_s: float | None
    locations: int | None  # scan windows with the tracker until notification


@dataclass
class EngineRun:
    """Everything one engine saw and decided during a scenario."""

    radio: RadioResult
    windows: list[ScanWindow]
    verdicts: list[DetectorVerdict]
    events: list[TaEvent] = field(default_factory=list)
    records: list[DeviceRecord] = field(default_factory=list)  # AirGuard device store


@dataclass
class ScenarioRun:
    scenario: Scenario
    rows: list[ComparisonRow]
    airguard: EngineRun | None = None
    ios: EngineRun | None = None


def _simulate(scenario: Scenario, schedule_name: str) -> tuple[RadioResult, list[ScanWindow]]:
    schedule = getattr(scenario, schedule_name)
    simulator = RadioSimulator(
        scenario.build_accessories(),
        scenario.tracker,
        scenario.victim_trace,
        schedule,
        scenario.seed,
        scenario.radio_params(),
    )
    result = simulator.run()
    start, end = simulator.overlap()
    return result, list(schedule.windows(start, end))


def run_airguard(scenario: Scenario) -> EngineRun:
    radio, windows = _simulate(scenario, "airguard_schedule")
    detector = AirGuardDetector(scenario.airguard_params())
    verdicts = detector.replay(radio.sightings, windows)
    return EngineRun(
        radio=radio, windows=windows, verdicts=verdicts, records=detector.store.records()
    )


def window_events(scenario: Scenario, window: ScanWindow, sightings: list[SightingRecord]) -> list[TaEvent]:
    """Phone-side events for one iOS scan: activity, vehicle state, location, adverts."""
    span = scenario.victim_trace.activity_at(window.start)
    activity = span.activity if span else UserActivity.UNKNOWN
    events: list[TaEvent] = [
        UserActivityEvent(at=window.start, activity=activity, speed_mps=span.speed_mps if span else 0.0),
        VehicularStateEvent(
            at=window.start,
            state=VehicularState.VEHICULAR
            if activity is UserActivity.VEHICULAR
            else VehicularState.NON_VEHICULAR,
        ),
        LocationEvent(at=window.start, location=scenario.victim_trace.position_at(window.start)),
    ]
    events.extend(AdvertisementEvent(at=s.at, sighting=s) for s in sightings)
    return events


def run_ios(scenario: Scenario) -> EngineRun:
    radio, windows = _simulate(scenario, "ios_schedule")
    detector = IosDetector(
        general=scenario.general_params(),
        single_visit=scenario.single_visit_params(),
        visits=scenario.visit_params(),
        staging=scenario.staging_policy(),
        home=scenario.home,
        rng_seed=scenario.seed,
    )

    by_window: dict[int, list[SightingRecord]] = {}
    for s in radio.sightings:
        by_window.setdefault(s.scan_index, []).append(s)

    all_events: list[TaEvent] = []
    for window in windows:
        events = window_events(scenario, window, by_window.get(window.index, []))
        detector.add_events(events)
        all_events.extend(events)
        detector.run_cycle(window.end)
    return EngineRun(radio=radio, windows=windows, verdicts=detector.verdicts, events=all_events)


def _rows(scenario: Scenario, engine: Literal["airguard", "ios"], run: EngineRun) -> list[ComparisonRow]:
    rows = []
    for spec in scenario.accessories:
        owned = [
            v for v in run.verdicts
            if run.radio.address_owners.get(v.address.hex()) == spec.id
        ]
        first = min(owned, key=lambda v: v.notified_at) if owned else None
        locations = None
        if first is not None:
            locations = len({
                s.scan_index
                for s in run.radio.for_accessory(spec.id)
                if s.mode is AdvertisementMode.SEPARATED and s.at <= first.notified_at
            })
        rows.append(
            ComparisonRow(
                position=scenario.label,
                tracker=spec.id,
                kind=spec.kind.value,
                engine=engine,
                time_to_notification_s=first.notified_at if first else None,
                locations=locations,
            )
        )
    return rows


def execute_scenario(scenario: Scenario, engine: EngineChoice = "both") -> ScenarioRun:
    """Run a scenario and keep the intermediate results for export."""
    scenario.check_overrides()
    logger.info(f"Running scenario '{scenario.name}' (engine={engine}, seed={scenario.seed})")
    run = ScenarioRun(scenario=scenario, rows=[])
    if engine in ("ios", "both"):
        run.ios = run_ios(scenario)
        run.rows.extend(_rows(scenario, "ios", run.ios))
    if engine in ("airguard", "both"):
        run.airguard = run_airguard(scenario)
        run.rows.extend(_rows(scenario, "airguard", run.airguard))
    notified = sum(1 for row in run.rows if row.time_to_notification_s is not None)
    logger.info(f"Scenario '{scenario.name}' finished: {notified}/{len(run.rows)} rows notified")
    return run


def run_scenario(scenario: Scenario, engine: EngineChoice = "both") -> list[ComparisonRow]:
    """Deterministic comparison rows for every (tracker, engine) pair."""
    return execute_scenario(scenario, engine).rows
