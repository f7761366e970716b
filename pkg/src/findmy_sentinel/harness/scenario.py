"""Scenario description: who carries which trackers where, and how detectors scan."""

import json
import logging
from collections.abc import Callable
from datetime import date, datetime, time, timedelta, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from findmy_sentinel.core.exceptions import ScenarioConfigError, TraceError
from findmy_sentinel.detection.airguard import AirGuardParams
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import ScanSchedule
from findmy_sentinel.models.ios import (
    GeneralFilterParams,
    SingleVisitParams,
    StagingPolicy,
    VisitParams,
)
from findmy_sentinel.models.simulation import (
    AccessoryKind,
    ConnectionState,
    KeyPolicy,
    SimAccessory,
)
from findmy_sentinel.simulation.accessory import make_accessory
from findmy_sentinel.simulation.radio import RadioParams
from findmy_sentinel.simulation.trace import MovementTrace, load_trace_csv

logger = logging.getLogger(__name__)


class AccessorySpec(BaseModel):
    """A tracker placed on the tracker trace."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    kind: AccessoryKind
    category: DeviceCategory | None = None
    key_policy: KeyPolicy | None = None
    key_interval_s: float | None = Field(default=None, gt=0)
    key_seed: int = 0
    paired_at: float = 0.0
    emission_phase_s: float = Field(default=0.0, ge=0)
    conn_state: ConnectionState = ConnectionState.SEPARATED

    @model_validator(mode="after")
    def _buildable(self) -> "AccessorySpec":
        try:
            self.build()
        except ValidationError as e:
            raise ValueError(e.errors()[0]["msg"])
        return self

    def build(self) -> SimAccessory:
        return make_accessory(
            self.id,
            self.kind,
            category=self.category,
            seed=self.key_seed,
            policy=self.key_policy,
            interval_s=self.key_interval_s,
            paired_at=self.paired_at,
            conn_state=self.conn_state,
            emission_phase_s=self.emission_phase_s,
        )


class DetectorOverrides(BaseModel):
    """Per-scenario parameter overrides, applied on top of settings."""

    airguard: dict[str, Any] = Field(default_factory=dict)
    general: dict[str, Any] = Field(default_factory=dict)
    single_visit: dict[str, Any] = Field(default_factory=dict)
    visits: dict[str, Any] = Field(default_factory=dict)
    staging: dict[str, Any] = Field(default_factory=dict)
    radio: dict[str, Any] = Field(default_factory=dict)


def _default_ios_schedule() -> ScanSchedule:
    return ScanSchedule(period_s=120, duration_s=8)


class ScenarioClock(BaseModel):
    """Maps simulation time to wall-clock time.

    Simulation time 0 is ``start_local`` on ``start_date`` in the zone
    ``tz_offset_s`` seconds east of UTC.
    """

    start_date: date = date(2022, 4, 4)
    start_local: time = time(10, 0)
    tz_offset_s: int = Field(default=7200, ge=-14 * 3600, le=14 * 3600)

    @property
    def epoch(self) -> float:
        """Unix time of simulation time 0."""
        tz = timezone(timedelta(seconds=self.tz_offset_s))
        return datetime.combine(self.start_date, self.start_local, tzinfo=tz).timestamp()

    @property
    def local_offset_s(self) -> float:
        """Local seconds since midnight at simulation time 0."""
        t = self.start_local
        return t.hour * 3600 + t.minute * 60 + t.second


class Scenario(ScenarioClock):
    """A reproducible tracking experiment."""

    name: str = Field(min_length=1)
    position: str = ""
    description: str = ""
    seed: int
    home: GeoPoint | None = None
    victim_trace: MovementTrace
    tracker_trace: MovementTrace | None = None  # defaults to the victim trace
    accessories: list[AccessorySpec] = Field(min_length=1)
    airguard_schedule: ScanSchedule = Field(default_factory=ScanSchedule)
    ios_schedule: ScanSchedule = Field(default_factory=_default_ios_schedule)
    detector_overrides: DetectorOverrides = Field(default_factory=DetectorOverrides)

    @model_validator(mode="after")
    def _unique_accessory_ids(self) -> "Scenario":
        ids = [a.id for a in self.accessories]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"duplicate accessory ids: {', '.join(duplicates)}")
        return self

    @property
    def label(self) -> str:
        return self.position or self.name

    @property
    def tracker(self) -> MovementTrace:
        return self.tracker_trace or self.victim_trace

    def build_accessories(self) -> list[SimAccessory]:
        return [spec.build() for spec in self.accessories]

    def radio_params(self, **extra: Any) -> RadioParams:
        overrides = {"tz_offset_s": self.local_offset_s, **self.detector_overrides.radio, **extra}
        return RadioParams.from_settings(**overrides)

    def airguard_params(self) -> AirGuardParams:
        return AirGuardParams.from_settings(**self.detector_overrides.airguard)

    def general_params(self) -> GeneralFilterParams:
        overrides = {"run_period_s": self.ios_schedule.period_s, "tz_offset_s": self.local_offset_s}
        overrides.update(self.detector_overrides.general)
        return GeneralFilterParams.from_settings(**overrides)

    def single_visit_params(self) -> SingleVisitParams:
        return SingleVisitParams.from_settings(**self.detector_overrides.single_visit)

    def visit_params(self) -> VisitParams:
        return VisitParams.from_settings(**self.detector_overrides.visits)

    def staging_policy(self) -> StagingPolicy:
        return StagingPolicy.from_settings(**self.detector_overrides.staging)

    def override_errors(self) -> list[dict[str, str]]:
        """Unknown or out-of-range detector overrides, as field errors."""
        builders: dict[str, tuple[type[BaseModel], Callable[[], BaseModel]]] = {
            "airguard": (AirGuardParams, self.airguard_params),
            "general": (GeneralFilterParams, self.general_params),
            "single_visit": (SingleVisitParams, self.single_visit_params),
            "visits": (VisitParams, self.visit_params),
            "staging": (StagingPolicy, self.staging_policy),
            "radio": (RadioParams, self.radio_params),
        }
        errors: list[dict[str, str]] = []
        for group, (model, build) in builders.items():
            prefix = f"detector_overrides.{group}"
            unknown = sorted(set(getattr(self.detector_overrides, group)) - set(model.model_fields))
            if unknown:
                errors.extend({"field": f"{prefix}.{key}", "message": "unknown parameter"} for key in unknown)
                continue
            try:
                build()
            except ValidationError as e:
                errors.extend(
                    {"field": ".".join([prefix, *(str(p) for p in err["loc"])]), "message": err["msg"]}
                    for err in e.errors()
                )
        return errors

    def check_overrides(self, source: str | None = None) -> None:
        errors = self.override_errors()
        if errors:
            raise ScenarioConfigError(source or self.name, errors)


def _field_errors(error: ValidationError) -> list[dict[str, str]]:
    return [
        {"field": ".".join(str(part) for part in e["loc"]) or "<root>", "message": e["msg"]}
        for e in error.errors()
    ]


def _resolve_trace(value: Any, base_dir: Path, field: str, source: str, epoch: float) -> Any:
    """Replace ``{"csv": path}`` trace references with parsed traces."""
    if not isinstance(value, dict) or "csv" not in value:
        return value
    path = base_dir / value["csv"]
    try:
        return load_trace_csv(path, epoch=epoch)
    except FileNotFoundError:
        raise ScenarioConfigError(source, [{"field": field, "message": f"trace file {path} not found"}])
    except TraceError as e:
        raise ScenarioConfigError(source, [{"field": field, "message": e.message}])


def parse_scenario(
    data: dict[str, Any], source: str = "<memory>", base_dir: Path | None = None
) -> Scenario:
    """Validate a scenario document, reporting every invalid field."""
    base_dir = base_dir or Path.cwd()
    data = dict(data)
    try:
        clock = ScenarioClock.model_validate(
            {k: data[k] for k in ScenarioClock.model_fields if k in data}
        )
        for field in ("victim_trace", "tracker_trace"):
            if field in data:
                data[field] = _resolve_trace(data[field], base_dir, field, source, clock.epoch)
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        raise ScenarioConfigError(source, _field_errors(e))
    scenario.check_overrides(source)
    return scenario


def load_scenario(path: Path) -> Scenario:
    """Load a JSON scenario file; trace CSV paths resolve relative to the file."""
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise ScenarioConfigError(str(path), [{"field": "<file>", "message": "file not found"}])
    except json.JSONDecodeError as e:
        raise ScenarioConfigError(
            str(path), [{"field": "<file>", "message": f"invalid JSON at line {e.lineno}: {e.msg}"}]
        )
    if not isinstance(data, dict):
        raise ScenarioConfigError(str(path), [{"field": "<root>", "message": "expected a JSON object"}])
    logger.info(f"Loaded scenario file {path}")
    return parse_scenario(data, source=str(path), base_dir=path.parent)
