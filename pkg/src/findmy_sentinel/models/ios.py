"""TrackingAvoidance event store models and detector parameters."""

from enum import Enum
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from findmy_sentinel.config import Settings, settings
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import GeoPoint, HexBytes
from findmy_sentinel.models.detection import Engine, SightingRecord
from findmy_sentinel.models.simulation import UserActivity


class SystemState(str, Enum):
    """System states recorded in the event store."""

    DISPLAY_ON = "display_on"
    DEVICE_UNLOCKED_SINCE_BOOT = "device_unlocked_since_boot"
    HAS_KOREA_COUNTRY_CODE = "has_korea_country_code"
    WIFI = "wifi"
    LOCATION_SERVICES = "location_services"
    BATTERY_SAVER = "battery_saver"
    HIGH_THERMAL = "high_thermal"
    AP = "ap"


class VehicularState(str, Enum):
    VEHICULAR = "vehicular"
    NON_VEHICULAR = "non_vehicular"


class SystemStateEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["system_state"] = "system_state"
    at: float
    state: SystemState
    active: bool = True


class UserActivityEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["user_activity"] = "user_activity"
    at: float
    activity: UserActivity
    speed_mps: float = Field(default=0.0, ge=0)


class VehicularStateEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["vehicular_state"] = "vehicular_state"
    at: float
    state: VehicularState


class LocationEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["location"] = "location"
    at: float
    location: GeoPoint


class AdvertisementEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["advertisement"] = "advertisement"
    at: float
    sighting: SightingRecord


TaEvent = Annotated[
    SystemStateEvent | UserActivityEvent | VehicularStateEvent | LocationEvent | AdvertisementEvent,
    Field(discriminator="kind"),
]

# Parses one JSON-lines record into the matching event class
ta_event_adapter: TypeAdapter[TaEvent] = TypeAdapter(TaEvent)


class StoreViews(BaseModel):
    """Derived store state consumed by the general filter."""

    model_config = ConfigDict(frozen=True)

    dominant_user_activity: UserActivity = UserActivity.UNKNOWN
    walking_speed: float | None = None
    last_vehicular_state: VehicularState | None = None
    people_density: bool = False

    @property
    def is_in_vehicle(self) -> bool:
        return self.last_vehicular_state is VehicularState.VEHICULAR


class GeneralFilterParams(BaseModel):
    """General filter thresholds; distance and duration checks are strict."""

    model_config = ConfigDict(frozen=True)

    recency_window_s: float = Field(default=15 * 60, gt=0)
    threshold_duration_s: float = Field(default=10 * 60, gt=0)
    threshold_distance_m: float = Field(default=840.0, gt=0)
    run_period_s: float = Field(default=2 * 60, ge=2 * 60, le=5 * 60)
    max_walking_speed_mps: float = Field(default=3.0, gt=0)
    recency_mode: Literal["window", "day"] = "window"
    tz_offset_s: float = 0.0  # local seconds-of-day at simulation time 0, for "day" mode

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "GeneralFilterParams":
        s = s or settings
        values = {
            "recency_window_s": s.ios_recency_window_s,
            "threshold_duration_s": s.ios_threshold_duration_s,
            "threshold_distance_m": s.ios_threshold_distance_m,
            "run_period_s": s.ios_run_period_s,
            "max_walking_speed_mps": s.ios_max_walking_speed_mps,
        }
        values.update(overrides)
        return cls(**values)


class SingleVisitParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    recency_s: float = Field(default=5 * 60, gt=0)
    distance_m: float = Field(default=420.0, gt=0)
    duration_s: float = Field(default=300.0, gt=0)

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "SingleVisitParams":
        s = s or settings
        values = {
            "recency_s": s.single_visit_recency_s,
            "distance_m": s.single_visit_distance_m,
            "duration_s": s.single_visit_duration_s,
        }
        values.update(overrides)
        return cls(**values)


class VisitParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    radius_m: float = Field(default=50.0, gt=0)
    min_dwell_s: float = Field(default=10 * 60, gt=0)

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "VisitParams":
        s = s or settings
        values = {"radius_m": s.visit_radius_m, "min_dwell_s": s.visit_min_dwell_s}
        values.update(overrides)
        return cls(**values)


class Visit(BaseModel):
    """A dwell at one location; ``departure`` is None while it is ongoing."""

    arrival: float
    departure: float | None = None
    location: GeoPoint
    devices: dict[str, DeviceCategory] = Field(default_factory=dict)  # address hex -> category

    @model_validator(mode="after")
    def _arrival_before_departure(self) -> "Visit":
        if self.departure is not None and self.departure <= self.arrival:
            raise ValueError("departure must be after arrival")
        return self


class StagingPolicy(BaseModel):
    """Deferred-notification policy for suspicious devices away from home."""

    model_config = ConfigDict(frozen=True)

    staging_duration_s: float = Field(default=2.5 * 3600, gt=0)
    prolong_duration_s: float = Field(default=1.5 * 3600, gt=0)
    max_prolongs: int = Field(default=1, ge=0)
    prolong_jitter_s: float = Field(default=0.0, ge=0)
    home_radius_m: float = Field(default=100.0, gt=0)

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "StagingPolicy":
        s = s or settings
        values = {
            "staging_duration_s": s.staging_duration_s,
            "prolong_duration_s": s.prolong_duration_s,
            "max_prolongs": s.max_prolongs,
            "home_radius_m": s.home_radius_m,
        }
        values.update(overrides)
        return cls(**values)


class Suspicion(BaseModel):
    """A device one of the detectors marked suspicious."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes = Field(min_length=6, max_length=6)
    category: DeviceCategory
    engine: Engine
    distance_m: float = Field(ge=0)
    duration_s: float = Field(ge=0)


class StagingEntry(BaseModel):
    """A suspicious device waiting for its notification."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes = Field(min_length=6, max_length=6)
    category: DeviceCategory
    engine: Engine
    staged_at: float
    staging_end: float
    prolong_count: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _end_after_start(self) -> "StagingEntry":
        if self.staging_end <= self.staged_at:
            raise ValueError("staging_end must be after staged_at")
        return self
