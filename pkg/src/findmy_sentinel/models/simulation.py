"""Simulated transmitters and movement annotations."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from findmy_sentinel.config import settings
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import HexBytes


class AccessoryKind(str, Enum):
    """What kind of transmitter is being simulated."""

    ACCESSORY = "accessory"  # AirTag, Chipolo, AirPods
    APPLE_DEVICE = "apple_device"  # lost iPhone / Mac
    OPEN_HAYSTACK = "open_haystack"  # self-made tag mimicking a lost Apple device
    FAST_ROTATOR = "fast_rotator"  # modified tag rotating keys faster than detectors remember


class ConnectionState(str, Enum):
    """Find My accessory states."""

    UNPAIRED = "unpaired"
    CONNECTED = "connected"
    NEARBY = "nearby"
    SEPARATED = "separated"


class KeyPolicy(str, Enum):
    """When the public key (and therefore the address) changes."""

    DAILY_AT_4AM_LOCAL = "daily_at_4am_local"
    EVERY_15_MIN = "every_15_min"
    STATIC = "static"
    EVERY_INTERVAL = "every_interval"


class KeySchedule(BaseModel):
    """Key rotation state of one transmitter."""

    model_config = ConfigDict(frozen=True)

    policy: KeyPolicy
    seed: int
    interval_s: float | None = Field(default=None, gt=0)
    paired_at: float = 0.0
    rotation_index: int = 0
    current_key: HexBytes = Field(min_length=28, max_length=28)

    @model_validator(mode="after")
    def _interval_required(self) -> "KeySchedule":
        if self.policy is KeyPolicy.EVERY_INTERVAL and self.interval_s is None:
            raise ValueError("interval_s is required for the every_interval policy")
        return self


class SimAccessory(BaseModel):
    """A simulated Find My transmitter."""

    model_config = ConfigDict(frozen=True)

    id: str
    kind: AccessoryKind
    category: DeviceCategory
    key_schedule: KeySchedule
    conn_state: ConnectionState = ConnectionState.SEPARATED
    nearby_entered_at: float | None = None
    emission_interval_s: float = Field(default_factory=lambda: settings.emission_interval_s, gt=0)
    emission_phase_s: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _category_matches_kind(self) -> "SimAccessory":
        if self.kind is AccessoryKind.ACCESSORY and self.category is DeviceCategory.OTHER:
            raise ValueError("accessories must use the durian, hawkeye or hele category")
        if (
            self.kind in (AccessoryKind.APPLE_DEVICE, AccessoryKind.OPEN_HAYSTACK)
            and self.category is not DeviceCategory.OTHER
        ):
            raise ValueError(f"{self.kind.value} transmitters use the 'other' category")
        return self


class UserActivity(str, Enum):
    """Motion classification of the victim's phone."""

    STATIC = "static"
    PEDESTRIAN = "pedestrian"
    VEHICULAR = "vehicular"
    UNKNOWN = "unknown"


class ActivitySpan(BaseModel):
    """Activity annotation covering ``[start, end)``."""

    model_config = ConfigDict(frozen=True)

    start: float
    end: float
    activity: UserActivity
    speed_mps: float = Field(default=0.0, ge=0)


class OwnerSpan(BaseModel):
    """Interval ``[start, end)`` during which the owner device is in range."""

    model_config = ConfigDict(frozen=True)

    start: float
    end: float
