"""Sightings, device records, scan schedules and detector verdicts."""

import math
from collections.abc import Iterator
from enum import Enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from findmy_sentinel.config import settings
from findmy_sentinel.models.codec import AdvertisementMode, DeviceCategory
from findmy_sentinel.models.common import GeoPoint, HexBytes


class SightingRecord(BaseModel):
    """One reception of a device during a scan window."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes = Field(min_length=6, max_length=6)
    category: DeviceCategory
    rssi: float = Field(ge=-120.0, le=0.0)
    at: float
    location: GeoPoint
    mode: AdvertisementMode = AdvertisementMode.SEPARATED
    scan_index: int = 0  # scan window that produced the sighting


class DeviceRecord(BaseModel):
    """Per-address sighting history kept by the AirGuard store."""

    address: HexBytes = Field(min_length=6, max_length=6)
    category: DeviceCategory
    sightings: list[SightingRecord] = Field(default_factory=list)
    last_alert_at: float | None = None

    @property
    def scan_windows(self) -> int:
        """Number of distinct scan windows in which the device was heard."""
        return len({s.scan_index for s in self.sightings})

    @property
    def span(self) -> float:
        if not self.sightings:
            return 0.0
        return self.sightings[-1].at - self.sightings[0].at


class ScanWindow(NamedTuple):
    """A single scheduled scan."""

    index: int
    start: float
    end: float


class ScanSchedule(BaseModel):
    """Recurring BLE scan: one window of ``duration_s`` every ``period_s``."""

    model_config = ConfigDict(frozen=True)

    period_s: float = Field(default_factory=lambda: settings.scan_period_s, gt=0)
    duration_s: float = Field(default_factory=lambda: settings.scan_duration_s, gt=0)
    offset_s: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _period_covers_duration(self) -> "ScanSchedule":
        if self.period_s < self.duration_s:
            raise ValueError("period_s must be >= duration_s")
        return self

    def windows(self, origin: float, until: float) -> Iterator[ScanWindow]:
        """Yield the scan windows that start in ``[origin, until)``.

        Windows are numbered from ``origin``; the first starts at
        ``origin + offset_s``.
        """
        first = origin + self.offset_s
        count = max(0, math.ceil((until - first) / self.period_s))
        for index in range(count):
            start = first + index * self.period_s
            yield ScanWindow(index, start, start + self.duration_s)


class Engine(str, Enum):
    """Detector that produced a verdict."""

    AIRGUARD = "airguard"
    IOS_GENERAL = "ios_general"
    IOS_VISIT = "ios_visit"
    IOS_SINGLE_VISIT = "ios_single_visit"


class DetectorVerdict(BaseModel):
    """A notification raised by one of the detection engines."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes = Field(min_length=6, max_length=6)
    category: DeviceCategory
    engine: Engine
    notified_at: float
    first_seen_at: float
    sighting_count: int = Field(ge=0)  # distinct scan windows up to the verdict
    span: float = Field(ge=0)
    distance: float = Field(ge=0)
