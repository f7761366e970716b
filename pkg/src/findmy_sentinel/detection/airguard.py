"""AirGuard tracker classification.

After every scheduled scan the detector stores the separated-state Find My
advertisements it received, keyed by BLE address, and raises a notification
for a device that

* has been seen across at least the minimum duration,
* in at least three distinct scans,
* while the user travelled at least the minimum distance,
* and was not already notified within the cooldown window.
"""

import logging
from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field

from findmy_sentinel.config import Settings, settings
from findmy_sentinel.models.codec import AdvertisementMode, DeviceCategory
from findmy_sentinel.models.common import HexBytes
from findmy_sentinel.models.detection import (
    DetectorVerdict,
    DeviceRecord,
    Engine,
    ScanWindow,
    SightingRecord,
)
from findmy_sentinel.utils.geo import haversine_m

logger = logging.getLogger(__name__)


class AirGuardParams(BaseModel):
    """Classifier thresholds. All comparisons are inclusive."""

    model_config = ConfigDict(frozen=True)

    min_duration_s: float = Field(default=30 * 60, gt=0)
    min_sightings: int = Field(default=3, ge=1)
    min_distance_m: float = Field(default=400.0, ge=0)
    alert_cooldown_s: float = Field(default=7 * 3600, ge=0)
    other_min_duration_s: float | None = Field(default=None, gt=0)
    rssi_at_1m: float = -61.0
    path_loss_exponent: float = Field(default=2.0, gt=0)

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "AirGuardParams":
        s = s or settings
        values = {
            "min_duration_s": s.airguard_min_duration_s,
            "min_sightings": s.airguard_min_sightings,
            "min_distance_m": s.airguard_min_distance_m,
            "alert_cooldown_s": s.airguard_alert_cooldown_s,
            "other_min_duration_s": s.airguard_other_min_duration_s,
            "rssi_at_1m": s.rssi_at_1m,
            "path_loss_exponent": s.path_loss_exponent,
        }
        values.update(overrides)
        return cls(**values)

    def duration_for(self, category: DeviceCategory) -> float:
        if category is DeviceCategory.OTHER and self.other_min_duration_s is not None:
            return self.other_min_duration_s
        return self.min_duration_s


class DeviceStore:
    """Per-address sighting history."""

    def __init__(self) -> None:
        self._devices: dict[bytes, DeviceRecord] = {}

    def __len__(self) -> int:
        return len(self._devices)

    def __contains__(self, address: bytes) -> bool:
        return address in self._devices

    def get(self, address: bytes) -> DeviceRecord | None:
        return self._devices.get(address)

    def records(self) -> list[DeviceRecord]:
        return list(self._devices.values())

    def add(self, sighting: SightingRecord) -> DeviceRecord:
        record = self._devices.get(sighting.address)
        if record is None:
            record = DeviceRecord(address=sighting.address, category=sighting.category)
            self._devices[sighting.address] = record
        record.sightings.append(sighting)
        return record


def ingest_scan(store: DeviceStore, scan_results: Iterable[SightingRecord], now: float) -> DeviceStore:
    """Append separated-state sightings to the store; nearby frames are dropped."""
    kept = 0
    for sighting in sorted(scan_results, key=lambda s: s.at):
        if sighting.mode is not AdvertisementMode.SEPARATED:
            continue
        store.add(sighting)
        kept += 1
    logger.debug(f"Scan at {now:.0f}s: stored {kept} separated sightings, {len(store)} devices")
    return store


def travel_distance(sightings: list[SightingRecord]) -> float:
    """Path length through consecutive sighting locations, in metres."""
    return sum(
        haversine_m(a.location, b.location) for a, b in zip(sightings, sightings[1:])
    )


def rssi_to_distance(rssi: float, rssi_at_1m: float = -61.0, path_loss_exponent: float = 2.0) -> float:
    """Log-distance estimate of how far away a transmitter is."""
    return 10 ** ((rssi_at_1m - rssi) / (10 * path_loss_exponent))


def classify(store: DeviceStore, now: float, params: AirGuardParams | None = None) -> list[DetectorVerdict]:
    """Evaluate every stored device; flagged devices get ``last_alert_at = now``."""
    params = params or AirGuardParams.from_settings()
    verdicts: list[DetectorVerdict] = []

    for record in store.records():
        if record.last_alert_at is not None and now - record.last_alert_at < params.alert_cooldown_s:
            continue
        windows = record.scan_windows
        if windows < params.min_sightings:
            continue
        span = record.span
        if span < params.duration_for(record.category):
            continue
        distance = travel_distance(record.sightings)
        if distance < params.min_distance_m:
            continue

        record.last_alert_at = now
        verdict = DetectorVerdict(
            address=record.address,
            category=record.category,
            engine=Engine.AIRGUARD,
            notified_at=now,
            first_seen_at=record.sightings[0].at,
            sighting_count=windows,
            span=span,
            distance=distance,
        )
        logger.info(
            f"AirGuard notification for {record.address.hex(':')} ({record.category.value}) "
            f"after {span:.0f}s over {distance:.0f}m in {windows} scans"
        )
        verdicts.append(verdict)
    return verdicts


class ManualScanEntry(BaseModel):
    """One row of a manual scan listing."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes
    category: DeviceCategory
    rssi: float
    estimated_distance_m: float
    last_seen_at: float


def manual_scan(
    sightings: Iterable[SightingRecord], params: AirGuardParams | None = None
) -> list[ManualScanEntry]:
    """Latest separated sighting per device with an RSSI distance estimate, nearest first."""
    params = params or AirGuardParams.from_settings()
    latest: dict[bytes, SightingRecord] = {}
    for s in sightings:
        if s.mode is not AdvertisementMode.SEPARATED:
            continue
        if s.address not in latest or s.at >= latest[s.address].at:
            latest[s.address] = s

    entries = [
        ManualScanEntry(
            address=s.address,
            category=s.category,
            rssi=s.rssi,
            estimated_distance_m=rssi_to_distance(s.rssi, params.rssi_at_1m, params.path_loss_exponent),
            last_seen_at=s.at,
        )
        for s in latest.values()
    ]
    return sorted(entries, key=lambda e: (e.estimated_distance_m, e.address))


class AirGuardDetector:
    """Runs ingest and classification after every scan."""

    def __init__(self, params: AirGuardParams | None = None):
        self.params = params or AirGuardParams.from_settings()
        self.store = DeviceStore()
        self.verdicts: list[DetectorVerdict] = []

    def on_scan(self, results: list[SightingRecord], now: float) -> list[DetectorVerdict]:
        ingest_scan(self.store, results, now)
        verdicts = classify(self.store, now, self.params)
        self.verdicts.extend(verdicts)
        return verdicts

    def replay(self, sightings: list[SightingRecord], windows: Iterable[ScanWindow]) -> list[DetectorVerdict]:
        """Feed sightings window by window; classification runs at each window end."""
        by_window: dict[int, list[SightingRecord]] = {}
        for s in sightings:
            by_window.setdefault(s.scan_index, []).append(s)
        for window in windows:
            self.on_scan(by_window.get(window.index, []), window.end)
        return self.verdicts
