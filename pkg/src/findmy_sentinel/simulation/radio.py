"""Scan-window radio simulation between a victim phone and tracker transmitters."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from findmy_sentinel.codec.advertisement import decode_advertisement
from findmy_sentinel.codec.device_types import classify_device
from findmy_sentinel.config import Settings, settings
from findmy_sentinel.core.exceptions import EmptyOverlapError
from findmy_sentinel.models.codec import AdvertisementMode, DeviceCategory
from findmy_sentinel.models.detection import ScanSchedule, SightingRecord
from findmy_sentinel.models.simulation import SimAccessory
from findmy_sentinel.simulation.accessory import emission_times, emit, step_state
from findmy_sentinel.simulation.keys import rotate_key
from findmy_sentinel.simulation.trace import MovementTrace
from findmy_sentinel.utils.geo import haversine_m

logger = logging.getLogger(__name__)

RSSI_FLOOR = -120.0


class RadioParams(BaseModel):
    """Propagation and reception model."""

    model_config = ConfigDict(frozen=True)

    range_m: float = Field(default=50.0, gt=0)
    rssi_at_1m: float = -61.0
    path_loss_exponent: float = Field(default=2.0, gt=0)
    noise_db: float = Field(default=2.0, ge=0)
    carrier_offset_m: float = Field(default=0.5, gt=0)  # phone-to-tag floor distance
    detection_probability: float = Field(default=1.0, ge=0, le=1)
    tz_offset_s: float = 0.0  # local seconds-of-day at simulation time 0

    @classmethod
    def from_settings(cls, s: Settings | None = None, **overrides) -> "RadioParams":
        s = s or settings
        values = {
            "range_m": s.radio_range_m,
            "rssi_at_1m": s.rssi_at_1m,
            "path_loss_exponent": s.path_loss_exponent,
            "noise_db": s.rssi_noise_db,
            "carrier_offset_m": s.carrier_offset_m,
        }
        values.update(overrides)
        return cls(**values)


def path_loss_rssi(distance_m: float, params: RadioParams) -> float:
    """Mean RSSI at ``distance_m`` under the log-distance model."""
    d = max(distance_m, params.carrier_offset_m)
    return params.rssi_at_1m - 10.0 * params.path_loss_exponent * math.log10(d)


@dataclass
class RadioResult:
    """Sightings produced by one simulation run."""

    sightings: list[SightingRecord] = field(default_factory=list)
    address_owners: dict[str, str] = field(default_factory=dict)  # address hex -> accessory id

    def for_accessory(self, accessory_id: str) -> list[SightingRecord]:
        return [s for s in self.sightings if self.address_owners.get(s.address.hex()) == accessory_id]


class RadioSimulator:
    """Replays the victim and tracker traces through a scan schedule.

    All transmitters ride along the tracker trace; owner spans on that trace
    drive the connection state machine. A scheduled window reports each
    address once, from the first frame it receives while the tracker is
    within radio range.
    """

    def __init__(
        self,
        accessories: list[SimAccessory],
        tracker_trace: MovementTrace,
        victim_trace: MovementTrace,
        schedule: ScanSchedule,
        rng_seed: int,
        params: RadioParams | None = None,
    ):
        self.accessories = accessories
        self.tracker_trace = tracker_trace
        self.victim_trace = victim_trace
        self.schedule = schedule
        self.rng_seed = rng_seed
        self.params = params or RadioParams.from_settings()

    def overlap(self) -> tuple[float, float]:
        start = max(self.victim_trace.start, self.tracker_trace.start)
        end = min(self.victim_trace.end, self.tracker_trace.end)
        if end <= start:
            raise EmptyOverlapError(
                (self.victim_trace.start, self.victim_trace.end),
                (self.tracker_trace.start, self.tracker_trace.end),
            )
        return start, end

    def _advance(self, acc: SimAccessory, now: float) -> SimAccessory:
        acc = step_state(acc, now, self.tracker_trace.owner_in_range(now))
        schedule = rotate_key(acc.key_schedule, now, self.params.tz_offset_s)
        if schedule is not acc.key_schedule:
            acc = acc.model_copy(update={"key_schedule": schedule})
        return acc

    def run(self) -> RadioResult:
        start, end = self.overlap()
        rng = np.random.default_rng(self.rng_seed)
        params = self.params
        result = RadioResult()

        states = list(self.accessories)
        cursor = start
        for window in self.schedule.windows(start, end):
            window_end = min(window.end, end)
            listener = self.victim_trace.position_at(window.start)

            for i, acc in enumerate(states):
                heard: set[bytes] = set()
                # Owner edges move the state machine even between windows
                events = [(e, False) for e in self.tracker_trace.owner_transitions(cursor, window_end)]
                events += [(t, True) for t in emission_times(acc, window.start, window_end)]
                for t, is_emission in sorted(events):
                    acc = self._advance(acc, t)
                    if not is_emission:
                        continue
                    frame = emit(acc, t)
                    if frame is None or frame.address in heard:
                        continue
                    distance = haversine_m(listener, self.tracker_trace.position_at(t))
                    if distance > params.range_m:
                        continue
                    if rng.random() >= params.detection_probability:
                        continue
                    noise = rng.normal(0.0, params.noise_db) if params.noise_db else 0.0
                    rssi = float(np.clip(path_loss_rssi(distance, params) + noise, RSSI_FLOOR, 0.0))

                    decoded = decode_advertisement(frame.address, frame.payload)
                    if decoded.mode is AdvertisementMode.SEPARATED and decoded.status is not None:
                        category = classify_device(decoded.status)
                    else:
                        category = DeviceCategory.OTHER
                    result.sightings.append(
                        SightingRecord(
                            address=decoded.address,
                            category=category,
                            rssi=rssi,
                            at=t,
                            location=listener,
                            mode=decoded.mode,
                            scan_index=window.index,
                        )
                    )
                    result.address_owners[decoded.address.hex()] = acc.id
                    heard.add(decoded.address)
                states[i] = acc
            cursor = window_end

        result.sightings.sort(key=lambda s: (s.at, s.address))
        logger.debug(
            f"Radio simulation produced {len(result.sightings)} sightings "
            f"from {len(self.accessories)} transmitters"
        )
        return result


def run_radio_sim(
    accessories: list[SimAccessory],
    attacker_trace: MovementTrace,
    victim_trace: MovementTrace,
    scan_schedule: ScanSchedule,
    rng_seed: int,
    params: RadioParams | None = None,
) -> list[SightingRecord]:
    """Sightings the victim's scanner records; a pure function of its inputs."""
    simulator = RadioSimulator(
        accessories, attacker_trace, victim_trace, scan_schedule, rng_seed, params
    )
    return simulator.run().sightings
