"""Event store with per-device sighting history and derived views."""

import bisect
import logging
from collections import Counter

from findmy_sentinel.models.codec import AdvertisementMode
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import SightingRecord
from findmy_sentinel.models.ios import (
    AdvertisementEvent,
    LocationEvent,
    StoreViews,
    TaEvent,
    UserActivityEvent,
    VehicularStateEvent,
)
from findmy_sentinel.models.simulation import UserActivity

logger = logging.getLogger(__name__)


class TaStore:
    """Time-ordered events plus the separated-state sightings of each address."""

    def __init__(self) -> None:
        self.events: list[TaEvent] = []
        self.devices: dict[bytes, list[SightingRecord]] = {}

    def add(self, event: TaEvent) -> None:
        if self.events and event.at < self.events[-1].at:
            bisect.insort(self.events, event, key=lambda e: e.at)
        else:
            self.events.append(event)

        if isinstance(event, AdvertisementEvent):
            sighting = event.sighting
            if sighting.mode is not AdvertisementMode.SEPARATED:
                return
            history = self.devices.setdefault(sighting.address, [])
            bisect.insort(history, sighting, key=lambda s: s.at)

    def add_all(self, events: list[TaEvent]) -> None:
        for event in events:
            self.add(event)

    def sightings(self, address: bytes, start: float | None = None, end: float | None = None) -> list[SightingRecord]:
        """Sightings of ``address`` with ``start < at <= end``."""
        history = self.devices.get(address, [])
        return [
            s for s in history
            if (start is None or s.at > start) and (end is None or s.at <= end)
        ]

    def last_seen(self, address: bytes) -> float | None:
        history = self.devices.get(address)
        return history[-1].at if history else None

    def forget(self, address: bytes) -> None:
        self.devices.pop(address, None)

    def latest_location(self, now: float) -> GeoPoint | None:
        for event in reversed(self.events):
            if event.at <= now and isinstance(event, LocationEvent):
                return event.location
        return None


def derive_views(store: TaStore, now: float, recency_window_s: float) -> StoreViews:
    """Summarise activity and vehicle state for the window ``(now - recency, now]``."""
    start = now - recency_window_s
    activities: list[UserActivityEvent] = []
    last_vehicular: VehicularStateEvent | None = None
    for event in store.events:
        if event.at > now:
            break
        if isinstance(event, VehicularStateEvent):
            last_vehicular = event
        elif isinstance(event, UserActivityEvent) and event.at > start:
            activities.append(event)

    dominant = UserActivity.UNKNOWN
    counts = Counter(e.activity for e in activities).most_common(2)
    if counts and (len(counts) == 1 or counts[0][1] > counts[1][1]):
        dominant = counts[0][0]

    speeds = [e.speed_mps for e in activities if e.activity is UserActivity.PEDESTRIAN]
    return StoreViews(
        dominant_user_activity=dominant,
        walking_speed=sum(speeds) / len(speeds) if speeds else None,
        last_vehicular_state=last_vehicular.state if last_vehicular else None,
        people_density=False,
    )
