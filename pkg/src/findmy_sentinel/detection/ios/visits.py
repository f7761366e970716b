"""Visit generation and the two visit-based detectors."""

import logging
from collections.abc import Mapping

from findmy_sentinel.detection.airguard import travel_distance
from findmy_sentinel.detection.ios.store import TaStore
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import Engine
from findmy_sentinel.models.ios import SingleVisitParams, Suspicion, Visit, VisitParams
from findmy_sentinel.utils.geo import haversine_m

logger = logging.getLogger(__name__)


class VisitTracker:
    """Turns location updates into visits.

    A visit is confirmed once the user has stayed within ``radius_m`` of the
    first fix for ``min_dwell_s``; it closes on the first fix outside the
    radius.
    """

    def __init__(self, params: VisitParams | None = None):
        self.params = params or VisitParams.from_settings()
        self.current: Visit | None = None
        self.completed: list[Visit] = []
        self._anchor: tuple[float, GeoPoint] | None = None

    def update(self, at: float, location: GeoPoint) -> Visit | None:
        """Feed a location fix; returns the visit confirmed by it, if any."""
        if self._anchor is None:
            self._anchor = (at, location)
            return None

        anchor_at, anchor = self._anchor
        if haversine_m(anchor, location) > self.params.radius_m:
            if self.current is not None:
                self.completed.append(self.current.model_copy(update={"departure": at}))
                logger.debug(f"Visit {self.current.arrival:.0f}s-{at:.0f}s closed")
                self.current = None
            self._anchor = (at, location)
            return None

        if self.current is None and at - anchor_at >= self.params.min_dwell_s:
            self.current = Visit(arrival=anchor_at, location=anchor)
            logger.debug(f"Visit confirmed at {at:.0f}s (arrived {anchor_at:.0f}s)")
            return self.current
        return None

    @property
    def previous(self) -> Visit | None:
        return self.completed[-1] if self.completed else None


def devices_seen(store: TaStore, start: float, end: float) -> dict[str, DeviceCategory]:
    """Addresses sighted in ``[start, end]`` with their categories."""
    seen: dict[str, DeviceCategory] = {}
    for address, history in store.devices.items():
        for s in history:
            if start <= s.at <= end:
                seen[address.hex()] = s.category
                break
    return seen


def visit_detector(prev: Mapping[str, DeviceCategory], cur: Mapping[str, DeviceCategory]) -> set[str]:
    """Devices seen at both visits; lost Apple devices are irrelevant."""
    return {
        address
        for address in prev.keys() & cur.keys()
        if cur[address] is not DeviceCategory.OTHER
    }


def single_visit_detector(
    intersection: set[str],
    store: TaStore,
    now: float,
    params: SingleVisitParams | None = None,
    since: float | None = None,
) -> set[str]:
    """Members of ``intersection`` recently seen that moved far and long enough."""
    params = params or SingleVisitParams.from_settings()
    suspicious: set[str] = set()
    for address in intersection:
        history = store.sightings(bytes.fromhex(address), since, now)
        if not history:
            continue
        if now - history[-1].at > params.recency_s:
            continue
        distance = travel_distance(history)
        duration = history[-1].at - history[0].at
        if distance > params.distance_m and duration > params.duration_s:
            suspicious.add(address)
    return suspicious


def visit_suspicions(
    prev: Visit,
    cur: Visit,
    store: TaStore,
    now: float,
    params: SingleVisitParams | None = None,
) -> list[Suspicion]:
    """Run both visit detectors for a newly confirmed visit."""
    intersection = visit_detector(prev.devices, cur.devices)
    single = single_visit_detector(intersection, store, now, params, since=prev.arrival)

    suspicions: list[Suspicion] = []
    for address in sorted(intersection):
        history = store.sightings(bytes.fromhex(address), prev.arrival, now)
        if not history:
            continue
        suspicions.append(
            Suspicion(
                address=address,
                category=cur.devices[address],
                engine=Engine.IOS_SINGLE_VISIT if address in single else Engine.IOS_VISIT,
                distance_m=travel_distance(history),
                duration_s=history[-1].at - history[0].at,
            )
        )
    return suspicions
