"""The TrackingAvoidance detection loop."""

import logging
from collections.abc import Iterable

from findmy_sentinel.detection.airguard import travel_distance
from findmy_sentinel.detection.ios.general_filter import general_filter, recency_start
from findmy_sentinel.detection.ios.staging import notify_policy
from findmy_sentinel.detection.ios.store import TaStore
from findmy_sentinel.detection.ios.visits import VisitTracker, devices_seen, visit_suspicions
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import DetectorVerdict
from findmy_sentinel.models.ios import (
    GeneralFilterParams,
    LocationEvent,
    SingleVisitParams,
    StagingEntry,
    StagingPolicy,
    Suspicion,
    TaEvent,
    VisitParams,
)
from findmy_sentinel.utils.geo import haversine_m

logger = logging.getLogger(__name__)


class IosDetector:
    """Event-driven detector mirroring the iOS pipeline.

    Events are added as they happen; :meth:`run_cycle` is called once per
    run period and returns the notifications delivered in that cycle.
    """

    def __init__(
        self,
        general: GeneralFilterParams | None = None,
        single_visit: SingleVisitParams | None = None,
        visits: VisitParams | None = None,
        staging: StagingPolicy | None = None,
        home: GeoPoint | None = None,
        rng_seed: int = 0,
    ):
        self.general = general or GeneralFilterParams.from_settings()
        self.single_visit = single_visit or SingleVisitParams.from_settings()
        self.staging_policy = staging or StagingPolicy.from_settings()
        self.home = home
        self.rng_seed = rng_seed

        self.store = TaStore()
        self.visit_tracker = VisitTracker(visits)
        self.staging: list[StagingEntry] = []
        self.notified: set[bytes] = set()
        self.verdicts: list[DetectorVerdict] = []
        self._pending: list[Suspicion] = []
        self._cycles = 0

    def add_event(self, event: TaEvent) -> None:
        self.store.add(event)
        if isinstance(event, LocationEvent):
            self._track_visit(event)

    def add_events(self, events: Iterable[TaEvent]) -> None:
        for event in events:
            self.add_event(event)

    def _track_visit(self, event: LocationEvent) -> None:
        previous = self.visit_tracker.previous
        open_visit = self.visit_tracker.current
        confirmed = self.visit_tracker.update(event.at, event.location)
        if open_visit is not None and self.visit_tracker.current is None:
            # The visit just closed; remember who was there
            closed = self.visit_tracker.completed[-1]
            closed.devices.update(devices_seen(self.store, closed.arrival, event.at))
            previous = closed
        if confirmed is None:
            return
        confirmed.devices.update(devices_seen(self.store, confirmed.arrival, event.at))
        if previous is not None:
            self._pending.extend(
                visit_suspicions(previous, confirmed, self.store, event.at, self.single_visit)
            )

    def at_home(self, now: float) -> bool:
        if self.home is None:
            return False
        location = self.store.latest_location(now)
        if location is None:
            return False
        return haversine_m(location, self.home) <= self.staging_policy.home_radius_m

    def _forget_stale(self, now: float) -> None:
        horizon = recency_start(now, self.general)
        stale = [a for a in self.store.devices if (self.store.last_seen(a) or 0.0) <= horizon]
        for address in stale:
            self.store.forget(address)
        if stale:
            self.staging = [e for e in self.staging if e.address not in stale]
            logger.debug(f"Forgot {len(stale)} device(s) at {now:.0f}s")

    def run_cycle(self, now: float) -> list[DetectorVerdict]:
        self._forget_stale(now)

        suspicions: dict[bytes, Suspicion] = {}
        for s in general_filter(self.store, self.general, now):
            suspicions[s.address] = s
        for s in self._pending:
            if s.address in self.store.devices:
                suspicions.setdefault(s.address, s)
        self._pending.clear()

        present = {
            a for a in self.store.devices
            if self.store.sightings(a, now - self.general.run_period_s, now)
        }
        notifications, self.staging = notify_policy(
            suspicions.values(),
            self.staging,
            self.at_home(now),
            now,
            rng_seed=self.rng_seed + self._cycles,
            present=present,
            policy=self.staging_policy,
            notified=self.notified,
        )
        self._cycles += 1

        verdicts = [self._verdict(entry, now) for entry in notifications]
        self.verdicts.extend(verdicts)
        return verdicts

    def _verdict(self, entry: StagingEntry, now: float) -> DetectorVerdict:
        self.notified.add(entry.address)
        history = self.store.sightings(entry.address, None, now)
        logger.info(
            f"iOS notification for {entry.address.hex(':')} ({entry.category.value}, "
            f"{entry.engine.value}) staged at {entry.staged_at:.0f}s"
        )
        return DetectorVerdict(
            address=entry.address,
            category=entry.category,
            engine=entry.engine,
            notified_at=now,
            first_seen_at=history[0].at if history else entry.staged_at,
            sighting_count=len({s.scan_index for s in history}),
            span=history[-1].at - history[0].at if history else 0.0,
            distance=travel_distance(history),
        )


def replay_events(
    events: Iterable[TaEvent],
    detector: IosDetector | None = None,
) -> list[DetectorVerdict]:
    """Drive a detector from a recorded event stream.

    A detection cycle runs every run period, starting one period after the
    first event, until the last event has been processed.
    """
    detector = detector or IosDetector()
    ordered = sorted(events, key=lambda e: e.at)
    if not ordered:
        return []

    period = detector.general.run_period_s
    cycle_at = ordered[0].at + period
    for event in ordered:
        while event.at > cycle_at:
            detector.run_cycle(cycle_at)
            cycle_at += period
        detector.add_event(event)
    detector.run_cycle(cycle_at)
    return detector.verdicts
