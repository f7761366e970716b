"""Anonymized fleet analytics over many users' sightings and notifications."""

import hashlib
import logging
from collections import Counter, defaultdict
from collections.abc import Mapping, Sequence
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from findmy_sentinel.analytics.risk import RiskLevel, level_for_duration
from findmy_sentinel.config import settings
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.detection import DetectorVerdict, SightingRecord

logger = logging.getLogger(__name__)


class FleetEventKind(str, Enum):
    SIGHTING = "sighting"
    NOTIFICATION = "notification"
    FALSE_ALARM_REPORT = "false_alarm_report"


class AnonymizedEvent(BaseModel):
    """A donated record stripped of address, payload and location."""

    model_config = ConfigDict(frozen=True)

    user_pseudo_id: str
    at: float
    category: DeviceCategory
    event: FleetEventKind
    rssi: float | None = None
    notified: bool = False  # sighting of a device the user was notified about
    span_s: float = Field(default=0.0, ge=0)  # followed duration, notifications only


class CategoryShare(BaseModel):
    sightings: int = 0
    notifications: int = 0
    sighting_pct: float = 0.0
    notification_pct: float = 0.0


class MeanRssi(BaseModel):
    group: str  # "accessory" or "apple_device"
    notified: bool
    mean_rssi: float
    count: int


class RiskPoint(BaseModel):
    at: float
    pct_medium: float = Field(ge=0, le=100)
    pct_high: float = Field(ge=0, le=100)
    active_donors: int


class FleetReport(BaseModel):
    users: int
    device_type_distribution: dict[DeviceCategory, CategoryShare]
    accessory_sighting_pct: float
    accessory_notification_pct: float
    mean_rssi: list[MeanRssi]
    risk_series: list[RiskPoint]
    notifications_per_user: dict[int, int]
    false_alarms: dict[str, int]


def pseudo_id(user: str, salt: str = "") -> str:
    """Stable 16-hex-digit pseudonym for a user."""
    return hashlib.sha256(f"{salt}:{user}".encode()).hexdigest()[:16]


def _group(category: DeviceCategory) -> str:
    return "accessory" if category.is_accessory else "apple_device"


def anonymize(
    records: Mapping[str, Sequence[SightingRecord]],
    verdicts: Mapping[str, Sequence[DetectorVerdict]] | None = None,
    salt: str = "",
    false_alarms: Mapping[str, Sequence[DetectorVerdict]] | None = None,
) -> list[AnonymizedEvent]:
    """Turn per-user sightings and verdicts into anonymized events.

    Every user gets an independent copy of a frame they received, so the
    same advertisement heard by two users yields two events.
    """
    verdicts = verdicts or {}
    false_alarms = false_alarms or {}
    events: list[AnonymizedEvent] = []

    for user in sorted(set(records) | set(verdicts) | set(false_alarms)):
        pid = pseudo_id(user, salt)
        notified = {v.address for v in verdicts.get(user, [])}
        for s in records.get(user, []):
            events.append(
                AnonymizedEvent(
                    user_pseudo_id=pid,
                    at=s.at,
                    category=s.category,
                    event=FleetEventKind.SIGHTING,
                    rssi=s.rssi,
                    notified=s.address in notified,
                )
            )
        for v in verdicts.get(user, []):
            events.append(
                AnonymizedEvent(
                    user_pseudo_id=pid,
                    at=v.notified_at,
                    category=v.category,
                    event=FleetEventKind.NOTIFICATION,
                    notified=True,
                    span_s=v.span,
                )
            )
        for v in false_alarms.get(user, []):
            events.append(
                AnonymizedEvent(
                    user_pseudo_id=pid,
                    at=v.notified_at,
                    category=v.category,
                    event=FleetEventKind.FALSE_ALARM_REPORT,
                    notified=True,
                )
            )
    events.sort(key=lambda e: (e.at, e.user_pseudo_id, e.event.value))
    return events


def _user_level(events: Sequence[AnonymizedEvent], start: float, end: float) -> RiskLevel:
    followed = sum(
        e.span_s
        for e in events
        if e.event is FleetEventKind.NOTIFICATION
        and e.category.is_accessory
        and start < e.at <= end
    )
    return level_for_duration(followed)


def sliding_risk_percentages(
    events: Sequence[AnonymizedEvent],
    window_s: float | None = None,
    step_s: float | None = None,
) -> list[RiskPoint]:
    """Share of active donors at Medium and High risk over a sliding window.

    Points fall every ``step`` after the earliest event, up to and including
    the first one at or past the latest event, each over the trailing window
    ``(t - window, t]``. A donor is active at a point when they submitted any
    event inside its window; points without active donors are omitted.
    """
    if not events:
        return []
    window = window_s if window_s is not None else settings.risk_window_s
    step = step_s if step_s is not None else settings.fleet_step_s
    if window <= 0 or step <= 0:
        raise ValueError("window and step must be positive")

    by_user: dict[str, list[AnonymizedEvent]] = defaultdict(list)
    for e in events:
        by_user[e.user_pseudo_id].append(e)
    first = min(e.at for e in events)
    last = max(e.at for e in events)

    points: list[RiskPoint] = []
    t = first + step
    while True:
        start = t - window
        levels = [
            _user_level(user_events, start, t)
            for user_events in by_user.values()
            if any(start < e.at <= t for e in user_events)
        ]
        if levels:
            donors = len(levels)
            counts = Counter(levels)
            points.append(
                RiskPoint(
                    at=t,
                    pct_medium=counts[RiskLevel.MEDIUM] / donors * 100,
                    pct_high=counts[RiskLevel.HIGH] / donors * 100,
                    active_donors=donors,
                )
            )
        if t >= last:
            break
        t += step
    return points


def fleet_report(
    events: Sequence[AnonymizedEvent],
    window_s: float | None = None,
    step_s: float | None = None,
) -> FleetReport:
    """Aggregate statistics over a donated event set."""
    sightings = [e for e in events if e.event is FleetEventKind.SIGHTING]
    notifications = [e for e in events if e.event is FleetEventKind.NOTIFICATION]

    sighting_counts = Counter(e.category for e in sightings)
    notification_counts = Counter(e.category for e in notifications)
    distribution = {
        category: CategoryShare(
            sightings=sighting_counts[category],
            notifications=notification_counts[category],
            sighting_pct=_pct(sighting_counts[category], len(sightings)),
            notification_pct=_pct(notification_counts[category], len(notifications)),
        )
        for category in DeviceCategory
    }

    rssi_groups: dict[tuple[str, bool], list[float]] = defaultdict(list)
    for e in sightings:
        if e.rssi is not None:
            rssi_groups[(_group(e.category), e.notified)].append(e.rssi)
    mean_rssi = [
        MeanRssi(group=group, notified=notified, mean_rssi=float(np.mean(values)), count=len(values))
        for (group, notified), values in sorted(rssi_groups.items())
    ]

    users = sorted({e.user_pseudo_id for e in events})
    per_user = Counter(e.user_pseudo_id for e in notifications)
    histogram = dict(sorted(Counter(per_user[u] for u in users).items()))

    false_alarms = Counter(
        _group(e.category) for e in events if e.event is FleetEventKind.FALSE_ALARM_REPORT
    )

    logger.info(
        f"Fleet report over {len(users)} users, {len(sightings)} sightings, "
        f"{len(notifications)} notifications"
    )
    return FleetReport(
        users=len(users),
        device_type_distribution=distribution,
        accessory_sighting_pct=_pct(sum(1 for e in sightings if e.category.is_accessory), len(sightings)),
        accessory_notification_pct=_pct(
            sum(1 for e in notifications if e.category.is_accessory), len(notifications)
        ),
        mean_rssi=mean_rssi,
        risk_series=sliding_risk_percentages(events, window_s, step_s),
        notifications_per_user=histogram,
        false_alarms={group: false_alarms[group] for group in ("accessory", "apple_device")},
    )


def _pct(part: int, whole: int) -> float:
    return part / whole * 100 if whole else 0.0
