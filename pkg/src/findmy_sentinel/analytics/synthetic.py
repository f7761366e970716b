"""Synthetic donor populations for exercising the fleet analytics."""

import logging

import numpy as np

from findmy_sentinel.analytics.fleet import AnonymizedEvent, FleetEventKind, pseudo_id
from findmy_sentinel.models.codec import DeviceCategory

logger = logging.getLogger(__name__)

DAY_S = 86_400
WEEK_S = 7 * DAY_S

_ACCESSORIES = (DeviceCategory.DURIAN, DeviceCategory.HAWKEYE, DeviceCategory.HELE)


def synthetic_fleet(
    users: int = 500,
    high: int = 1,
    medium: int = 3,
    days: int = 42,
    seed: int = 0,
    accessory_fraction: float = 0.04,
    apple_notifiers: int = 10,
    accessory_rssi: float = -70.0,
    apple_rssi: float = -85.0,
) -> list[AnonymizedEvent]:
    """Generate a fleet where every user donates one sighting per day.

    The first ``high`` users get an accessory notification spanning 25 h at
    the start of every week, the next ``medium`` users one spanning 1 h, so
    every trailing two-week window ranks them High and Medium respectively.
    The following ``apple_notifiers`` users get weekly notifications for lost
    Apple devices, which never count towards risk.
    """
    if high + medium + apple_notifiers > users:
        raise ValueError("more notifying users than users")
    rng = np.random.default_rng(seed)
    events: list[AnonymizedEvent] = []

    for index in range(users):
        pid = pseudo_id(f"user-{index:05d}", salt=str(seed))
        if index < high:
            notify = (DeviceCategory.DURIAN, 25 * 3600.0)
        elif index < high + medium:
            notify = (DeviceCategory.HAWKEYE, 3600.0)
        elif index < high + medium + apple_notifiers:
            notify = (DeviceCategory.OTHER, 3600.0)
        else:
            notify = None

        for day in range(days):
            is_accessory = rng.random() < accessory_fraction
            if notify is not None and notify[0] is not DeviceCategory.OTHER:
                is_accessory = True
            category = DeviceCategory.OTHER
            if is_accessory:
                category = _ACCESSORIES[int(rng.integers(len(_ACCESSORIES)))]
            mean = accessory_rssi if is_accessory else apple_rssi
            events.append(
                AnonymizedEvent(
                    user_pseudo_id=pid,
                    at=day * DAY_S + float(rng.uniform(0, DAY_S)),
                    category=category,
                    event=FleetEventKind.SIGHTING,
                    rssi=float(np.clip(rng.normal(mean, 5.0), -120.0, 0.0)),
                    notified=notify is not None and notify[0].is_accessory == is_accessory,
                )
            )

        if notify is not None:
            category, span = notify
            for week_start in range(0, days * DAY_S, WEEK_S):
                events.append(
                    AnonymizedEvent(
                        user_pseudo_id=pid,
                        at=float(week_start),
                        category=category,
                        event=FleetEventKind.NOTIFICATION,
                        notified=True,
                        span_s=span,
                    )
                )

    events.sort(key=lambda e: (e.at, e.user_pseudo_id, e.event.value))
    logger.debug(f"Synthesized {len(events)} events for {users} users over {days} days")
    return events
