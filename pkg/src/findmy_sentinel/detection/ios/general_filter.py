"""General filter: flags devices that moved with the user recently."""

import logging
import math

from findmy_sentinel.detection.airguard import travel_distance
from findmy_sentinel.detection.ios.store import TaStore, derive_views
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.detection import Engine
from findmy_sentinel.models.ios import GeneralFilterParams, StoreViews, Suspicion
from findmy_sentinel.models.simulation import UserActivity

logger = logging.getLogger(__name__)

DAY_S = 86_400


def is_suspicious(
    views: StoreViews,
    distance_m: float,
    duration_s: float,
    params: GeneralFilterParams,
) -> bool:
    is_driving = (views.is_in_vehicle or views.people_density) and (
        views.dominant_user_activity is UserActivity.VEHICULAR
    )
    is_walking = (
        views.dominant_user_activity is UserActivity.PEDESTRIAN
        and views.walking_speed is not None
        and views.walking_speed < params.max_walking_speed_mps
    )
    valid_movement = is_driving or is_walking
    return (
        valid_movement
        and distance_m > params.threshold_distance_m
        and duration_s > params.threshold_duration_s
    )


def recency_start(now: float, params: GeneralFilterParams) -> float:
    """Exclusive lower bound of the sightings the filter considers."""
    if params.recency_mode == "day":
        local = now + params.tz_offset_s
        return math.floor(local / DAY_S) * DAY_S - params.tz_offset_s
    return now - params.recency_window_s


def general_filter(store: TaStore, params: GeneralFilterParams, now: float) -> list[Suspicion]:
    """Suspicious devices among those sighted since :func:`recency_start`."""
    views = derive_views(store, now, params.recency_window_s)
    start = recency_start(now, params)

    suspicious: list[Suspicion] = []
    for address in sorted(store.devices):
        recent = store.sightings(address, start, now)
        if not recent:
            continue
        category = recent[-1].category
        if category is DeviceCategory.OTHER:
            continue
        distance = travel_distance(recent)
        duration = recent[-1].at - recent[0].at
        if is_suspicious(views, distance, duration, params):
            suspicious.append(
                Suspicion(
                    address=address,
                    category=category,
                    engine=Engine.IOS_GENERAL,
                    distance_m=distance,
                    duration_s=duration,
                )
            )
    if suspicious:
        logger.debug(f"General filter at {now:.0f}s flagged {len(suspicious)} device(s)")
    return suspicious
