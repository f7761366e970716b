"""Find My transmitter state machine and frame emission."""

import logging
import math
from collections.abc import Iterator

from findmy_sentinel.codec.advertisement import encode_advertisement, encode_nearby
from findmy_sentinel.models.codec import Advertisement, DeviceCategory, StatusByte
from findmy_sentinel.models.simulation import (
    AccessoryKind,
    ConnectionState,
    KeyPolicy,
    SimAccessory,
)
from findmy_sentinel.simulation.keys import new_schedule

logger = logging.getLogger(__name__)

NEARBY_GRACE_S = 15 * 60


def step_state(acc: SimAccessory, now: float, owner_in_range: bool) -> SimAccessory:
    """Advance the connection state machine to ``now``.

    Unpaired transmitters are returned unchanged. Lost Apple devices skip
    the nearby grace period and start beaconing immediately.
    """
    state = acc.conn_state
    if state is ConnectionState.UNPAIRED:
        return acc

    if owner_in_range:
        if state is ConnectionState.CONNECTED:
            return acc
        return acc.model_copy(
            update={"conn_state": ConnectionState.CONNECTED, "nearby_entered_at": None}
        )

    if state is ConnectionState.CONNECTED:
        if acc.kind is AccessoryKind.APPLE_DEVICE:
            return acc.model_copy(update={"conn_state": ConnectionState.SEPARATED})
        return acc.model_copy(
            update={"conn_state": ConnectionState.NEARBY, "nearby_entered_at": now}
        )

    if state is ConnectionState.NEARBY:
        entered = acc.nearby_entered_at if acc.nearby_entered_at is not None else now
        if now - entered >= NEARBY_GRACE_S:
            return acc.model_copy(update={"conn_state": ConnectionState.SEPARATED})

    return acc


def emit(acc: SimAccessory, now: float) -> Advertisement | None:
    """Frame the transmitter broadcasts at ``now``, if any."""
    key = acc.key_schedule.current_key
    match acc.conn_state:
        case ConnectionState.SEPARATED:
            return encode_advertisement(key, StatusByte.for_category(acc.category), 0x00)
        case ConnectionState.NEARBY:
            return encode_nearby(key)
        case _:
            return None


def emission_times(acc: SimAccessory, start: float, end: float) -> Iterator[float]:
    """Emission instants in ``[start, end)`` on the accessory's cadence."""
    origin = acc.key_schedule.paired_at + acc.emission_phase_s
    interval = acc.emission_interval_s
    k = max(0, math.ceil((start - origin) / interval))
    t = origin + k * interval
    while t < end:
        yield t
        k += 1
        t = origin + k * interval


_DEFAULT_POLICIES = {
    AccessoryKind.ACCESSORY: KeyPolicy.DAILY_AT_4AM_LOCAL,
    AccessoryKind.APPLE_DEVICE: KeyPolicy.EVERY_15_MIN,
    AccessoryKind.OPEN_HAYSTACK: KeyPolicy.STATIC,
    AccessoryKind.FAST_ROTATOR: KeyPolicy.EVERY_15_MIN,
}


def make_accessory(
    id: str,
    kind: AccessoryKind,
    category: DeviceCategory | None = None,
    seed: int = 0,
    policy: KeyPolicy | None = None,
    interval_s: float | None = None,
    paired_at: float = 0.0,
    conn_state: ConnectionState = ConnectionState.SEPARATED,
    **kwargs,
) -> SimAccessory:
    """Build a transmitter with the usual key policy for its kind."""
    if category is None:
        category = (
            DeviceCategory.DURIAN
            if kind in (AccessoryKind.ACCESSORY, AccessoryKind.FAST_ROTATOR)
            else DeviceCategory.OTHER
        )
    schedule = new_schedule(
        policy or _DEFAULT_POLICIES[kind],
        seed=seed,
        paired_at=paired_at,
        interval_s=interval_s,
    )
    return SimAccessory(
        id=id,
        kind=kind,
        category=category,
        key_schedule=schedule,
        conn_state=conn_state,
        **kwargs,
    )
