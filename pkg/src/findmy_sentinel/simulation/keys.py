"""Deterministic public-key schedules."""

import hashlib
import math

from findmy_sentinel.models.codec import PUBLIC_KEY_LENGTH
from findmy_sentinel.models.simulation import KeyPolicy, KeySchedule

DAY_S = 86_400
FIFTEEN_MIN_S = 900
ROTATION_HOUR_S = 4 * 3600


def derive_key(seed: int, index: int) -> bytes:
    """Key bytes for rotation ``index`` of the key chain seeded by ``seed``."""
    return hashlib.sha256(f"{seed}:{index}".encode()).digest()[:PUBLIC_KEY_LENGTH]


def _local_day(t: float, tz_offset: float) -> int:
    """Day number whose boundaries fall at 04:00 local time."""
    return math.floor((t + tz_offset - ROTATION_HOUR_S) / DAY_S)


def rotation_index(sched: KeySchedule, now: float, tz_offset: float = 0.0) -> int:
    """Number of key rotations between pairing and ``now``.

    ``tz_offset`` maps simulation time to local seconds since midnight; it
    only matters for the daily policy.
    """
    elapsed = now - sched.paired_at
    match sched.policy:
        case KeyPolicy.STATIC:
            return 0
        case KeyPolicy.EVERY_15_MIN:
            return max(0, math.floor(elapsed / FIFTEEN_MIN_S))
        case KeyPolicy.EVERY_INTERVAL:
            assert sched.interval_s is not None
            return max(0, math.floor(elapsed / sched.interval_s))
        case KeyPolicy.DAILY_AT_4AM_LOCAL:
            return max(0, _local_day(now, tz_offset) - _local_day(sched.paired_at, tz_offset))


def new_schedule(
    policy: KeyPolicy,
    seed: int,
    paired_at: float = 0.0,
    interval_s: float | None = None,
) -> KeySchedule:
    return KeySchedule(
        policy=policy,
        seed=seed,
        interval_s=interval_s,
        paired_at=paired_at,
        rotation_index=0,
        current_key=derive_key(seed, 0),
    )


def rotate_key(sched: KeySchedule, now: float, tz_offset: float = 0.0) -> KeySchedule:
    """Advance the schedule to ``now``; returns ``sched`` itself when unchanged."""
    index = rotation_index(sched, now, tz_offset)
    if index == sched.rotation_index:
        return sched
    return sched.model_copy(
        update={"rotation_index": index, "current_key": derive_key(sched.seed, index)}
    )


def count_rotations(sched: KeySchedule, start: float, end: float, tz_offset: float = 0.0) -> int:
    """Key changes observed in ``(start, end]``."""
    return rotation_index(sched, end, tz_offset) - rotation_index(sched, start, tz_offset)
