"""Staging: deciding when a suspicious device turns into a notification."""

import logging
from collections.abc import Collection, Iterable

import numpy as np

from findmy_sentinel.models.ios import StagingEntry, StagingPolicy, Suspicion

logger = logging.getLogger(__name__)


def notify_policy(
    suspicious: Iterable[Suspicion],
    staging: list[StagingEntry],
    at_home: bool,
    now: float,
    rng_seed: int = 0,
    present: Collection[bytes] = (),
    policy: StagingPolicy | None = None,
    notified: Collection[bytes] = (),
) -> tuple[list[StagingEntry], list[StagingEntry]]:
    """Advance staging by one detector cycle.

    Newly suspicious devices are staged until ``now + staging_duration``.
    While the user is at home a staged device heard in the current cycle is
    notified immediately. At the end of staging a present device is
    notified and an absent one is prolonged, up to ``max_prolongs`` times,
    then dropped.

    Args:
        suspicious: Devices flagged this cycle
        staging: Entries carried over from the previous cycle
        at_home: Whether the user is within the home radius
        now: Cycle time
        rng_seed: Seeds the optional prolong jitter
        present: Addresses heard during the current cycle
        policy: Staging durations
        notified: Addresses that already produced a notification

    Returns:
        (entries notified this cycle, remaining staging entries)
    """
    policy = policy or StagingPolicy()
    rng = np.random.default_rng(rng_seed)

    entries = {entry.address: entry for entry in staging}
    for suspicion in suspicious:
        if suspicion.address in entries or suspicion.address in notified:
            continue
        entries[suspicion.address] = StagingEntry(
            address=suspicion.address,
            category=suspicion.category,
            engine=suspicion.engine,
            staged_at=now,
            staging_end=now + policy.staging_duration_s,
        )
        logger.debug(f"Staged {suspicion.address.hex(':')} until {now + policy.staging_duration_s:.0f}s")

    notifications: list[StagingEntry] = []
    remaining: list[StagingEntry] = []
    for address in sorted(entries):
        entry = entries[address]
        is_present = address in present
        if at_home and is_present:
            notifications.append(entry)
        elif now < entry.staging_end:
            remaining.append(entry)
        elif is_present:
            notifications.append(entry)
        elif entry.prolong_count < policy.max_prolongs:
            jitter = rng.uniform(0.0, policy.prolong_jitter_s) if policy.prolong_jitter_s else 0.0
            prolonged = entry.model_copy(
                update={
                    "staging_end": entry.staging_end + policy.prolong_duration_s + jitter,
                    "prolong_count": entry.prolong_count + 1,
                }
            )
            logger.debug(f"Prolonged staging of {address.hex(':')} to {prolonged.staging_end:.0f}s")
            remaining.append(prolonged)
        else:
            logger.debug(f"Dropped staging of {address.hex(':')} after {entry.prolong_count} prolong(s)")
    return notifications, remaining
