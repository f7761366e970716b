"""Per-user risk level over a trailing window of notifications."""

from collections.abc import Iterable
from enum import Enum

from findmy_sentinel.config import settings
from findmy_sentinel.models.detection import DetectorVerdict


class RiskLevel(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


def followed_duration(
    verdicts: Iterable[DetectorVerdict],
    now: float,
    include_other: bool = False,
    window_s: float | None = None,
) -> float:
    """Total verdict span notified in ``(now - window, now]``."""
    window = window_s if window_s is not None else settings.risk_window_s
    return sum(
        v.span
        for v in verdicts
        if now - window < v.notified_at <= now and (include_other or v.category.is_accessory)
    )


def level_for_duration(duration_s: float, high_after_s: float | None = None) -> RiskLevel:
    high_after = high_after_s if high_after_s is not None else settings.risk_high_after_s
    if duration_s <= 0:
        return RiskLevel.LOW
    if duration_s <= high_after:
        return RiskLevel.MEDIUM
    return RiskLevel.HIGH


def risk_level(
    verdicts: Iterable[DetectorVerdict],
    now: float,
    include_other: bool = False,
    window_s: float | None = None,
    high_after_s: float | None = None,
) -> RiskLevel:
    """Low with no tracking, Medium up to a day of tracking, High beyond.

    Lost Apple devices are left out unless ``include_other`` is set.
    """
    duration = followed_duration(verdicts, now, include_other, window_s)
    return level_for_duration(duration, high_after_s)
