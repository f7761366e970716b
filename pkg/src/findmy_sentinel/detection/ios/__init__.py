"""Reimplementation of the iOS TrackingAvoidance detectors."""

from findmy_sentinel.detection.ios.engine import IosDetector, replay_events
from findmy_sentinel.detection.ios.general_filter import general_filter, is_suspicious
from findmy_sentinel.detection.ios.staging import notify_policy
from findmy_sentinel.detection.ios.store import TaStore, derive_views
from findmy_sentinel.detection.ios.visits import (
    VisitTracker,
    single_visit_detector,
    visit_detector,
)

__all__ = [
    "IosDetector",
    "TaStore",
    "VisitTracker",
    "derive_views",
    "general_filter",
    "is_suspicious",
    "notify_policy",
    "replay_events",
    "single_visit_detector",
    "visit_detector",
]
