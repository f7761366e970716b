"""FindMy Sentinel.

Encode and decode Find My BLE advertisements, simulate trackers along
movement traces, and compare two stalking-detection engines (a model of
the iOS TrackingAvoidance pipeline and the AirGuard classifier).
"""

__version__ = "0.4.0"
