"""Utility modules - geodesy helpers and terminal table formatting."""

from findmy_sentinel.utils.geo import haversine_m, interpolate, offset_point
from findmy_sentinel.utils.tui_formatter import TUIConfig, TUIFormatter, format_duration

__all__ = [
    "TUIConfig",
    "TUIFormatter",
    "format_duration",
    "haversine_m",
    "interpolate",
    "offset_point",
]
