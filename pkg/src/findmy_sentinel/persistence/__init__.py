"""Persistence layer - JSON and JSON-lines export storage."""

from findmy_sentinel.persistence.exports import ExportStore, read_fleet_events, read_ta_events
from findmy_sentinel.persistence.storage import atomic_write, read_jsonl, safe_read, write_jsonl

__all__ = [
    "ExportStore",
    "atomic_write",
    "read_fleet_events",
    "read_jsonl",
    "read_ta_events",
    "safe_read",
    "write_jsonl",
]
