"""Risk levels and anonymized fleet analytics."""

from findmy_sentinel.analytics.fleet import (
    AnonymizedEvent,
    FleetEventKind,
    FleetReport,
    anonymize,
    fleet_report,
    pseudo_id,
    sliding_risk_percentages,
)
from findmy_sentinel.analytics.risk import RiskLevel, risk_level
from findmy_sentinel.analytics.synthetic import synthetic_fleet

__all__ = [
    "AnonymizedEvent",
    "FleetEventKind",
    "FleetReport",
    "RiskLevel",
    "anonymize",
    "fleet_report",
    "pseudo_id",
    "risk_level",
    "sliding_risk_percentages",
    "synthetic_fleet",
]
