"""Rendering of comparison rows and fleet reports as table, JSON or CSV text."""

import csv
import io
import json
from collections.abc import Sequence
from typing import Any, Literal

from findmy_sentinel.analytics.fleet import FleetReport
from findmy_sentinel.harness.runner import ComparisonRow
from findmy_sentinel.utils.tui_formatter import TUIFormatter, format_duration

ReportFormat = Literal["table", "json", "csv"]

ROW_COLUMNS = list(ComparisonRow.model_fields)
TABLE_HEADERS = ["Position", "Tracker", "Kind", "Engine", "Time to notification", "Locations"]


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(["" if v is None else v for v in row] for row in rows)
    return buffer.getvalue()


def fleet_summary(fleet: FleetReport) -> list[tuple[str, str]]:
    """Headline fleet figures as (metric, value) pairs."""
    pairs = [
        ("Users", str(fleet.users)),
        ("Accessory sightings", f"{fleet.accessory_sighting_pct:.2f}%"),
        ("Accessory notifications", f"{fleet.accessory_notification_pct:.2f}%"),
        ("False alarms (accessory)", str(fleet.false_alarms.get("accessory", 0))),
        ("False alarms (apple device)", str(fleet.false_alarms.get("apple_device", 0))),
    ]
    if fleet.risk_series:
        medium = [p.pct_medium for p in fleet.risk_series]
        high = [p.pct_high for p in fleet.risk_series]
        pairs.append(("Medium risk (min-max)", f"{min(medium):.2f}% - {max(medium):.2f}%"))
        pairs.append(("High risk (min-max)", f"{min(high):.2f}% - {max(high):.2f}%"))
    pairs.extend(
        (f"Mean RSSI {m.group}{' (notified)' if m.notified else ''}", f"{m.mean_rssi:.1f} dBm")
        for m in fleet.mean_rssi
    )
    return pairs


def fleet_csv_tables(fleet: FleetReport) -> dict[str, str]:
    """One CSV document per fleet figure, keyed by figure name."""
    return {
        "device_types": _csv_text(
            ["category", "sightings", "notifications", "sighting_pct", "notification_pct"],
            [
                [c.value, s.sightings, s.notifications, s.sighting_pct, s.notification_pct]
                for c, s in fleet.device_type_distribution.items()
            ],
        ),
        "mean_rssi": _csv_text(
            ["group", "notified", "mean_rssi", "count"],
            [[m.group, m.notified, m.mean_rssi, m.count] for m in fleet.mean_rssi],
        ),
        "risk_series": _csv_text(
            ["at", "pct_medium", "pct_high", "active_donors"],
            [[p.at, p.pct_medium, p.pct_high, p.active_donors] for p in fleet.risk_series],
        ),
        "notifications_per_user": _csv_text(
            ["notifications", "users"],
            [[k, v] for k, v in fleet.notifications_per_user.items()],
        ),
    }


def emit_report(
    rows: Sequence[ComparisonRow],
    fleet: FleetReport | None = None,
    fmt: ReportFormat = "table",
    formatter: TUIFormatter | None = None,
) -> str:
    """Render rows (and optionally a fleet report) in ``fmt``.

    Column order follows ``ComparisonRow`` and identical inputs render
    byte-identical text.
    """
    if fmt == "json":
        document = {
            "rows": [row.model_dump(mode="json") for row in rows],
            "fleet_report": fleet.model_dump(mode="json") if fleet else None,
        }
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    if fmt == "csv":
        text = _csv_text(ROW_COLUMNS, [[getattr(row, c) for c in ROW_COLUMNS] for row in rows])
        if fleet is not None:
            for name, table in fleet_csv_tables(fleet).items():
                text += f"\n# {name}\n{table}"
        return text

    if fmt == "table":
        formatter = formatter or TUIFormatter()
        text = formatter.format_table(
            TABLE_HEADERS,
            [
                [
                    row.position,
                    row.tracker,
                    row.kind,
                    row.engine,
                    format_duration(row.time_to_notification_s),
                    "-" if row.locations is None else str(row.locations),
                ]
                for row in rows
            ],
        )
        if fleet is not None:
            text += "\n" + formatter.format_key_values(fleet_summary(fleet), title="FLEET REPORT")
        return text + "\n"

    raise ValueError(f"unknown report format '{fmt}'")
