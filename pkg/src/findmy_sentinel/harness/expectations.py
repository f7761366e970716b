"""Acceptance expectations checked against a scenario's comparison rows.

An expectation file is a JSON object with a ``rows`` list. Each entry
selects rows by position, tracker and/or engine and constrains them::

    {"rows": [
        {"position": "Pocket", "engine": "airguard",
         "min_time_s": 1800, "max_time_s": 2700, "locations": 3},
        {"tracker": "OpenHaystack", "engine": "ios", "notified": false}
    ]}
"""

import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from findmy_sentinel.core.exceptions import ExpectationMismatchError, ScenarioConfigError
from findmy_sentinel.harness.runner import ComparisonRow

logger = logging.getLogger(__name__)


class RowExpectation(BaseModel):
    position: str | None = None
    tracker: str | None = None
    engine: Literal["airguard", "ios"] | None = None
    notified: bool | None = None
    min_time_s: float | None = Field(default=None, ge=0)
    max_time_s: float | None = Field(default=None, ge=0)
    locations: int | None = Field(default=None, ge=0)

    def selects(self, row: ComparisonRow) -> bool:
        return (
            (self.position is None or self.position == row.position)
            and (self.tracker is None or self.tracker == row.tracker)
            and (self.engine is None or self.engine == row.engine)
        )

    @property
    def label(self) -> str:
        parts = [p for p in (self.position, self.tracker, self.engine) if p]
        return "/".join(parts) or "*"

    def violations(self, row: ComparisonRow) -> list[str]:
        where = f"{row.position}/{row.tracker}/{row.engine}"
        t = row.time_to_notification_s
        problems = []
        if self.notified is not None and (t is not None) != self.notified:
            problems.append(f"{where}: expected notified={self.notified}, got time {t}")
        if self.min_time_s is not None and (t is None or t < self.min_time_s):
            problems.append(f"{where}: time {t} below {self.min_time_s}")
        if self.max_time_s is not None and (t is None or t > self.max_time_s):
            problems.append(f"{where}: time {t} above {self.max_time_s}")
        if self.locations is not None and row.locations != self.locations:
            problems.append(f"{where}: expected {self.locations} locations, got {row.locations}")
        return problems


class Expectations(BaseModel):
    rows: list[RowExpectation] = Field(min_length=1)


def load_expectations(path: Path) -> Expectations:
    try:
        return Expectations.model_validate(json.loads(path.read_text()))
    except FileNotFoundError:
        raise ScenarioConfigError(str(path), [{"field": "<file>", "message": "file not found"}])
    except json.JSONDecodeError as e:
        raise ScenarioConfigError(
            str(path), [{"field": "<file>", "message": f"invalid JSON at line {e.lineno}: {e.msg}"}]
        )
    except ValidationError as e:
        raise ScenarioConfigError(
            str(path),
            [
                {"field": ".".join(str(p) for p in err["loc"]) or "<root>", "message": err["msg"]}
                for err in e.errors()
            ],
        )


def check_expectations(rows: Sequence[ComparisonRow], expectations: Expectations) -> list[str]:
    """Every unmet expectation as a readable message."""
    mismatches: list[str] = []
    for expectation in expectations.rows:
        selected = [row for row in rows if expectation.selects(row)]
        if not selected:
            mismatches.append(f"{expectation.label}: no matching rows")
        for row in selected:
            mismatches.extend(expectation.violations(row))
    return mismatches


def verify_expectations(rows: Sequence[ComparisonRow], expectations: Expectations) -> None:
    mismatches = check_expectations(rows, expectations)
    if mismatches:
        for m in mismatches:
            logger.warning(f"Expectation not met: {m}")
        raise ExpectationMismatchError(mismatches)
