"""Movement traces: timestamped positions with activity and owner annotations."""

import bisect
import csv
import io
import logging
import math
from datetime import datetime
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from findmy_sentinel.core.exceptions import TraceError
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.simulation import ActivitySpan, OwnerSpan, UserActivity
from findmy_sentinel.utils.geo import interpolate, offset_point

logger = logging.getLogger(__name__)


class TraceSample(BaseModel):
    """Position fix at time ``t``."""

    model_config = ConfigDict(frozen=True)

    t: float
    lat: float = Field(ge=-90.0, le=90.0)
    lon: float = Field(ge=-180.0, le=180.0)

    @property
    def point(self) -> GeoPoint:
        return GeoPoint(lat=self.lat, lon=self.lon)


class MovementTrace(BaseModel):
    """Ordered position samples; positions between samples are interpolated."""

    samples: list[TraceSample] = Field(min_length=1)
    activities: list[ActivitySpan] = Field(default_factory=list)
    owner_spans: list[OwnerSpan] = Field(default_factory=list)

    _times: list[float] = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def _strictly_increasing(self) -> "MovementTrace":
        times = [s.t for s in self.samples]
        for prev, cur in zip(times, times[1:]):
            if cur <= prev:
                raise ValueError(f"sample times must be strictly increasing ({prev} >= {cur})")
        self._times = times
        return self

    @property
    def start(self) -> float:
        return self._times[0]

    @property
    def end(self) -> float:
        return self._times[-1]

    def position_at(self, t: float) -> GeoPoint:
        """Interpolated position; clamps to the first/last sample outside the trace."""
        i = bisect.bisect_right(self._times, t)
        if i == 0:
            return self.samples[0].point
        if i == len(self.samples):
            return self.samples[-1].point
        a, b = self.samples[i - 1], self.samples[i]
        return interpolate(a.point, b.point, (t - a.t) / (b.t - a.t))

    def activity_at(self, t: float) -> ActivitySpan | None:
        for span in self.activities:
            if span.start <= t < span.end:
                return span
        return None

    def owner_in_range(self, t: float) -> bool:
        return any(span.start <= t < span.end for span in self.owner_spans)

    def owner_transitions(self, start: float, end: float) -> list[float]:
        """Owner-span edges falling in ``[start, end)``."""
        edges = {e for span in self.owner_spans for e in (span.start, span.end)}
        return sorted(e for e in edges if start <= e < end)

    def shifted(self, offset: float) -> "MovementTrace":
        """Copy with every timestamp moved by ``offset`` seconds."""
        return MovementTrace(
            samples=[s.model_copy(update={"t": s.t + offset}) for s in self.samples],
            activities=[
                a.model_copy(update={"start": a.start + offset, "end": a.end + offset})
                for a in self.activities
            ],
            owner_spans=[
                o.model_copy(update={"start": o.start + offset, "end": o.end + offset})
                for o in self.owner_spans
            ],
        )


class RouteBuilder:
    """Piecewise route synthesis for scenario traces.

    Example:
        trace = (
            RouteBuilder(home)
            .move(east_m=3024, speed_mps=1.2)
            .stay(1260)
            .move(east_m=-3024, speed_mps=1.2)
            .build()
        )
    """

    def __init__(self, origin: GeoPoint, t0: float = 0.0, step_s: float = 10.0):
        self._position = origin
        self._t = t0
        self._step = step_s
        self._samples: list[TraceSample] = [TraceSample(t=t0, lat=origin.lat, lon=origin.lon)]
        self._activities: list[ActivitySpan] = []
        self._owner_spans: list[OwnerSpan] = []

    @property
    def now(self) -> float:
        return self._t

    @property
    def position(self) -> GeoPoint:
        return self._position

    def _add_sample(self, t: float, point: GeoPoint) -> None:
        if t > self._samples[-1].t:
            self._samples.append(TraceSample(t=t, lat=point.lat, lon=point.lon))

    def move(
        self,
        east_m: float = 0.0,
        north_m: float = 0.0,
        speed_mps: float = 1.2,
        activity: UserActivity | None = None,
    ) -> "RouteBuilder":
        """Travel in a straight line at constant speed."""
        target = offset_point(self._position, east_m=east_m, north_m=north_m)
        duration = math.hypot(east_m, north_m) / speed_mps
        if activity is None:
            activity = UserActivity.PEDESTRIAN if speed_mps < 3.0 else UserActivity.VEHICULAR

        start, origin = self._t, self._position
        steps = max(1, int(duration // self._step))
        for k in range(1, steps + 1):
            fraction = min(1.0, k * self._step / duration)
            self._add_sample(start + fraction * duration, interpolate(origin, target, fraction))
        self._add_sample(start + duration, target)

        self._activities.append(
            ActivitySpan(start=start, end=start + duration, activity=activity, speed_mps=speed_mps)
        )
        self._t, self._position = start + duration, target
        return self

    def stay(self, duration_s: float) -> "RouteBuilder":
        """Remain at the current position."""
        start = self._t
        self._add_sample(start + duration_s, self._position)
        self._activities.append(
            ActivitySpan(start=start, end=start + duration_s, activity=UserActivity.STATIC)
        )
        self._t = start + duration_s
        return self

    def owner_nearby(self, start: float, end: float) -> "RouteBuilder":
        self._owner_spans.append(OwnerSpan(start=start, end=end))
        return self

    def build(self) -> MovementTrace:
        return MovementTrace(
            samples=list(self._samples),
            activities=list(self._activities),
            owner_spans=list(self._owner_spans),
        )


def _parse_time(value: str, epoch: float) -> float:
    try:
        return float(value)
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(value.replace("Z", "+00:00")).timestamp() - epoch
    except ValueError:
        raise ValueError(f"unparseable timestamp '{value}'")


def parse_trace_csv(text: str, epoch: float = 0.0) -> MovementTrace:
    """Parse a ``t,lat,lon[,activity,speed]`` CSV trace.

    Numeric ``t`` values are seconds of simulation time; RFC 3339 values
    are converted relative to ``epoch`` (the scenario start as a Unix
    time). Each row's activity covers the span up to the next row.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"t", "lat", "lon"} <= set(reader.fieldnames):
        raise TraceError("CSV header must contain t,lat,lon")

    samples: list[TraceSample] = []
    annotations: list[tuple[float, UserActivity, float]] = []
    for line_number, row in enumerate(reader, start=2):
        try:
            t = _parse_time((row.get("t") or "").strip(), epoch)
            samples.append(TraceSample(t=t, lat=float(row["lat"]), lon=float(row["lon"])))
            activity = (row.get("activity") or "").strip()
            if activity:
                speed = float(row.get("speed") or 0.0)
                annotations.append((t, UserActivity(activity), speed))
        except (ValueError, TypeError) as e:
            raise TraceError(f"bad row on line {line_number}", {"line": line_number, "error": str(e)})

    activities = [
        ActivitySpan(start=t, end=next_t, activity=activity, speed_mps=speed)
        for (t, activity, speed), (next_t, _, _) in zip(annotations, annotations[1:])
    ]
    try:
        return MovementTrace(samples=samples, activities=activities)
    except ValueError as e:
        raise TraceError(str(e))


def load_trace_csv(path: Path, epoch: float = 0.0) -> MovementTrace:
    logger.debug(f"Loading trace {path}")
    return parse_trace_csv(path.read_text(), epoch)
