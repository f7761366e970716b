"""Analytics endpoints - scan sweep and fleet report."""

import asyncio

from fastapi import APIRouter
from pydantic import TypeAdapter

from findmy_sentinel.analytics import AnonymizedEvent, FleetReport, fleet_report, synthetic_fleet
from findmy_sentinel.harness.sweep import SweepResult, scan_parameter_sweep
from findmy_sentinel.models.requests import FleetRequest, SweepRequest

router = APIRouter(prefix="/analytics", tags=["Analytics"])

_events = TypeAdapter(list[AnonymizedEvent])


@router.post("/sweep", response_model=SweepResult)
async def sweep(request: SweepRequest) -> SweepResult:
    return scan_parameter_sweep(
        durations_s=request.durations_s,
        devices=request.devices,
        scans=request.scans,
        seed=request.seed,
    )


@router.post("/fleet", response_model=FleetReport)
async def fleet(request: FleetRequest) -> FleetReport:
    """Fleet report over the posted events, or a synthetic fleet when none are given."""
    if request.events is not None:
        events = _events.validate_python(request.events)
    else:
        events = await asyncio.to_thread(
            synthetic_fleet, users=request.synthetic_users, days=request.synthetic_days, seed=request.seed
        )
    return await asyncio.to_thread(fleet_report, events)
