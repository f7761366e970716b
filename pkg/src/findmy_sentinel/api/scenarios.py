"""Scenario endpoints - list and run."""

import asyncio

from fastapi import APIRouter
from pydantic import BaseModel

from findmy_sentinel.api.deps import ExportStoreDep
from findmy_sentinel.harness.canonical import CANONICAL, resolve_scenario
from findmy_sentinel.harness.runner import ComparisonRow, execute_scenario
from findmy_sentinel.models.requests import RunScenarioRequest
from findmy_sentinel.models.responses import ScenarioListResponse, ScenarioSummary

router = APIRouter(prefix="/scenarios", tags=["Scenarios"])


class ScenarioRunResponse(BaseModel):
    scenario: str
    seed: int
    rows: list[ComparisonRow]
    export_dir: str | None = None


@router.get("", response_model=ScenarioListResponse)
async def list_scenarios() -> ScenarioListResponse:
    """List the canonical scenarios."""
    summaries = []
    for name, factory in CANONICAL.items():
        scenario = factory()
        summaries.append(
            ScenarioSummary(
                name=name,
                position=scenario.position,
                description=scenario.description,
                trackers=[a.id for a in scenario.accessories],
            )
        )
    return ScenarioListResponse(scenarios=summaries, total=len(summaries))


@router.post("/run", response_model=ScenarioRunResponse)
async def run(request: RunScenarioRequest, exports: ExportStoreDep) -> ScenarioRunResponse:
    """Run a scenario through the requested engines."""
    scenario = resolve_scenario(request.name, request.scenario, request.seed, request.evasion)
    result = await asyncio.to_thread(execute_scenario, scenario, request.engine)
    export_dir = None
    if request.export:
        export_dir = str(await exports.export_run(result, request.engine))
    return ScenarioRunResponse(
        scenario=scenario.name, seed=scenario.seed, rows=result.rows, export_dir=export_dir
    )
