"""MCP Server for Find My tracking-detection experiments.

Exposes the codec, the scenario harness and the analytics as MCP tools so
an agent can decode captured frames, run detection scenarios and inspect
fleet statistics.

Usage:
    # Run as stdio server (for AI host integration)
    python -m findmy_sentinel.mcp_server

    # Or via entry point
    sentinel-mcp
"""

import asyncio
import logging
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any, Literal

from mcp.server.fastmcp import FastMCP

from findmy_sentinel.analytics import fleet_report, synthetic_fleet
from findmy_sentinel.codec import encode_advertisement, parse_hexdump, sound_command
from findmy_sentinel.core.exceptions import SentinelError
from findmy_sentinel.detection.ios import replay_events
from findmy_sentinel.harness.canonical import CANONICAL, resolve_scenario
from findmy_sentinel.harness.report import emit_report
from findmy_sentinel.harness.runner import execute_scenario
from findmy_sentinel.harness.sweep import scan_parameter_sweep
from findmy_sentinel.models.codec import StatusByte
from findmy_sentinel.models.responses import FrameResponse
from findmy_sentinel.persistence.exports import ExportStore, read_fleet_events, read_ta_events
from findmy_sentinel.utils.tui_formatter import TUIFormatter

logger = logging.getLogger(__name__)

# Global export store (initialized in lifespan)
_export_store: ExportStore | None = None

_tui_formatter: TUIFormatter | None = None


def _get_formatter() -> TUIFormatter:
    global _tui_formatter
    if _tui_formatter is None:
        _tui_formatter = TUIFormatter()
    return _tui_formatter


@asynccontextmanager
async def lifespan(app: FastMCP):  # type: ignore[no-untyped-def]
    global _export_store
    _export_store = ExportStore()
    logger.info("MCP Sentinel server started")
    try:
        yield {"export_store": _export_store}
    finally:
        _export_store = None
        logger.info("MCP Sentinel server stopped")


mcp = FastMCP(
    name="findmy-sentinel",
    instructions="""Find My tracker detection lab. Workflow: scenario_list -> scenario_run(name, engine) to compare the iOS and AirGuard engines; findmy_decode/findmy_encode for BLE frames; scan_sweep and fleet_analytics for analytics.""",
    lifespan=lifespan,
)


def _get_store() -> ExportStore:
    if _export_store is None:
        raise RuntimeError("Export store not initialized")
    return _export_store


def _error(e: SentinelError) -> dict[str, Any]:
    return {"error": e.message, "code": e.code, "details": e.details}


# =============================================================================
# Codec Tools
# =============================================================================


@mcp.tool()
async def findmy_decode(hexdump: str, strict: bool = True) -> dict[str, Any]:
    """Decode Find My frames from a hex dump.

    Args:
        hexdump: One frame per line, 6 address bytes then the optional 31-byte payload
        strict: Fail on the first bad frame instead of skipping it
    """
    try:
        frames = parse_hexdump(hexdump, strict)
    except SentinelError as e:
        return _error(e)
    return {
        "frames": [FrameResponse.from_advertisement(f).model_dump(mode="json") for f in frames],
        "total": len(frames),
    }


@mcp.tool()
async def findmy_encode(public_key: str, status: int = 0x10, hint: int = 0) -> dict[str, Any]:
    """Encode a separated-state advertisement for a 28-byte public key (hex)."""
    try:
        key = bytes.fromhex(public_key.replace(":", "").replace(" ", ""))
        adv = encode_advertisement(key, StatusByte(raw=status), hint)
    except ValueError as e:
        return {"error": str(e), "code": "INVALID_REQUEST"}
    except SentinelError as e:
        return _error(e)
    return FrameResponse.from_advertisement(adv).model_dump(mode="json")


@mcp.tool()
async def findmy_sound(device_class: str, action: str) -> dict[str, Any]:
    """Look up the GATT write that plays or stops a sound (airtag | accessory_or_airpods)."""
    try:
        return sound_command(device_class, action).model_dump(mode="json")
    except SentinelError as e:
        return _error(e)


# =============================================================================
# Scenario Tools
# =============================================================================


@mcp.tool()
async def scenario_list() -> dict[str, Any]:
    """List the canonical scenarios and their trackers."""
    scenarios = []
    for name, factory in CANONICAL.items():
        scenario = factory()
        scenarios.append(
            {
                "name": name,
                "position": scenario.position,
                "description": scenario.description,
                "trackers": [a.id for a in scenario.accessories],
            }
        )
    return {"scenarios": scenarios, "total": len(scenarios)}


@mcp.tool()
async def scenario_run(
    name: str,
    engine: Literal["airguard", "ios", "both"] = "both",
    seed: int | None = None,
    evasion: bool = False,
    export: bool = False,
) -> dict[str, Any]:
    """Run a canonical scenario and compare time to notification per tracker.

    Args:
        name: pocket, backpack or car
        engine: airguard, ios or both
        seed: RNG seed (default 7)
        evasion: Add a 15-minute key-rotating tracker
        export: Write device store, verdicts and rows to the exports directory
    """
    try:
        scenario = resolve_scenario(name, seed=seed, evasion=evasion)
        run = await asyncio.to_thread(execute_scenario, scenario, engine)
        result: dict[str, Any] = {
            "scenario": scenario.name,
            "seed": scenario.seed,
            "rows": [row.model_dump(mode="json") for row in run.rows],
            "table": emit_report(run.rows, fmt="table", formatter=_get_formatter()),
        }
        if export:
            result["export_dir"] = str(await _get_store().export_run(run, engine))
        return result
    except SentinelError as e:
        return _error(e)


@mcp.tool()
async def ios_replay(events_file: str) -> dict[str, Any]:
    """Replay a recorded iOS event stream (JSON lines) and list the notifications."""
    try:
        events = await read_ta_events(Path(events_file))
    except SentinelError as e:
        return _error(e)
    verdicts = replay_events(events)
    return {"verdicts": [v.model_dump(mode="json") for v in verdicts], "total": len(verdicts)}


# =============================================================================
# Analytics Tools
# =============================================================================


@mcp.tool()
async def scan_sweep(devices: int = 8, scans: int = 10, seed: int = 0) -> dict[str, Any]:
    """Mean devices discovered per scan duration (1-10 s) and Android scan mode."""
    return scan_parameter_sweep(devices=devices, scans=scans, seed=seed).model_dump(mode="json")


@mcp.tool()
async def fleet_analytics(
    events_file: str | None = None,
    synthetic_users: int = 500,
    synthetic_days: int = 42,
    seed: int = 0,
) -> dict[str, Any]:
    """Fleet report over a donated-events file, or over a synthetic fleet when no file is given."""
    try:
        if events_file is not None:
            events = await read_fleet_events(Path(events_file))
        else:
            events = synthetic_fleet(users=synthetic_users, days=synthetic_days, seed=seed)
    except SentinelError as e:
        return _error(e)
    except ValueError as e:
        return {"error": str(e), "code": "INVALID_REQUEST"}
    report = await asyncio.to_thread(fleet_report, events)
    return report.model_dump(mode="json")


def main():
    """Run the MCP server via stdio transport."""
    import sys

    # Configure logging to stderr (stdout is for MCP protocol)
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
