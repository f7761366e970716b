"""Server endpoints - health and info."""

import sys

from fastapi import APIRouter

from findmy_sentinel import __version__
from findmy_sentinel.harness.canonical import canonical_names
from findmy_sentinel.models.detection import Engine
from findmy_sentinel.models.responses import HealthResponse, InfoResponse

router = APIRouter(tags=["Server"])


@router.get("/health", response_model=HealthResponse)
async def health_check() -> HealthResponse:
    """Check server health status."""
    return HealthResponse(status="healthy", version=__version__)


@router.get("/info", response_model=InfoResponse)
async def server_info() -> InfoResponse:
    """Get server information."""
    return InfoResponse(
        name="FindMy Sentinel",
        version=__version__,
        python_version=sys.version.split()[0],
        scenarios=canonical_names(),
        engines=[e.value for e in Engine],
    )
