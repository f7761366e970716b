"""Main API router aggregator."""

from fastapi import APIRouter

from findmy_sentinel.api import analytics, codec, scenarios, server

# Create main router with API version prefix
api_router = APIRouter(prefix="/api/v1")

api_router.include_router(server.router)
api_router.include_router(codec.router)
api_router.include_router(scenarios.router)
api_router.include_router(analytics.router)
