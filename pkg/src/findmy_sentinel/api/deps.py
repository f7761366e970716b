"""API dependencies."""

from typing import Annotated

from fastapi import Depends, Request

from findmy_sentinel.persistence.exports import ExportStore


async def get_export_store(request: Request) -> ExportStore:
    """Get the export store from app state."""
    store: ExportStore = request.app.state.export_store
    return store


ExportStoreDep = Annotated[ExportStore, Depends(get_export_store)]
