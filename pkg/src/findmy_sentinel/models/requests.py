"""API request models."""

from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field

from findmy_sentinel.models.common import HexBytes


class EncodeRequest(BaseModel):
    """Encode a separated-state advertisement."""

    public_key: HexBytes = Field(..., description="28-byte public key as hex")
    status: int = Field(default=0x10, ge=0, le=0xFF, description="Status byte")
    hint: int = Field(default=0x00, ge=0, le=0xFF, description="Hint byte")


class DecodeRequest(BaseModel):
    """Decode frames given as a hex dump (one frame per line, address first)."""

    hexdump: str = Field(..., min_length=1)
    strict: bool = True


class RunScenarioRequest(BaseModel):
    """Run a canonical scenario by name or an inline scenario document."""

    name: str | None = Field(default=None, description="Canonical scenario name")
    scenario: dict[str, Any] | None = Field(default=None, description="Inline scenario")
    engine: Literal["airguard", "ios", "both"] = "both"
    seed: int | None = None
    evasion: bool = False
    export: bool = False


class SweepRequest(BaseModel):
    durations_s: list[Annotated[float, Field(gt=0, le=60)]] = Field(
        default_factory=lambda: [float(d) for d in range(1, 11)], min_length=1, max_length=60
    )
    devices: int = Field(default=8, ge=1, le=1000)
    scans: int = Field(default=10, ge=1, le=1000)
    seed: int = 0


class FleetRequest(BaseModel):
    """Fleet analytics over donated events or a synthetic population."""

    events: list[dict[str, Any]] | None = None
    synthetic_users: int = Field(default=500, ge=1, le=100_000)
    synthetic_days: int = Field(default=42, ge=1, le=3650)
    seed: int = 0
