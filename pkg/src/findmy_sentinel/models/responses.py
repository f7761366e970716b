"""API response models."""

from pydantic import BaseModel

from findmy_sentinel.codec.device_types import classify_device
from findmy_sentinel.models.codec import Advertisement, AdvertisementMode, DeviceCategory


class HealthResponse(BaseModel):
    status: str
    version: str


class InfoResponse(BaseModel):
    name: str
    version: str
    python_version: str
    scenarios: list[str]
    engines: list[str]


class FrameResponse(BaseModel):
    """One decoded (or freshly encoded) frame."""

    address: str
    payload: str | None
    mode: AdvertisementMode
    category: DeviceCategory | None = None
    status: int | None = None
    hint: int | None = None
    public_key: str | None = None

    @classmethod
    def from_advertisement(cls, adv: Advertisement) -> "FrameResponse":
        status = adv.status
        key = adv.public_key
        return cls(
            address=adv.address_str,
            payload=adv.payload.hex() if adv.payload is not None else None,
            mode=adv.mode,
            category=classify_device(status) if status is not None else None,
            status=status.raw if status is not None else None,
            hint=adv.hint,
            public_key=key.hex() if key is not None else None,
        )


class DecodeResponse(BaseModel):
    frames: list[FrameResponse]
    total: int


class ScenarioSummary(BaseModel):
    name: str
    position: str
    description: str
    trackers: list[str]


class ScenarioListResponse(BaseModel):
    scenarios: list[ScenarioSummary]
    total: int
