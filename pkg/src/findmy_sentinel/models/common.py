"""Shared field types."""

from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer


def _coerce_bytes(value: Any) -> Any:
    """Accept hex strings (optionally ':'/' ' separated) and int sequences."""
    if isinstance(value, str):
        return bytes.fromhex(value.replace(":", "").replace(" ", ""))
    if isinstance(value, (list, tuple)):
        return bytes(value)
    return value


# Raw bytes in Python, lowercase hex in JSON
HexBytes = Annotated[
    bytes,
    BeforeValidator(_coerce_bytes),
    PlainSerializer(lambda b: b.hex(), return_type=str, when_used="json"),
]


class GeoPoint(BaseModel):
    """WGS84 position in decimal degrees."""

    model_config = ConfigDict(frozen=True)

    lat: float = Field(ge=-90.0, le=90.0)
    lon: float = Field(ge=-180.0, le=180.0)
