"""Codec endpoints - encode, decode and the sound catalog."""

from fastapi import APIRouter

from findmy_sentinel.codec import encode_advertisement, parse_hexdump, sound_command
from findmy_sentinel.models.codec import SoundAction, SoundCommand, SoundDeviceClass, StatusByte
from findmy_sentinel.models.requests import DecodeRequest, EncodeRequest
from findmy_sentinel.models.responses import DecodeResponse, FrameResponse

router = APIRouter(prefix="/codec", tags=["Codec"])


@router.post("/encode", response_model=FrameResponse)
async def encode(request: EncodeRequest) -> FrameResponse:
    """Encode a separated-state advertisement."""
    adv = encode_advertisement(request.public_key, StatusByte(raw=request.status), request.hint)
    return FrameResponse.from_advertisement(adv)


@router.post("/decode", response_model=DecodeResponse)
async def decode(request: DecodeRequest) -> DecodeResponse:
    """Decode a hex dump; with ``strict=false`` bad frames are skipped."""
    frames = [FrameResponse.from_advertisement(a) for a in parse_hexdump(request.hexdump, request.strict)]
    return DecodeResponse(frames=frames, total=len(frames))


@router.get("/sound/{device_class}/{action}", response_model=SoundCommand)
async def sound(device_class: SoundDeviceClass, action: SoundAction) -> SoundCommand:
    return sound_command(device_class, action)
