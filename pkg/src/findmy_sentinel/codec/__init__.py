"""Find My BLE advertisement codec, device types and the sound catalog."""

from findmy_sentinel.codec.advertisement import (
    address_from_key,
    decode_advertisement,
    encode_advertisement,
    encode_nearby,
)
from findmy_sentinel.codec.device_types import classify_device
from findmy_sentinel.codec.hexdump import format_hexdump, parse_hexdump
from findmy_sentinel.codec.sound import sound_command

__all__ = [
    "address_from_key",
    "classify_device",
    "decode_advertisement",
    "encode_advertisement",
    "encode_nearby",
    "format_hexdump",
    "parse_hexdump",
    "sound_command",
]
