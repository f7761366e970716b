"""Bit-exact encoder/decoder for Find My BLE advertisements.

Payload byte map (31 bytes following the address)::

    [0]      0x1E  AD length
    [1]      0xFF  AD type (manufacturer specific data)
    [2..3]   4C 00 Apple company ID, little-endian on the wire
    [4]      0x12  Find My network type
    [5]      0x19  data length (25)
    [6]      status byte
    [7..28]  public key bytes 6..27
    [29]     public key bits (key[0] >> 6)
    [30]     hint byte
"""

import struct

from findmy_sentinel.core.exceptions import (
    BadAddressError,
    KeyLengthError,
    MalformedLengthError,
    NotFindMyError,
)
from findmy_sentinel.models.codec import (
    ADDRESS_LENGTH,
    PAYLOAD_LENGTH,
    PUBLIC_KEY_LENGTH,
    Advertisement,
    AdvertisementMode,
    StatusByte,
)

APPLE_COMPANY_ID = 0x004C
FIND_MY_NETWORK_TYPE = 0x12
FIND_MY_DATA_LENGTH = 25
STATIC_ADDRESS_MARKER = 0xC0

_HEADER = struct.pack(
    "<BBHBB",
    PAYLOAD_LENGTH - 1,
    0xFF,
    APPLE_COMPANY_ID,
    FIND_MY_NETWORK_TYPE,
    FIND_MY_DATA_LENGTH,
)

# Offsets of the fixed header bytes, in the order they are checked
HEADER_OFFSETS = tuple(range(len(_HEADER)))


def address_from_key(key: bytes) -> bytes:
    """Derive the static BLE address from the first six key bytes."""
    if len(key) != PUBLIC_KEY_LENGTH:
        raise KeyLengthError(len(key))
    return bytes([key[0] | STATIC_ADDRESS_MARKER]) + key[1:6]


def encode_advertisement(key: bytes, status: StatusByte, hint: int = 0x00) -> Advertisement:
    """Encode a separated-state advertisement for ``key``.

    Args:
        key: 28-byte compressed public key (treated as opaque)
        status: Status byte (type bits + opaque battery/reserved bits)
        hint: Hint byte, 0x00 for frames emitted by Apple devices

    Returns:
        Separated-mode Advertisement

    Raises:
        KeyLengthError: If key is not 28 bytes
    """
    address = address_from_key(key)
    payload = (
        _HEADER
        + bytes([status.raw])
        + key[6:]
        + bytes([key[0] >> 6, hint & 0xFF])
    )
    return Advertisement(address=address, payload=payload, mode=AdvertisementMode.SEPARATED)


def encode_nearby(key: bytes) -> Advertisement:
    """Encode the address-only frame a nearby-state accessory emits."""
    return Advertisement(address=address_from_key(key), mode=AdvertisementMode.NEARBY)


def _check_address(address: bytes) -> None:
    if len(address) != ADDRESS_LENGTH:
        raise BadAddressError(address, reason=f"expected {ADDRESS_LENGTH} bytes, got {len(address)}")
    if address[0] & STATIC_ADDRESS_MARKER != STATIC_ADDRESS_MARKER:
        raise BadAddressError(address)


def _check_header(payload: bytes) -> None:
    for offset in HEADER_OFFSETS:
        if offset >= len(payload):
            break
        if payload[offset] != _HEADER[offset]:
            raise NotFindMyError(offset, _HEADER[offset], payload[offset])


def decode_advertisement(address: bytes, payload: bytes | None = None) -> Advertisement:
    """Decode a received frame.

    An address with the static marker bits and no payload is reported as a
    nearby-state frame so callers can ignore it explicitly.

    Raises:
        BadAddressError: If the address is not 6 bytes or lacks the marker bits
        NotFindMyError: If a header constant does not match
        MalformedLengthError: If the header matches but the byte count does not
    """
    _check_address(address)
    if not payload:
        return Advertisement(address=address, mode=AdvertisementMode.NEARBY)

    _check_header(payload)
    if len(payload) != PAYLOAD_LENGTH:
        raise MalformedLengthError(len(payload), PAYLOAD_LENGTH)

    return Advertisement(address=address, payload=payload, mode=AdvertisementMode.SEPARATED)
