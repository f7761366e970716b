"""Hex-dump import/export: one frame per line, address first."""

import logging

from findmy_sentinel.codec.advertisement import decode_advertisement
from findmy_sentinel.core.exceptions import CodecError, HexDumpError
from findmy_sentinel.models.codec import ADDRESS_LENGTH, Advertisement

logger = logging.getLogger(__name__)


def parse_frame_line(line: str, line_number: int = 1) -> tuple[bytes, bytes | None]:
    """Split a hex-dump line into (address, payload) byte strings."""
    try:
        data = bytes(int(token, 16) for token in line.split())
    except ValueError:
        raise HexDumpError(line_number, "tokens must be hex bytes")
    if len(data) < ADDRESS_LENGTH:
        raise HexDumpError(line_number, f"need at least {ADDRESS_LENGTH} address bytes")
    return data[:ADDRESS_LENGTH], (data[ADDRESS_LENGTH:] or None)


def parse_hexdump(text: str, strict: bool = True) -> list[Advertisement]:
    """Decode every frame line of a hex dump.

    Args:
        text: Hex dump; blank lines and lines starting with '#' are skipped
        strict: Raise on the first bad frame; otherwise log and skip it

    Returns:
        Decoded advertisements in input order
    """
    frames: list[Advertisement] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            address, payload = parse_frame_line(line, line_number)
            frames.append(decode_advertisement(address, payload))
        except CodecError as e:
            if strict:
                raise
            logger.warning(f"Skipping frame on line {line_number}: {e.message}")
    return frames


def format_frame(advertisement: Advertisement) -> str:
    """Render one frame as space-separated uppercase hex bytes."""
    data = advertisement.address + (advertisement.payload or b"")
    return data.hex(" ").upper()


def format_hexdump(advertisements: list[Advertisement]) -> str:
    """Render frames one per line."""
    return "".join(f"{format_frame(adv)}\n" for adv in advertisements)
