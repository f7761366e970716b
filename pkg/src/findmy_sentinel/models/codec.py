"""Find My advertisement and GATT catalog models."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from findmy_sentinel.models.common import HexBytes

PUBLIC_KEY_LENGTH = 28
ADDRESS_LENGTH = 6
PAYLOAD_LENGTH = 31


class DeviceCategory(str, Enum):
    """TrackingAvoidance device types, keyed by status-byte type bits."""

    OTHER = "other"  # 0b00 - Apple devices (iPhone, Mac, iPad)
    DURIAN = "durian"  # 0b01 - AirTag
    HAWKEYE = "hawkeye"  # 0b10 - third-party accessories (Chipolo ONE Spot)
    HELE = "hele"  # 0b11 - headphones (AirPods Pro)

    @property
    def is_accessory(self) -> bool:
        """True for Find My accessories, False for lost Apple devices."""
        return self is not DeviceCategory.OTHER


class AdvertisementMode(str, Enum):
    """Which part of the Find My state machine produced a frame."""

    NEARBY = "nearby"  # address only
    SEPARATED = "separated"  # address + manufacturer payload


class StatusByte(BaseModel):
    """Status byte of a separated-state advertisement.

    Bits 2-3 carry the device type; the remaining bits (battery level and
    reserved flags) are kept opaque.
    """

    model_config = ConfigDict(frozen=True)

    raw: int = Field(ge=0, le=0xFF)

    @property
    def type_bits(self) -> int:
        return (self.raw >> 2) & 0b11

    @property
    def battery_bits(self) -> int:
        return (self.raw >> 6) & 0b11

    @classmethod
    def for_category(cls, category: DeviceCategory, battery_bits: int = 0) -> "StatusByte":
        """Build a status byte whose type bits encode ``category``."""
        type_bits = list(DeviceCategory).index(category)
        return cls(raw=((battery_bits & 0b11) << 6) | (type_bits << 2))


class Advertisement(BaseModel):
    """A decoded Find My BLE frame."""

    model_config = ConfigDict(frozen=True)

    address: HexBytes = Field(min_length=ADDRESS_LENGTH, max_length=ADDRESS_LENGTH)
    payload: HexBytes | None = None
    mode: AdvertisementMode

    @property
    def status(self) -> StatusByte | None:
        if self.payload is None:
            return None
        return StatusByte(raw=self.payload[6])

    @property
    def hint(self) -> int | None:
        if self.payload is None:
            return None
        return self.payload[30]

    @property
    def public_key(self) -> bytes | None:
        """Reassembled 28-byte public key (separated mode only)."""
        if self.payload is None:
            return None
        first = (self.address[0] & 0x3F) | ((self.payload[29] & 0b11) << 6)
        return bytes([first]) + self.address[1:] + self.payload[7:29]

    @property
    def address_str(self) -> str:
        return self.address.hex(":").upper()


class SoundDeviceClass(str, Enum):
    """Device classes with a known sound characteristic."""

    AIRTAG = "airtag"
    ACCESSORY_OR_AIRPODS = "accessory_or_airpods"


class SoundAction(str, Enum):
    """Sound actions a finder can request."""

    PLAY = "play"
    STOP = "stop"


class SoundCommand(BaseModel):
    """GATT write that starts or stops a sound on an accessory."""

    model_config = ConfigDict(frozen=True)

    device_class: SoundDeviceClass
    action: SoundAction
    service_uuid: str
    characteristic_uuid: str
    value: HexBytes
