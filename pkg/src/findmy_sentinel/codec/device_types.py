"""Device-type classification from the status byte."""

from findmy_sentinel.models.codec import DeviceCategory, StatusByte

_BY_TYPE_BITS: tuple[DeviceCategory, ...] = (
    DeviceCategory.OTHER,
    DeviceCategory.DURIAN,
    DeviceCategory.HAWKEYE,
    DeviceCategory.HELE,
)

# Example hardware per category, used in reports
CATEGORY_EXAMPLES: dict[DeviceCategory, str] = {
    DeviceCategory.OTHER: "iPhone, Mac, iPad",
    DeviceCategory.DURIAN: "AirTag",
    DeviceCategory.HAWKEYE: "Chipolo ONE Spot",
    DeviceCategory.HELE: "AirPods Pro",
}


def classify_device(status: StatusByte | int) -> DeviceCategory:
    """Map the type bits (bits 2-3) of a status byte to a device category."""
    raw = status if isinstance(status, int) else status.raw
    return _BY_TYPE_BITS[(raw >> 2) & 0b11]
