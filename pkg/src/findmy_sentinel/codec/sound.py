"""GATT characteristics to start and stop a sound on Find My accessories.

Pure catalog lookup; the actual GATT write is left to radio tooling.
"""

from findmy_sentinel.core.exceptions import UnsupportedSoundCommandError
from findmy_sentinel.models.codec import SoundAction, SoundCommand, SoundDeviceClass

AIRTAG_SOUND_SERVICE = "7DFC9000-7D1C-4951-86AA-8D9728F8D66C"
# Kept as published; the characteristic UUID is one hex digit short.
AIRTAG_SOUND_CHARACTERISTIC = "7DFC9001-7D1C-4951-86AA-8D9728F8D66"

FIND_MY_ACCESSORY_SERVICE = "FD44"
ACCESSORY_SOUND_CHARACTERISTIC = "4F860003-943B-49EF-BED4-2F730304427A"

SOUND_CATALOG: dict[tuple[SoundDeviceClass, SoundAction], SoundCommand] = {
    (SoundDeviceClass.AIRTAG, SoundAction.PLAY): SoundCommand(
        device_class=SoundDeviceClass.AIRTAG,
        action=SoundAction.PLAY,
        service_uuid=AIRTAG_SOUND_SERVICE,
        characteristic_uuid=AIRTAG_SOUND_CHARACTERISTIC,
        value=b"\xaf",
    ),
    (SoundDeviceClass.ACCESSORY_OR_AIRPODS, SoundAction.PLAY): SoundCommand(
        device_class=SoundDeviceClass.ACCESSORY_OR_AIRPODS,
        action=SoundAction.PLAY,
        service_uuid=FIND_MY_ACCESSORY_SERVICE,
        characteristic_uuid=ACCESSORY_SOUND_CHARACTERISTIC,
        value=b"\x01\x00\x03",
    ),
    (SoundDeviceClass.ACCESSORY_OR_AIRPODS, SoundAction.STOP): SoundCommand(
        device_class=SoundDeviceClass.ACCESSORY_OR_AIRPODS,
        action=SoundAction.STOP,
        service_uuid=FIND_MY_ACCESSORY_SERVICE,
        characteristic_uuid=ACCESSORY_SOUND_CHARACTERISTIC,
        value=b"\x01\x01\x03",
    ),
}


def sound_command(
    device_class: SoundDeviceClass | str,
    action: SoundAction | str,
) -> SoundCommand:
    """Look up the GATT write for a (device class, action) pair.

    Raises:
        UnsupportedSoundCommandError: If the pair is not in the catalog
            (AirTags can play a sound but not stop it)
    """
    try:
        key = (SoundDeviceClass(device_class), SoundAction(action))
    except ValueError:
        raise UnsupportedSoundCommandError(str(device_class), str(action))

    command = SOUND_CATALOG.get(key)
    if command is None:
        raise UnsupportedSoundCommandError(key[0].value, key[1].value)
    return command
