"""Tests for key schedules and the transmitter state machine."""

import pytest
from pydantic import ValidationError

from findmy_sentinel.models.codec import AdvertisementMode, DeviceCategory
from findmy_sentinel.models.simulation import AccessoryKind, ConnectionState, KeyPolicy
from findmy_sentinel.simulation.accessory import (
    NEARBY_GRACE_S,
    emission_times,
    emit,
    make_accessory,
    step_state,
)
from findmy_sentinel.simulation.keys import (
    count_rotations,
    derive_key,
    new_schedule,
    rotate_key,
    rotation_index,
)

TEN_AM = 10 * 3600


class TestKeys:
    def test_derive_key_is_deterministic(self):
        assert derive_key(1, 0) == derive_key(1, 0)
        assert len(derive_key(1, 0)) == 28
        assert derive_key(1, 0) != derive_key(1, 1)
        assert derive_key(1, 0) != derive_key(2, 0)

    def test_static_never_rotates(self):
        sched = new_schedule(KeyPolicy.STATIC, seed=3)
        assert rotation_index(sched, 10 * 86400) == 0
        assert rotate_key(sched, 10 * 86400) is sched

    def test_fifteen_minutes(self):
        sched = new_schedule(KeyPolicy.EVERY_15_MIN, seed=4)
        assert rotation_index(sched, 899) == 0
        assert rotation_index(sched, 900) == 1
        assert count_rotations(sched, 0, 3600) == 4

    def test_paired_before_start(self):
        sched = new_schedule(KeyPolicy.EVERY_15_MIN, seed=4, paired_at=-300)
        assert rotation_index(sched, 599) == 0
        assert rotation_index(sched, 600) == 1

    def test_every_interval_requires_interval(self):
        with pytest.raises(ValidationError):
            new_schedule(KeyPolicy.EVERY_INTERVAL, seed=1)
        sched = new_schedule(KeyPolicy.EVERY_INTERVAL, seed=1, interval_s=60)
        assert rotation_index(sched, 125) == 2

    def test_daily_rotation_at_4am_local(self):
        # Paired at 10:00 local; the next 04:00 is 18 h later
        sched = new_schedule(KeyPolicy.DAILY_AT_4AM_LOCAL, seed=1)
        assert rotation_index(sched, 18 * 3600 - 1, tz_offset=TEN_AM) == 0
        assert rotation_index(sched, 18 * 3600, tz_offset=TEN_AM) == 1
        assert count_rotations(sched, 0, 7 * 86400, tz_offset=TEN_AM) == 7

    def test_rotate_key_returns_new_schedule(self):
        sched = new_schedule(KeyPolicy.EVERY_15_MIN, seed=9)
        assert rotate_key(sched, 100) is sched
        rotated = rotate_key(sched, 1000)
        assert rotated.rotation_index == 1
        assert rotated.current_key == derive_key(9, 1)


class TestStateMachine:
    def _connected(self, kind=AccessoryKind.ACCESSORY):
        return make_accessory("tag", kind, conn_state=ConnectionState.CONNECTED)

    def test_losing_owner_enters_nearby(self):
        acc = step_state(self._connected(), 100, owner_in_range=False)
        assert acc.conn_state is ConnectionState.NEARBY
        assert acc.nearby_entered_at == 100

    def test_nearby_becomes_separated_after_grace(self):
        acc = step_state(self._connected(), 100, owner_in_range=False)
        assert step_state(acc, 100 + NEARBY_GRACE_S - 1, False).conn_state is ConnectionState.NEARBY
        assert step_state(acc, 100 + NEARBY_GRACE_S, False).conn_state is ConnectionState.SEPARATED

    def test_owner_return_reconnects(self):
        acc = step_state(self._connected(), 100, owner_in_range=False)
        acc = step_state(acc, 200, owner_in_range=True)
        assert acc.conn_state is ConnectionState.CONNECTED
        assert acc.nearby_entered_at is None

    def test_apple_device_skips_nearby(self):
        acc = step_state(self._connected(AccessoryKind.APPLE_DEVICE), 100, owner_in_range=False)
        assert acc.conn_state is ConnectionState.SEPARATED

    def test_unpaired_is_inert(self):
        acc = make_accessory("tag", AccessoryKind.ACCESSORY, conn_state=ConnectionState.UNPAIRED)
        assert step_state(acc, 100, True) is acc
        assert emit(acc, 100) is None


class TestEmission:
    def test_separated_frame_carries_category(self):
        acc = make_accessory("chipolo", AccessoryKind.ACCESSORY, category=DeviceCategory.HAWKEYE)
        frame = emit(acc, 0)
        assert frame.mode is AdvertisementMode.SEPARATED
        assert frame.status.type_bits == 2
        assert frame.hint == 0

    def test_nearby_frame_is_address_only(self):
        acc = make_accessory("tag", AccessoryKind.ACCESSORY, conn_state=ConnectionState.NEARBY)
        assert emit(acc, 0).payload is None

    def test_connected_is_silent(self):
        acc = make_accessory("tag", AccessoryKind.ACCESSORY, conn_state=ConnectionState.CONNECTED)
        assert emit(acc, 0) is None

    def test_emission_cadence(self):
        acc = make_accessory("tag", AccessoryKind.ACCESSORY, emission_phase_s=0.5)
        assert list(emission_times(acc, 0, 10)) == [0.5, 2.5, 4.5, 6.5, 8.5]
        assert list(emission_times(acc, 3, 5)) == [4.5]

    def test_default_policies(self):
        assert make_accessory("a", AccessoryKind.ACCESSORY).key_schedule.policy is KeyPolicy.DAILY_AT_4AM_LOCAL
        haystack = make_accessory("h", AccessoryKind.OPEN_HAYSTACK)
        assert haystack.key_schedule.policy is KeyPolicy.STATIC
        assert haystack.category is DeviceCategory.OTHER

    def test_accessory_cannot_be_other(self):
        with pytest.raises(ValidationError):
            make_accessory("a", AccessoryKind.ACCESSORY, category=DeviceCategory.OTHER)
