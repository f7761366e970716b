"""Tests for the TrackingAvoidance store, filters, visits and staging."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from findmy_sentinel.detection.ios import IosDetector, replay_events
from findmy_sentinel.detection.ios.general_filter import general_filter, is_suspicious, recency_start
from findmy_sentinel.detection.ios.staging import notify_policy
from findmy_sentinel.detection.ios.store import TaStore, derive_views
from findmy_sentinel.detection.ios.visits import VisitTracker, single_visit_detector, visit_detector
from findmy_sentinel.models.codec import AdvertisementMode, DeviceCategory
from findmy_sentinel.models.detection import Engine
from findmy_sentinel.models.ios import (
    AdvertisementEvent,
    GeneralFilterParams,
    LocationEvent,
    StagingPolicy,
    StoreViews,
    Suspicion,
    UserActivityEvent,
    VehicularState,
    VehicularStateEvent,
    VisitParams,
)
from findmy_sentinel.models.simulation import UserActivity
from findmy_sentinel.utils.geo import haversine_m, offset_point
from tests.conftest import ORIGIN, make_sighting

PARAMS = GeneralFilterParams()
ADDRESS = b"\xc1\x02\x03\x04\x05\x06"


def walking_events(until: float, step_s: float = 60, step_m: float = 100, category=DeviceCategory.DURIAN):
    """A pedestrian victim followed by one tracker heard every ``step_s``."""
    events = []
    t, i = 0.0, 0
    while t <= until:
        location = offset_point(ORIGIN, east_m=i * step_m)
        events.append(UserActivityEvent(at=t, activity=UserActivity.PEDESTRIAN, speed_mps=step_m / step_s))
        events.append(
            AdvertisementEvent(at=t, sighting=make_sighting(t, location=location, category=category, scan_index=i))
        )
        t += step_s
        i += 1
    return events


def suspicion(address=ADDRESS, engine=Engine.IOS_GENERAL):
    return Suspicion(
        address=address, category=DeviceCategory.DURIAN, engine=engine, distance_m=900, duration_s=700
    )


class TestIsSuspicious:
    WALKING = StoreViews(dominant_user_activity=UserActivity.PEDESTRIAN, walking_speed=1.4)
    DRIVING = StoreViews(
        dominant_user_activity=UserActivity.VEHICULAR, last_vehicular_state=VehicularState.VEHICULAR
    )

    def test_thresholds_are_strict(self):
        assert not is_suspicious(self.WALKING, 840, 700, PARAMS)
        assert not is_suspicious(self.WALKING, 900, 600, PARAMS)
        assert is_suspicious(self.WALKING, 840.5, 600.5, PARAMS)

    def test_driving_needs_vehicle_state(self):
        assert is_suspicious(self.DRIVING, 5000, 700, PARAMS)
        no_vehicle = StoreViews(dominant_user_activity=UserActivity.VEHICULAR)
        assert not is_suspicious(no_vehicle, 5000, 700, PARAMS)

    def test_fast_walking_rejected(self):
        runner = StoreViews(dominant_user_activity=UserActivity.PEDESTRIAN, walking_speed=3.0)
        assert not is_suspicious(runner, 5000, 700, PARAMS)

    @settings(max_examples=1000)
    @given(
        activity=st.sampled_from(list(UserActivity)),
        walking_speed=st.none() | st.floats(0, 10),
        vehicular=st.none() | st.sampled_from(list(VehicularState)),
        density=st.booleans(),
        distance=st.floats(0, 5000),
        duration=st.floats(0, 5000),
    )
    def test_matches_reference_rule(self, activity, walking_speed, vehicular, density, distance, duration):
        views = StoreViews(
            dominant_user_activity=activity,
            walking_speed=walking_speed,
            last_vehicular_state=vehicular,
            people_density=density,
        )
        driving = (vehicular is VehicularState.VEHICULAR or density) and activity is UserActivity.VEHICULAR
        walking = activity is UserActivity.PEDESTRIAN and walking_speed is not None and walking_speed < 3.0
        expected = (driving or walking) and distance > 840 and duration > 600
        assert is_suspicious(views, distance, duration, PARAMS) == expected


class TestStore:
    def test_nearby_frames_not_tracked(self):
        store = TaStore()
        nearby = make_sighting(10).model_copy(update={"mode": AdvertisementMode.NEARBY})
        store.add(AdvertisementEvent(at=10, sighting=nearby))
        assert store.devices == {}
        assert len(store.events) == 1

    def test_out_of_order_events_sorted(self):
        store = TaStore()
        store.add(LocationEvent(at=20, location=ORIGIN))
        store.add(LocationEvent(at=10, location=offset_point(ORIGIN, east_m=50)))
        assert [e.at for e in store.events] == [10, 20]
        assert store.latest_location(15) == offset_point(ORIGIN, east_m=50)

    def test_sightings_window_is_half_open(self):
        store = TaStore()
        for t in (0, 60, 120):
            store.add(AdvertisementEvent(at=t, sighting=make_sighting(t)))
        assert [s.at for s in store.sightings(ADDRESS, 0, 120)] == [60, 120]


class TestDeriveViews:
    def test_dominant_activity_and_speed(self):
        store = TaStore()
        store.add_all(
            [
                UserActivityEvent(at=100, activity=UserActivity.PEDESTRIAN, speed_mps=1.0),
                UserActivityEvent(at=200, activity=UserActivity.PEDESTRIAN, speed_mps=2.0),
                UserActivityEvent(at=300, activity=UserActivity.STATIC),
                VehicularStateEvent(at=50, state=VehicularState.NON_VEHICULAR),
            ]
        )
        views = derive_views(store, 400, 900)
        assert views.dominant_user_activity is UserActivity.PEDESTRIAN
        assert views.walking_speed == pytest.approx(1.5)
        assert views.last_vehicular_state is VehicularState.NON_VEHICULAR
        assert not views.is_in_vehicle

    def test_tie_is_unknown(self):
        store = TaStore()
        store.add_all(
            [
                UserActivityEvent(at=100, activity=UserActivity.PEDESTRIAN, speed_mps=1.0),
                UserActivityEvent(at=200, activity=UserActivity.STATIC),
            ]
        )
        assert derive_views(store, 400, 900).dominant_user_activity is UserActivity.UNKNOWN

    def test_old_activity_ignored(self):
        store = TaStore()
        store.add(UserActivityEvent(at=0, activity=UserActivity.VEHICULAR))
        assert derive_views(store, 2000, 900).dominant_user_activity is UserActivity.UNKNOWN


class TestGeneralFilter:
    def test_flags_follower(self):
        store = TaStore()
        store.add_all(walking_events(1000))
        [flagged] = general_filter(store, PARAMS, 960)
        assert flagged.engine is Engine.IOS_GENERAL
        assert flagged.duration_s > 600 and flagged.distance_m > 840

    def test_lost_apple_devices_excluded(self):
        store = TaStore()
        store.add_all(walking_events(1000, category=DeviceCategory.OTHER))
        assert general_filter(store, PARAMS, 960) == []

    def test_window_recency(self):
        assert recency_start(1000, PARAMS) == 100

    def test_day_recency(self):
        day = GeneralFilterParams(recency_mode="day", tz_offset_s=36000)
        assert recency_start(0, day) == -36000
        assert recency_start(50400, day) == 50400
        assert recency_start(50399, day) == -36000


FILTER_ADDRESSES = [bytes([0xC0 | i, 0x11, 0x22, 0x33, 0x44, 0x55]) for i in range(4)]
DAY_S = 86_400


@st.composite
def filter_inputs(draw):
    """Random store contents, thresholds and evaluation time."""
    activities = draw(
        st.lists(
            st.tuples(st.integers(0, 3000), st.sampled_from(list(UserActivity)), st.floats(0, 6)),
            max_size=12,
        )
    )
    vehicular = draw(
        st.lists(
            st.tuples(st.integers(0, 3000), st.sampled_from(list(VehicularState))),
            max_size=4,
            unique_by=lambda v: v[0],
        )
    )
    devices = {}
    for address in FILTER_ADDRESSES[: draw(st.integers(0, len(FILTER_ADDRESSES)))]:
        category = draw(st.sampled_from(list(DeviceCategory)))
        sightings = draw(
            st.lists(
                st.tuples(st.integers(0, 3000), st.integers(-2000, 2000), st.integers(-2000, 2000)),
                min_size=1,
                max_size=8,
                unique_by=lambda s: s[0],
            )
        )
        devices[address] = (category, sightings)
    params = GeneralFilterParams(
        recency_window_s=draw(st.integers(60, 3000)),
        threshold_duration_s=draw(st.integers(1, 2000)),
        threshold_distance_m=draw(st.integers(1, 3000)),
        max_walking_speed_mps=draw(st.floats(0.5, 5)),
        recency_mode=draw(st.sampled_from(["window", "day"])),
        tz_offset_s=draw(st.integers(0, DAY_S - 1)),
    )
    return activities, vehicular, devices, params, float(draw(st.integers(0, 3000)))


def reference_flags(activities, vehicular, devices, params, now) -> dict[bytes, float]:
    """Flagged addresses and their durations, computed straight from the raw inputs."""
    views_start = now - params.recency_window_s
    recent_activities = [
        (activity, speed)
        for t, activity, speed in sorted(activities, key=lambda a: a[0])
        if views_start < t <= now
    ]
    ranked = Counter(activity for activity, _ in recent_activities).most_common()
    dominant = UserActivity.UNKNOWN
    if ranked and (len(ranked) == 1 or ranked[0][1] > ranked[1][1]):
        dominant = ranked[0][0]
    speeds = [speed for activity, speed in recent_activities if activity is UserActivity.PEDESTRIAN]
    walking_speed = sum(speeds) / len(speeds) if speeds else None
    past_states = sorted((t, state) for t, state in vehicular if t <= now)
    in_vehicle = bool(past_states) and past_states[-1][1] is VehicularState.VEHICULAR

    driving = in_vehicle and dominant is UserActivity.VEHICULAR
    walking = (
        dominant is UserActivity.PEDESTRIAN
        and walking_speed is not None
        and walking_speed < params.max_walking_speed_mps
    )
    if params.recency_mode == "day":
        lower = (now + params.tz_offset_s) // DAY_S * DAY_S - params.tz_offset_s
    else:
        lower = views_start

    flagged = {}
    for address, (category, sightings) in devices.items():
        if category is DeviceCategory.OTHER:
            continue
        recent = sorted(s for s in sightings if lower < s[0] <= now)
        if not recent:
            continue
        points = [offset_point(ORIGIN, east_m=east, north_m=north) for _, east, north in recent]
        distance = sum(haversine_m(a, b) for a, b in zip(points, points[1:]))
        duration = recent[-1][0] - recent[0][0]
        if (
            (driving or walking)
            and distance > params.threshold_distance_m
            and duration > params.threshold_duration_s
        ):
            flagged[address] = float(duration)
    return flagged


class TestGeneralFilterOracle:
    @settings(max_examples=1000, deadline=None)
    @given(inputs=filter_inputs())
    def test_matches_reference_evaluator(self, inputs):
        activities, vehicular, devices, params, now = inputs
        events = [UserActivityEvent(at=t, activity=a, speed_mps=s) for t, a, s in activities]
        events += [VehicularStateEvent(at=t, state=state) for t, state in vehicular]
        for address, (category, sightings) in devices.items():
            events += [
                AdvertisementEvent(
                    at=t,
                    sighting=make_sighting(
                        t,
                        address=address,
                        location=offset_point(ORIGIN, east_m=east, north_m=north),
                        category=category,
                    ),
                )
                for t, east, north in sightings
            ]
        store = TaStore()
        store.add_all(sorted(events, key=lambda e: e.at))

        flagged = {s.address: s.duration_s for s in general_filter(store, params, now)}

        assert flagged == reference_flags(activities, vehicular, devices, params, now)


class TestVisits:
    def test_confirmed_after_dwell_and_closed_on_departure(self):
        tracker = VisitTracker(VisitParams())
        assert tracker.update(0, ORIGIN) is None
        assert tracker.update(300, offset_point(ORIGIN, east_m=10)) is None
        visit = tracker.update(600, ORIGIN)
        assert visit is not None and visit.arrival == 0
        assert tracker.update(700, offset_point(ORIGIN, east_m=500)) is None
        assert tracker.current is None
        assert tracker.previous.departure == 700

    def test_visit_detector_intersection(self):
        prev = {"aa": DeviceCategory.DURIAN, "bb": DeviceCategory.OTHER, "cc": DeviceCategory.HELE}
        cur = {"aa": DeviceCategory.DURIAN, "bb": DeviceCategory.OTHER}
        assert visit_detector(prev, cur) == {"aa"}

    def test_single_visit_detector(self):
        store = TaStore()
        store.add_all([e for e in walking_events(600) if isinstance(e, AdvertisementEvent)])
        assert single_visit_detector({ADDRESS.hex()}, store, 600) == {ADDRESS.hex()}
        # Not heard within the recency window
        assert single_visit_detector({ADDRESS.hex()}, store, 1000) == set()


class TestNotifyPolicy:
    POLICY = StagingPolicy()

    def test_new_suspicion_is_staged(self):
        notified, staging = notify_policy([suspicion()], [], False, 100, policy=self.POLICY)
        assert notified == []
        assert staging[0].staging_end == 100 + 9000

    def test_at_home_and_present_notifies_immediately(self):
        notified, staging = notify_policy(
            [suspicion()], [], True, 100, present={ADDRESS}, policy=self.POLICY
        )
        assert [e.address for e in notified] == [ADDRESS]
        assert staging == []

    def test_present_at_staging_end(self):
        _, staging = notify_policy([suspicion()], [], False, 0, policy=self.POLICY)
        notified, _ = notify_policy([], staging, False, 9000, present={ADDRESS}, policy=self.POLICY)
        assert len(notified) == 1

    def test_absent_prolonged_once_then_dropped(self):
        _, staging = notify_policy([suspicion()], [], False, 0, policy=self.POLICY)
        notified, staging = notify_policy([], staging, False, 9000, policy=self.POLICY)
        assert notified == []
        assert staging[0].prolong_count == 1
        assert staging[0].staging_end == 9000 + 5400
        notified, staging = notify_policy([], staging, False, 14400, policy=self.POLICY)
        assert notified == [] and staging == []

    def test_already_notified_not_restaged(self):
        _, staging = notify_policy([suspicion()], [], False, 0, notified={ADDRESS}, policy=self.POLICY)
        assert staging == []


class TestIosDetector:
    def test_follower_notified_after_staging(self):
        detector = IosDetector(general=PARAMS, staging=StagingPolicy())
        verdicts = replay_events(walking_events(10_000), detector)
        [verdict] = verdicts
        assert verdict.engine is Engine.IOS_GENERAL
        assert verdict.notified_at == 720 + 9000
        assert detector.notified == {ADDRESS}

    def test_stale_devices_forgotten(self):
        detector = IosDetector(general=PARAMS)
        detector.add_event(AdvertisementEvent(at=0, sighting=make_sighting(0)))
        detector.run_cycle(120)
        assert ADDRESS in detector.store.devices
        detector.run_cycle(1000)
        assert ADDRESS not in detector.store.devices

    def test_replay_of_nothing(self):
        assert replay_events([]) == []
