"""The three built-in tracking scenarios: pocket, backpack and car.

All start at 10:00 local time at the victim's home (or, for the car, at a
street spot 300 m west of it). Walking legs use 1.2 m/s, rides 10 m/s.
"""

from collections.abc import Callable
from typing import Any

from findmy_sentinel.core.exceptions import ScenarioConfigError, UnknownScenarioError
from findmy_sentinel.harness.scenario import AccessorySpec, Scenario, parse_scenario
from findmy_sentinel.models.codec import DeviceCategory
from findmy_sentinel.models.common import GeoPoint
from findmy_sentinel.models.detection import ScanSchedule
from findmy_sentinel.models.simulation import AccessoryKind, KeyPolicy
from findmy_sentinel.simulation.trace import RouteBuilder
from findmy_sentinel.utils.geo import offset_point

HOME = GeoPoint(lat=49.8728, lon=8.6512)
WALK = 1.2
DRIVE = 10.0
DEFAULT_SEED = 7

TRACKERS = (
    AccessorySpec(
        id="AirTag",
        kind=AccessoryKind.ACCESSORY,
        category=DeviceCategory.DURIAN,
        key_policy=KeyPolicy.DAILY_AT_4AM_LOCAL,
        key_seed=1,
    ),
    AccessorySpec(
        id="Chipolo",
        kind=AccessoryKind.ACCESSORY,
        category=DeviceCategory.HAWKEYE,
        key_policy=KeyPolicy.DAILY_AT_4AM_LOCAL,
        key_seed=2,
        emission_phase_s=0.5,
    ),
    AccessorySpec(
        id="OpenHaystack",
        kind=AccessoryKind.OPEN_HAYSTACK,
        category=DeviceCategory.OTHER,
        key_policy=KeyPolicy.STATIC,
        key_seed=3,
        emission_phase_s=1.0,
    ),
)

# Paired five minutes before the start: its keys change at 600 s + k * 900 s
FAST_ROTATOR = AccessorySpec(
    id="FastRotator",
    kind=AccessoryKind.FAST_ROTATOR,
    category=DeviceCategory.DURIAN,
    key_policy=KeyPolicy.EVERY_15_MIN,
    key_seed=4,
    paired_at=-300.0,
    emission_phase_s=1.5,
)


def _accessories(evasion: bool) -> list[AccessorySpec]:
    return [*TRACKERS, FAST_ROTATOR] if evasion else list(TRACKERS)


def pocket(seed: int = DEFAULT_SEED, evasion: bool = False) -> Scenario:
    """Tracker in a coat pocket: walk to a cafe, stay, walk home."""
    victim = (
        RouteBuilder(HOME)
        .move(east_m=3024, speed_mps=WALK)  # 0-2520 s
        .stay(1260)  # cafe until 3780 s
        .move(east_m=-3024, speed_mps=WALK)  # home at 6300 s
        .stay(2700)
        .build()
    )
    return Scenario(
        name="pocket",
        position="Pocket",
        description="Tracker in the victim's coat pocket on a walk to a cafe and back.",
        seed=seed,
        home=HOME,
        victim_trace=victim,
        accessories=_accessories(evasion),
        airguard_schedule=ScanSchedule(period_s=900, duration_s=8, offset_s=312),
        ios_schedule=ScanSchedule(period_s=120, duration_s=8, offset_s=52),
    )


def backpack(seed: int = DEFAULT_SEED, evasion: bool = False) -> Scenario:
    """Tracker in a backpack: a working day at an office, six hours away from home."""
    victim = (
        RouteBuilder(HOME)
        .move(east_m=4320, speed_mps=WALK)  # office at 3600 s
        .stay(5800)
        .move(east_m=360, speed_mps=WALK)  # leaves the backpack, 9400-9700 s
        .stay(100)
        .move(east_m=-360, speed_mps=WALK)  # back at the office at 10100 s
        .stay(7900)
        .move(east_m=-4320, speed_mps=WALK)  # home at 21600 s
        .stay(1800)
        .build()
    )
    backpack_trace = (
        RouteBuilder(HOME)
        .move(east_m=4320, speed_mps=WALK)
        .stay(14400)
        .move(east_m=-4320, speed_mps=WALK)
        .stay(1800)
        .build()
    )
    return Scenario(
        name="backpack",
        position="Backpack",
        description="Tracker in a backpack carried to an office and back home.",
        seed=seed,
        home=HOME,
        victim_trace=victim,
        tracker_trace=backpack_trace,
        accessories=_accessories(evasion),
        airguard_schedule=ScanSchedule(period_s=900, duration_s=8, offset_s=41),
        ios_schedule=ScanSchedule(period_s=120, duration_s=8, offset_s=52),
    )


def car(seed: int = DEFAULT_SEED, evasion: bool = False) -> Scenario:
    """Tracker attached to a car: two 30-minute rides three and a half hours apart."""
    street = offset_point(HOME, east_m=-300)
    victim = (
        RouteBuilder(street)
        .move(east_m=18000, speed_mps=DRIVE)  # ride 1, 0-1800 s
        .move(east_m=360, speed_mps=WALK)  # to the venue by 2100 s
        .stay(12000)
        .move(east_m=-360, speed_mps=WALK)  # back at the car at 14400 s
        .move(east_m=-18000, speed_mps=DRIVE)  # ride 2, until 16200 s
        .move(east_m=300, speed_mps=WALK)  # home at 16450 s
        .stay(1550)
        .build()
    )
    car_trace = (
        RouteBuilder(street)
        .move(east_m=18000, speed_mps=DRIVE)
        .stay(12600)
        .move(east_m=-18000, speed_mps=DRIVE)
        .stay(1800)
        .build()
    )
    return Scenario(
        name="car",
        position="Car",
        description="Tracker attached to the victim's car, parked 300 m from home.",
        seed=seed,
        home=HOME,
        victim_trace=victim,
        tracker_trace=car_trace,
        accessories=_accessories(evasion),
        airguard_schedule=ScanSchedule(period_s=900, duration_s=8, offset_s=1083),
        ios_schedule=ScanSchedule(period_s=120, duration_s=8, offset_s=52),
    )


CANONICAL: dict[str, Callable[..., Scenario]] = {
    "pocket": pocket,
    "backpack": backpack,
    "car": car,
}


def canonical_names() -> list[str]:
    return list(CANONICAL)


def get_canonical(name: str, seed: int = DEFAULT_SEED, evasion: bool = False) -> Scenario:
    try:
        factory = CANONICAL[name]
    except KeyError:
        raise UnknownScenarioError(name, canonical_names())
    return factory(seed=seed, evasion=evasion)


def resolve_scenario(
    name: str | None = None,
    document: dict[str, Any] | None = None,
    seed: int | None = None,
    evasion: bool = False,
) -> Scenario:
    """A canonical scenario by name, or an inline document, with an optional seed override."""
    if document is not None:
        scenario = parse_scenario(document, source="<request>")
        return scenario if seed is None else scenario.model_copy(update={"seed": seed})
    if name is None:
        raise ScenarioConfigError("<request>", [{"field": "name", "message": "name or scenario required"}])
    return get_canonical(name, seed=DEFAULT_SEED if seed is None else seed, evasion=evasion)
