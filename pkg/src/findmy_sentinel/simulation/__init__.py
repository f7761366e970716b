"""Find My transmitter simulation: key schedules, state machine, radio."""

from findmy_sentinel.simulation.accessory import emit, make_accessory, step_state
from findmy_sentinel.simulation.keys import derive_key, rotate_key
from findmy_sentinel.simulation.radio import RadioParams, RadioSimulator, run_radio_sim
from findmy_sentinel.simulation.trace import MovementTrace, RouteBuilder, parse_trace_csv

__all__ = [
    "MovementTrace",
    "RadioParams",
    "RadioSimulator",
    "RouteBuilder",
    "derive_key",
    "emit",
    "make_accessory",
    "parse_trace_csv",
    "rotate_key",
    "run_radio_sim",
    "step_state",
]
