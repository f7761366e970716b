"""Custom exception hierarchy for the sentinel toolkit."""

from typing import Any


class SentinelError(Exception):
    """Base exception for all sentinel errors."""

    def __init__(
        self,
        code: str,
        message: str,
        details: dict[str, Any] | None = None,
    ):
        self.code = code
        self.message = message
        self.details = details or {}
        super().__init__(message)


class CodecError(SentinelError):
    """BLE advertisement codec errors."""

    pass


class KeyLengthError(CodecError):
    """Public key does not have the expected length."""

    def __init__(self, length: int, expected: int = 28):
        super().__init__(
            code="KEY_LENGTH",
            message=f"Public key must be {expected} bytes, got {length}",
            details={"length": length, "expected": expected},
        )


class BadAddressError(CodecError):
    """BLE address is malformed or lacks the static-address marker bits."""

    def __init__(self, address: bytes, reason: str = "static-address bits not set"):
        super().__init__(
            code="BAD_ADDRESS",
            message=f"Invalid BLE address {address.hex(':')}: {reason}",
            details={"address": address.hex(), "reason": reason},
        )


class NotFindMyError(CodecError):
    """Payload is not a Find My separated-state advertisement."""

    def __init__(self, offset: int, expected: int, actual: int):
        super().__init__(
            code="NOT_FIND_MY",
            message=f"Header byte {offset} is 0x{actual:02X}, expected 0x{expected:02X}",
            details={"offset": offset, "expected": expected, "actual": actual},
        )


class MalformedLengthError(CodecError):
    """Payload length is inconsistent with its length fields."""

    def __init__(self, length: int, expected: int):
        super().__init__(
            code="MALFORMED_LENGTH",
            message=f"Payload has {length} bytes, expected {expected}",
            details={"length": length, "expected": expected},
        )


class HexDumpError(CodecError):
    """A hex-dump line could not be parsed."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(
            code="BAD_HEXDUMP",
            message=f"Line {line_number}: {reason}",
            details={"line": line_number, "reason": reason},
        )


class UnsupportedSoundCommandError(CodecError):
    """The device class does not support the requested sound action."""

    def __init__(self, device_class: str, action: str):
        super().__init__(
            code="UNSUPPORTED_SOUND_COMMAND",
            message=f"{device_class} does not support the '{action}' sound action",
            details={"device_class": device_class, "action": action},
        )


class SimulationError(SentinelError):
    """Radio simulation errors."""

    pass


class EmptyOverlapError(SimulationError):
    """Victim and tracker traces share no time span."""

    def __init__(self, victim_span: tuple[float, float], tracker_span: tuple[float, float]):
        super().__init__(
            code="EMPTY_OVERLAP",
            message="Victim and tracker traces do not overlap in time",
            details={"victim_span": list(victim_span), "tracker_span": list(tracker_span)},
        )


class TraceError(SimulationError):
    """Movement trace is invalid or could not be parsed."""

    def __init__(self, reason: str, details: dict[str, Any] | None = None):
        super().__init__(
            code="INVALID_TRACE",
            message=f"Invalid movement trace: {reason}",
            details=details or {},
        )


class ScenarioError(SentinelError):
    """Scenario configuration and execution errors."""

    pass


class ScenarioConfigError(ScenarioError):
    """Scenario file failed validation."""

    def __init__(self, source: str, errors: list[dict[str, Any]]):
        fields = ", ".join(f"{e['field']}: {e['message']}" for e in errors)
        super().__init__(
            code="SCENARIO_CONFIG",
            message=f"Invalid scenario '{source}': {fields}",
            details={"source": source, "errors": errors},
        )


class UnknownScenarioError(ScenarioError):
    """Named canonical scenario does not exist."""

    def __init__(self, name: str, available: list[str]):
        super().__init__(
            code="UNKNOWN_SCENARIO",
            message=f"Scenario '{name}' not found",
            details={"name": name, "available": available},
        )


class ExpectationMismatchError(ScenarioError):
    """Scenario results differ from the expectation file."""

    def __init__(self, mismatches: list[str]):
        super().__init__(
            code="EXPECTATION_MISMATCH",
            message=f"{len(mismatches)} expectation(s) not met",
            details={"mismatches": mismatches},
        )


class PersistenceError(SentinelError):
    """Persistence layer errors."""

    pass
