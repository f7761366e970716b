"""Scan-parameter sweep: how many nearby devices a scan of a given length finds."""

import logging
from collections.abc import Sequence
from enum import Enum

import numpy as np
from pydantic import BaseModel

from findmy_sentinel.config import settings

logger = logging.getLogger(__name__)


class ScanMode(str, Enum):
    """Android scan modes, from most to least sensitive."""

    LOW_LATENCY = "LowLatency"
    BALANCED = "Balanced"
    LOW_POWER = "LowPower"
    OPPORTUNISTIC = "Opportunistic"

    @property
    def probability(self) -> float:
        """Chance that one emitted frame is received during the scan."""
        return settings.scan_mode_probabilities[list(ScanMode).index(self)]


class SweepResult(BaseModel):
    durations_s: list[float]
    modes: list[ScanMode]
    devices: int
    scans: int
    # mean_discovered[i][j]: durations_s[i] under modes[j]
    mean_discovered: list[list[float]]

    def at(self, duration_s: float, mode: ScanMode) -> float:
        return self.mean_discovered[self.durations_s.index(duration_s)][self.modes.index(mode)]


def scan_parameter_sweep(
    durations_s: Sequence[float] = tuple(float(d) for d in range(1, 11)),
    modes: Sequence[ScanMode] = tuple(ScanMode),
    devices: int = 8,
    scans: int = 10,
    emission_interval_s: float | None = None,
    seed: int = 0,
) -> SweepResult:
    """Mean devices discovered per (duration, mode) over seeded scans.

    All devices are in range. Each scan draws one emission phase per device
    and one reception uniform per frame; every cell reuses the same draws,
    so the matrix is monotone in both duration and mode sensitivity.
    """
    if not durations_s or min(durations_s) <= 0:
        raise ValueError("scan durations must be positive")
    interval = emission_interval_s or settings.emission_interval_s
    longest = max(durations_s)
    frames = int(np.ceil(longest / interval)) + 1

    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, interval, size=(scans, devices))
    receptions = rng.uniform(0.0, 1.0, size=(scans, devices, frames))
    frame_times = phases[:, :, None] + interval * np.arange(frames)[None, None, :]

    matrix: list[list[float]] = []
    for duration in durations_s:
        emitted = frame_times < duration
        row = []
        for mode in modes:
            heard = emitted & (receptions < mode.probability)
            discovered = heard.any(axis=2).sum(axis=1)
            row.append(float(discovered.mean()))
        matrix.append(row)

    logger.debug(f"Swept {len(durations_s)} durations x {len(modes)} modes over {scans} scans")
    return SweepResult(
        durations_s=[float(d) for d in durations_s],
        modes=list(modes),
        devices=devices,
        scans=scans,
        mean_discovered=matrix,
    )
