"""Application configuration using Pydantic Settings."""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="SENTINEL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Server settings
    host: str = "127.0.0.1"
    port: int = 5680
    debug: bool = False
    log_level: str = "INFO"

    # Persistence
    data_dir: Path = Field(default_factory=lambda: Path.home() / ".findmy-sentinel")

    # AirGuard classifier
    airguard_min_duration_s: float = Field(default=30 * 60, gt=0)
    airguard_min_sightings: int = Field(default=3, ge=1)
    airguard_min_distance_m: float = Field(default=400.0, ge=0)
    airguard_alert_cooldown_s: float = Field(default=7 * 3600, ge=0)
    airguard_other_min_duration_s: float | None = Field(default=None, gt=0)

    # AirGuard scan schedule
    scan_period_s: float = Field(default=15 * 60, gt=0)
    scan_duration_s: float = Field(default=8.0, gt=0, le=60)

    # RSSI log-distance model
    rssi_at_1m: float = Field(default=-61.0, ge=-120, le=0)
    path_loss_exponent: float = Field(default=2.0, gt=0, le=6)

    # Radio simulation
    radio_range_m: float = Field(default=50.0, gt=0)
    emission_interval_s: float = Field(default=2.0, gt=0)
    rssi_noise_db: float = Field(default=2.0, ge=0)
    carrier_offset_m: float = Field(default=0.5, gt=0)

    # iOS general filter
    ios_recency_window_s: float = Field(default=15 * 60, gt=0)
    ios_threshold_duration_s: float = Field(default=10 * 60, gt=0)
    ios_threshold_distance_m: float = Field(default=840.0, gt=0)
    ios_run_period_s: float = Field(default=2 * 60, ge=2 * 60, le=5 * 60)
    ios_max_walking_speed_mps: float = Field(default=3.0, gt=0)

    # iOS single-visit detector
    single_visit_recency_s: float = Field(default=5 * 60, gt=0)
    single_visit_distance_m: float = Field(default=420.0, gt=0)
    single_visit_duration_s: float = Field(default=300.0, gt=0)

    # Visit generation
    visit_radius_m: float = Field(default=50.0, gt=0)
    visit_min_dwell_s: float = Field(default=10 * 60, gt=0)

    # iOS staging / notification
    staging_duration_s: float = Field(default=2.5 * 3600, gt=0)
    prolong_duration_s: float = Field(default=1.5 * 3600, gt=0)
    max_prolongs: int = Field(default=1, ge=0, le=10)
    home_radius_m: float = Field(default=100.0, gt=0)

    # Risk and fleet analytics
    risk_window_s: float = Field(default=14 * 86400, gt=0)
    risk_high_after_s: float = Field(default=24 * 3600, gt=0)
    fleet_step_s: float = Field(default=86400, gt=0)

    # Scan-mode detection probabilities (low latency, balanced, low power, opportunistic)
    scan_mode_probabilities: tuple[float, float, float, float] = (1.0, 0.8, 0.5, 0.25)

    @property
    def exports_dir(self) -> Path:
        """Directory for run exports (device stores, verdicts, fleet reports)."""
        return self.data_dir / "exports"


# Global settings instance
settings = Settings()
