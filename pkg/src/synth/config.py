"""Settings of the synthetic dataset generator."""

from datetime import date
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core_model.errors import ConfigError
from src.ingestion.records import WeatherLabel

N_CLASSES = len(WeatherLabel)
ROW_SUM_TOLERANCE = 1e-9

DEFAULT_TRANSITIONS = [
    [0.60, 0.25, 0.10, 0.05],
    [0.25, 0.45, 0.20, 0.10],
    [0.10, 0.25, 0.45, 0.20],
    [0.05, 0.15, 0.30, 0.50],
]


def _per_class(values: List[float], name: str) -> List[float]:
    if len(values) != N_CLASSES:
        raise ValueError(f"{name} needs {N_CLASSES} values (clear, partly_cloudy, overcast, rain)")
    return values


class SynthConfig(BaseModel):
    """
    Synthetic dataset settings. Per-class lists follow the order clear,
    partly_cloudy, overcast, rain.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(42, ge=0, lt=2 ** 64)
    n_days: int = Field(365, ge=1)
    start_date: date = date(2021, 1, 1)
    class_transition_matrix: List[List[float]] = Field(
        default_factory=lambda: [row[:] for row in DEFAULT_TRANSITIONS])
    initial_probabilities: List[float] = Field(default_factory=lambda: [0.25] * N_CLASSES)
    target_daily_e_ac_kwh: List[float] = Field(default_factory=lambda: [14.8, 11.9, 9.2, 2.1])
    clearness_means: List[float] = Field(default_factory=lambda: [0.75, 0.57, 0.40, 0.15])
    noise_sd: float = Field(0.15, ge=0.0, le=1.0)
    include_gpoa: bool = True

    @field_validator("target_daily_e_ac_kwh")
    @classmethod
    def _positive_targets(cls, v):
        _per_class(v, "target_daily_e_ac_kwh")
        if any(t <= 0 for t in v):
            raise ValueError("daily E_AC targets must be > 0")
        return v

    @field_validator("clearness_means")
    @classmethod
    def _clearness_range(cls, v):
        _per_class(v, "clearness_means")
        if any(not 0 < k <= 1.0 for k in v):
            raise ValueError("clearness means must lie in (0, 1]")
        return v

    @field_validator("initial_probabilities")
    @classmethod
    def _initial_distribution(cls, v):
        _per_class(v, "initial_probabilities")
        if any(p < 0 for p in v) or abs(sum(v) - 1.0) > ROW_SUM_TOLERANCE:
            raise ValueError("initial probabilities must be non-negative and sum to 1")
        return v

    @model_validator(mode="after")
    def _row_stochastic(self):
        matrix = np.asarray(self.class_transition_matrix, dtype=float)
        if matrix.shape != (N_CLASSES, N_CLASSES):
            raise ValueError(f"transition matrix must be {N_CLASSES}x{N_CLASSES}, got shape {matrix.shape}")
        if (matrix < 0).any():
            raise ValueError("transition probabilities must be non-negative")
        bad = np.flatnonzero(np.abs(matrix.sum(axis=1) - 1.0) > ROW_SUM_TOLERANCE)
        if bad.size:
            raise ValueError(f"transition matrix rows {bad.tolist()} do not sum to 1")
        return self

    def target_for(self, label: WeatherLabel) -> float:
        return self.target_daily_e_ac_kwh[list(WeatherLabel).index(label)]


def make_synth_config(overrides: Optional[Dict[str, Any]] = None) -> SynthConfig:
    """
    Build a SynthConfig, reporting invalid settings as ConfigError.

    Args:
        overrides: Field values replacing the defaults; None values are skipped

    Returns:
        SynthConfig

    Raises:
        ConfigError: If a setting is invalid
    """
    values = {k: v for k, v in (overrides or {}).items() if v is not None}
    try:
        return SynthConfig(**values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'synth'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"invalid synth config: {problems}", module="synth") from e
