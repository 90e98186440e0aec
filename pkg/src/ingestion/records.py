"""Record types produced by the generation and weather loaders."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Generic, Iterator, Optional, Sequence, Tuple, TypeVar, Union

import pandas as pd

GENERATION_COLUMNS = ("timestamp", "e_dc_kwh", "e_ac_kwh")
GENERATION_EXPORT_COLUMN = "e_export_kwh"
WEATHER_COLUMNS = ("timestamp", "ghi_w_m2", "dni_w_m2", "dhi_w_m2", "gpoa_w_m2",
                   "temp_c", "wind_ms", "weather_label")


class WeatherLabel(str, Enum):
    """Weather status reported by the logger, in tie-break order."""

    CLEAR = "clear"
    PARTLY_CLOUDY = "partly_cloudy"
    OVERCAST = "overcast"
    RAIN = "rain"


@dataclass(frozen=True)
class GenerationRecord:
    """Energy produced in the hour ending at ``timestamp``."""

    timestamp: pd.Timestamp
    e_dc_kwh: float
    e_ac_kwh: float
    e_export_kwh: Optional[float] = None


@dataclass(frozen=True)
class WeatherRecord:
    """Mean irradiance and meteorology over the hour ending at ``timestamp``."""

    timestamp: pd.Timestamp
    ghi_w_m2: float
    dni_w_m2: float
    dhi_w_m2: float
    gpoa_w_m2: Optional[float]
    temp_c: float
    wind_ms: float
    weather_label: Optional[WeatherLabel] = None


@dataclass(frozen=True)
class Gap:
    """Missing hours between two consecutive records that are not one hour apart."""

    after: pd.Timestamp
    before: pd.Timestamp
    missing_hours: int
    line: Optional[int] = None


def hours_missing(delta: pd.Timedelta) -> int:
    """Whole hours absent in a step of ``delta``; 0 for a sub-hourly step."""
    return max(math.ceil(delta / pd.Timedelta(hours=1)) - 1, 0)


R = TypeVar("R", GenerationRecord, WeatherRecord)


@dataclass(frozen=True)
class ParsedSeries(Sequence, Generic[R]):
    """Time-ordered records of one file and the gaps found between them."""

    records: Tuple[R, ...] = ()
    gaps: Tuple[Gap, ...] = ()
    source: Optional[str] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[R]:
        return iter(self.records)

    def __getitem__(self, item: Union[int, slice]):
        return self.records[item]

    @property
    def has_export(self) -> bool:
        """True when any generation record carries metered grid export."""
        return any(getattr(r, "e_export_kwh", None) is not None for r in self.records)
