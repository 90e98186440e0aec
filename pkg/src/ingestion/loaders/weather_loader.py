"""Loader for hourly weather-station exports."""

import logging
from typing import Optional, Tuple

import pandas as pd

from src.core_model.errors import DataError
from src.ingestion.loaders.base_loader import BaseCsvLoader, Source, check_range, parse_number
from src.ingestion.records import WEATHER_COLUMNS, ParsedSeries, WeatherLabel, WeatherRecord

logger = logging.getLogger(__name__)

MAX_IRRADIANCE_W_M2 = 1500.0


class WeatherLoader(BaseCsvLoader):
    """Loader for weather files with optional POA and label cells."""

    def __init__(self, source_name: str = "weather"):
        super().__init__(source_name)

    @property
    def required_columns(self) -> Tuple[str, ...]:
        return WEATHER_COLUMNS

    def _build_record(self, timestamp: pd.Timestamp, row: dict, line: int) -> WeatherRecord:
        ghi = parse_number(row["ghi_w_m2"], "ghi_w_m2", line)
        dni = parse_number(row["dni_w_m2"], "dni_w_m2", line)
        dhi = parse_number(row["dhi_w_m2"], "dhi_w_m2", line)
        gpoa = parse_number(row["gpoa_w_m2"], "gpoa_w_m2", line, optional=True)
        temp = parse_number(row["temp_c"], "temp_c", line)
        wind = parse_number(row["wind_ms"], "wind_ms", line)

        check_range(ghi, "ghi_w_m2", line, low=0.0, high=MAX_IRRADIANCE_W_M2)
        check_range(dni, "dni_w_m2", line, low=0.0)
        check_range(dhi, "dhi_w_m2", line, low=0.0)
        check_range(gpoa, "gpoa_w_m2", line, low=0.0, high=MAX_IRRADIANCE_W_M2)
        check_range(wind, "wind_ms", line, low=0.0)

        return WeatherRecord(
            timestamp=timestamp,
            ghi_w_m2=ghi,
            dni_w_m2=dni,
            dhi_w_m2=dhi,
            gpoa_w_m2=gpoa,
            temp_c=temp,
            wind_ms=wind,
            weather_label=parse_label(row["weather_label"], line),
        )


def parse_label(text: str, line: Optional[int] = None) -> Optional[WeatherLabel]:
    """Weather label from cell text; an empty cell means absent."""
    text = text.strip()
    if not text:
        return None
    try:
        return WeatherLabel(text)
    except ValueError as e:
        allowed = ", ".join(label.value for label in WeatherLabel)
        raise DataError(f"unknown weather_label {text!r} (expected one of {allowed})", line=line) from e


def parse_weather_csv(stream: Source) -> ParsedSeries:
    """
    Parse a weather CSV. Empty gpoa_w_m2 or weather_label cells mean absent.

    Args:
        stream: Raw bytes, a path, or a binary stream

    Returns:
        ParsedSeries of WeatherRecord in file order

    Raises:
        DataError: On malformed rows, duplicates or out-of-range values
    """
    return WeatherLoader().load(stream)
