"""
Canonical CSV serialization of generation and weather records.

Canonical form: header row, `\\n` line endings, timestamps as
YYYY-MM-DDTHH:MM:SS+HH:MM in the display offset, numbers as the shortest
round-trip decimal with a trailing ".0" dropped, absent optional cells empty.
"""

import csv
import io
from typing import Iterable, Optional

from src.ingestion.records import (
    GENERATION_COLUMNS,
    GENERATION_EXPORT_COLUMN,
    GenerationRecord,
    WEATHER_COLUMNS,
    WeatherRecord,
)
from src.utils.data_utils import format_number, format_timestamp


def _optional(value: Optional[float]) -> str:
    return "" if value is None else format_number(value)


def _render(header, rows) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().encode("utf-8")


def write_generation_csv(records: Iterable[GenerationRecord], utc_offset_h: float,
                         include_export: Optional[bool] = None) -> bytes:
    """
    Serialize generation records.

    Args:
        records: Records in time order
        utc_offset_h: Offset used to display timestamps
        include_export: Emit the e_export_kwh column (default: only when some record has it)

    Returns:
        UTF-8 CSV bytes
    """
    records = list(records)
    if include_export is None:
        include_export = any(r.e_export_kwh is not None for r in records)

    header = GENERATION_COLUMNS + ((GENERATION_EXPORT_COLUMN,) if include_export else ())
    rows = []
    for r in records:
        row = [format_timestamp(r.timestamp, utc_offset_h), format_number(r.e_dc_kwh), format_number(r.e_ac_kwh)]
        if include_export:
            row.append(_optional(r.e_export_kwh))
        rows.append(row)
    return _render(header, rows)


def write_weather_csv(records: Iterable[WeatherRecord], utc_offset_h: float) -> bytes:
    """
    Serialize weather records.

    Args:
        records: Records in time order
        utc_offset_h: Offset used to display timestamps

    Returns:
        UTF-8 CSV bytes
    """
    rows = [
        [
            format_timestamp(r.timestamp, utc_offset_h),
            format_number(r.ghi_w_m2),
            format_number(r.dni_w_m2),
            format_number(r.dhi_w_m2),
            _optional(r.gpoa_w_m2),
            format_number(r.temp_c),
            format_number(r.wind_ms),
            r.weather_label.value if r.weather_label is not None else "",
        ]
        for r in records
    ]
    return _render(WEATHER_COLUMNS, rows)
