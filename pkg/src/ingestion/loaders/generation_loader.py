"""Loader for hourly inverter generation exports."""

import logging
from typing import Optional, Tuple

import pandas as pd

from config import METRICS_CONFIG
from src.core_model.errors import DataError
from src.ingestion.loaders.base_loader import BaseCsvLoader, Source, check_range, parse_number
from src.ingestion.records import (
    GENERATION_COLUMNS,
    GENERATION_EXPORT_COLUMN,
    GenerationRecord,
    ParsedSeries,
)

logger = logging.getLogger(__name__)


class GenerationLoader(BaseCsvLoader):
    """Loader for `timestamp,e_dc_kwh,e_ac_kwh[,e_export_kwh]` files."""

    def __init__(self, source_name: str = "generation", meter_tolerance: Optional[float] = None):
        """
        Initialize the generation loader.

        Args:
            source_name: Identifier for the series being loaded
            meter_tolerance: Relative slack allowed for export above AC energy
        """
        super().__init__(source_name)
        self.meter_tolerance = METRICS_CONFIG["meter_tolerance"] if meter_tolerance is None else meter_tolerance

    @property
    def required_columns(self) -> Tuple[str, ...]:
        return GENERATION_COLUMNS

    @property
    def optional_columns(self) -> Tuple[str, ...]:
        return (GENERATION_EXPORT_COLUMN,)

    def _build_record(self, timestamp: pd.Timestamp, row: dict, line: int) -> GenerationRecord:
        e_dc = parse_number(row["e_dc_kwh"], "e_dc_kwh", line)
        e_ac = parse_number(row["e_ac_kwh"], "e_ac_kwh", line)
        check_range(e_dc, "e_dc_kwh", line, low=0.0)
        check_range(e_ac, "e_ac_kwh", line, low=0.0)

        e_export = None
        if GENERATION_EXPORT_COLUMN in row:
            e_export = parse_number(row[GENERATION_EXPORT_COLUMN], GENERATION_EXPORT_COLUMN, line, optional=True)
            check_range(e_export, GENERATION_EXPORT_COLUMN, line, low=0.0)
            if e_export is not None and e_export > e_ac * (1.0 + self.meter_tolerance):
                raise DataError(f"e_export_kwh {e_export} exceeds e_ac_kwh {e_ac}", line=line)

        return GenerationRecord(timestamp=timestamp, e_dc_kwh=e_dc, e_ac_kwh=e_ac, e_export_kwh=e_export)


def parse_generation_csv(stream: Source) -> ParsedSeries:
    """
    Parse a generation CSV.

    Args:
        stream: Raw bytes, a path, or a binary stream

    Returns:
        ParsedSeries of GenerationRecord in file order

    Raises:
        DataError: On malformed rows, duplicates or negative energies
    """
    return GenerationLoader().load(stream)
