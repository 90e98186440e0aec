"""Base CSV loader for hourly logger exports."""

import io
import logging
import math
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, BinaryIO, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.core_model.errors import DataError, PVToolkitError
from src.ingestion.records import Gap, ParsedSeries, hours_missing

ISO_OFFSET_PATTERN = re.compile(
    r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(:\d{2}(\.\d+)?)?[+-]\d{2}:\d{2}$"
)
ONE_HOUR = pd.Timedelta(hours=1)

Source = Union[bytes, str, Path, BinaryIO]


class BaseCsvLoader(ABC):
    """Abstract base class for hourly CSV loaders."""

    def __init__(self, source_name: str):
        """
        Initialize the base loader.

        Args:
            source_name: Identifier for the series being loaded
        """
        self.source_name = source_name
        self.logger = logging.getLogger(f"{__name__}.{source_name}")

    @property
    @abstractmethod
    def required_columns(self) -> Tuple[str, ...]:
        """Header columns every file must start with, in order."""

    @property
    def optional_columns(self) -> Tuple[str, ...]:
        """Columns that may follow the required ones."""
        return ()

    @abstractmethod
    def _build_record(self, timestamp: pd.Timestamp, row: dict, line: int):
        """
        Turn one validated row into a record.

        Args:
            timestamp: Parsed UTC timestamp
            row: Column name to raw cell text
            line: 1-based line number in the file

        Returns:
            The record
        """

    def load(self, source: Source) -> ParsedSeries:
        """
        Parse a CSV file, path or byte stream.

        Args:
            source: Raw bytes, a path, or a binary stream

        Returns:
            ParsedSeries of records in file order plus the gap report

        Raises:
            DataError: On any malformed, duplicate or out-of-range row
        """
        path = None
        if isinstance(source, (str, Path)):
            path = str(source)
            self.logger.info(f"Loading {self.source_name} series from {path}")
            try:
                with open(source, 'rb') as f:
                    data = f.read()
            except FileNotFoundError as e:
                raise DataError("file not found", module="ingestion", path=path) from e
        elif isinstance(source, bytes):
            data = source
        else:
            data = source.read()
            path = getattr(source, "name", None)

        try:
            series = self._parse(data)
        except PVToolkitError as e:
            raise e.with_context(module="ingestion", path=path)
        self.logger.info(f"Parsed {len(series)} {self.source_name} records, {len(series.gaps)} gaps")
        return ParsedSeries(series.records, series.gaps, source=path)

    def _read_frame(self, data: bytes) -> pd.DataFrame:
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise DataError(f"input is not valid UTF-8: {e}") from e
        if not text.strip():
            raise DataError("empty input: missing header row")

        try:
            frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False,
                                skip_blank_lines=False)
        except pd.errors.ParserError as e:
            match = re.search(r"line (\d+)", str(e))
            line = int(match.group(1)) if match else None
            raise DataError(f"malformed row: {e}", line=line) from e
        if not isinstance(frame.index, pd.RangeIndex):
            # every row had one field more than the header
            raise DataError("malformed row: more fields than header columns", line=2)

        columns = tuple(frame.columns)
        required = self.required_columns
        allowed = (required, required + self.optional_columns)
        if columns not in allowed:
            expected = ",".join(required)
            raise DataError(f"unexpected header {','.join(columns)!r}, expected {expected!r}", line=1)

        # trailing blank lines are tolerated, interior ones are not
        blank = frame.isna().all(axis=1) | (frame == "").all(axis=1)
        while len(frame) and blank.iloc[-1]:
            frame = frame.iloc[:-1]
            blank = blank.iloc[:-1]
        return frame

    def _parse(self, data: bytes) -> ParsedSeries:
        frame = self._read_frame(data)
        records: List[Any] = []
        gaps: List[Gap] = []
        previous: Optional[pd.Timestamp] = None

        for position, row in enumerate(frame.to_dict(orient="records")):
            line = position + 2
            if any(value is None or (isinstance(value, float) and math.isnan(value)) for value in row.values()):
                raise DataError("malformed row: missing fields", line=line)

            timestamp = parse_timestamp(row["timestamp"], line)
            if previous is not None:
                delta = timestamp - previous
                if delta == pd.Timedelta(0):
                    raise DataError(f"duplicate timestamp {row['timestamp']}", line=line)
                if delta < pd.Timedelta(0):
                    raise DataError(f"timestamp {row['timestamp']} is earlier than the previous row", line=line)
                if delta != ONE_HOUR:
                    missing = hours_missing(delta)
                    gaps.append(Gap(after=previous, before=timestamp, missing_hours=missing, line=line))
                    self.logger.warning(f"{self.source_name}: step of {delta} before line {line}, "
                                        f"{missing} missing hour(s)")

            records.append(self._build_record(timestamp, row, line))
            previous = timestamp

        return ParsedSeries(tuple(records), tuple(gaps))


def parse_timestamp(text: str, line: Optional[int] = None) -> pd.Timestamp:
    """
    Parse an ISO 8601 timestamp that carries a numeric UTC offset.

    Args:
        text: Timestamp text such as "2021-04-15T10:00:00+08:00"
        line: Line number for error context

    Returns:
        Aware timestamp converted to UTC

    Raises:
        DataError: If the text is not ISO 8601 with an offset
    """
    text = text.strip()
    if not ISO_OFFSET_PATTERN.match(text):
        raise DataError(f"timestamp {text!r} is not ISO 8601 with a numeric UTC offset", line=line)
    try:
        stamp = pd.Timestamp(text)
    except ValueError as e:
        raise DataError(f"invalid timestamp {text!r}: {e}", line=line) from e
    if stamp.second or stamp.microsecond:
        raise DataError(f"timestamp {text!r} has non-zero seconds", line=line)
    return stamp.tz_convert("UTC")


def parse_number(text: str, column: str, line: int, optional: bool = False) -> Optional[float]:
    """
    Parse a decimal cell.

    Args:
        text: Cell text
        column: Column name for error messages
        line: Line number for error context
        optional: Allow an empty cell (returns None)

    Returns:
        The value, or None for an empty optional cell

    Raises:
        DataError: If the cell is empty (when required), not a number or not finite
    """
    text = text.strip()
    if text == "":
        if optional:
            return None
        raise DataError(f"missing value in column {column}", line=line)
    try:
        value = float(text)
    except ValueError as e:
        raise DataError(f"column {column}: {text!r} is not a number", line=line) from e
    if not np.isfinite(value):
        raise DataError(f"column {column}: {text!r} is not finite", line=line)
    return value


def check_range(value: Optional[float], column: str, line: int,
                low: Optional[float] = None, high: Optional[float] = None) -> None:
    """Raise DataError when a value falls outside [low, high]."""
    if value is None:
        return
    if low is not None and value < low:
        raise DataError(f"column {column}: {value} below minimum {low}", line=line)
    if high is not None and value > high:
        raise DataError(f"column {column}: {value} above maximum {high}", line=line)