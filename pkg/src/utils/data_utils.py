"""Utilities for number and timestamp formatting in the PV performance toolkit."""
import math
from datetime import datetime, timedelta, timezone
from decimal import Decimal, ROUND_HALF_EVEN
from typing import Optional


def round_half_even(value: float, decimals: int = 4) -> float:
    """
    Round a float to a fixed number of decimals using round-half-even on its
    shortest decimal representation.

    Args:
        value: The value to round
        decimals: Number of decimal places to keep

    Returns:
        Rounded value (non-finite values are returned unchanged)
    """
    if not math.isfinite(value):
        return value
    quantum = Decimal(1).scaleb(-decimals)
    rounded = float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_EVEN))
    # avoid "-0.0" in reports
    return rounded + 0.0


def format_number(value: float) -> str:
    """
    Canonical CSV number: shortest round-trip decimal, trailing ".0" removed.

    Args:
        value: The value to format

    Returns:
        Formatted number (e.g. 650.0 -> "650", 0.41 -> "0.41")
    """
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    if text == "-0":
        text = "0"
    return text


def offset_timezone(utc_offset_h: float) -> timezone:
    """
    Build a fixed-offset timezone.

    Args:
        utc_offset_h: Offset from UTC in hours

    Returns:
        A datetime.timezone instance
    """
    return timezone(timedelta(minutes=round(utc_offset_h * 60)))


def format_timestamp(timestamp: datetime, utc_offset_h: Optional[float] = None) -> str:
    """
    Format a timezone-aware timestamp as ISO 8601 with a numeric offset.

    Args:
        timestamp: Aware datetime
        utc_offset_h: Display offset in hours (default: keep the timestamp's own offset)

    Returns:
        Formatted timestamp such as "2021-04-15T10:00:00+08:00"
    """
    if utc_offset_h is not None:
        timestamp = timestamp.astimezone(offset_timezone(utc_offset_h))
    return timestamp.isoformat(timespec="seconds")
