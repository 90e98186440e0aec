"""Daily and monthly summaries of an aligned series."""

import calendar
import logging
from collections import Counter
from dataclasses import dataclass
from datetime import date
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.ingestion.alignment import AlignedSeries
from src.ingestion.records import WeatherLabel

logger = logging.getLogger(__name__)

LABEL_ORDER = [label.value for label in WeatherLabel]


@dataclass(frozen=True)
class DailySummary:
    """Totals and means over the joined hours of one local day."""

    date: date
    e_dc_kwh: float
    e_ac_kwh: float
    e_export_kwh: float
    h_poa_kwh_m2: float
    temp_c: Optional[float]
    wind_ms: Optional[float]
    cell_temp_c: Optional[float]
    weather_label: Optional[str]
    clearness_index: Optional[float]
    joined_hours: int
    joined_daylight_hours: int
    expected_daylight_hours: int
    poa_source: Optional[str]
    export_source: Optional[str]
    valid: bool


@dataclass(frozen=True)
class MonthlySummary:
    """
    Sums over the valid days of a calendar month and daily means over those days.

    Mean fields are None when the month has no valid day.
    """

    year: int
    month: int
    n_days: int
    n_valid_days: int
    valid: bool
    e_dc_sum_kwh: float
    e_ac_sum_kwh: float
    e_export_sum_kwh: float
    h_poa_sum_kwh_m2: float
    e_dc_mean_kwh: Optional[float]
    e_ac_mean_kwh: Optional[float]
    e_export_mean_kwh: Optional[float]
    h_poa_mean_kwh_m2: Optional[float]
    temp_c: Optional[float] = None
    wind_ms: Optional[float] = None
    cell_temp_c: Optional[float] = None
    weather_label: Optional[str] = None
    poa_source: Optional[str] = None
    export_source: Optional[str] = None

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @property
    def days_in_month(self) -> int:
        return calendar.monthrange(self.year, self.month)[1]

    @classmethod
    def from_daily_means(cls, year: int, month: int, e_dc_kwh: float, e_ac_kwh: float,
                         h_poa_kwh_m2: float, e_export_kwh: Optional[float] = None,
                         cell_temp_c: Optional[float] = None, n_valid_days: Optional[int] = None,
                         **extra) -> "MonthlySummary":
        """
        Build a valid month from daily mean values, as published in monthly tables.

        Args:
            year: Calendar year
            month: Calendar month
            e_dc_kwh: Mean daily DC energy
            e_ac_kwh: Mean daily AC energy
            h_poa_kwh_m2: Mean daily plane-of-array insolation
            e_export_kwh: Mean daily grid export (defaults to 0)
            cell_temp_c: Mean cell temperature, passed through
            n_valid_days: Number of valid days (defaults to the days in the month)
            **extra: Other MonthlySummary fields

        Returns:
            MonthlySummary
        """
        days = n_valid_days if n_valid_days is not None else calendar.monthrange(year, month)[1]
        export = 0.0 if e_export_kwh is None else e_export_kwh
        fields = dict(
            year=year, month=month, n_days=days, n_valid_days=days, valid=True,
            e_dc_sum_kwh=e_dc_kwh * days, e_ac_sum_kwh=e_ac_kwh * days,
            e_export_sum_kwh=export * days, h_poa_sum_kwh_m2=h_poa_kwh_m2 * days,
            e_dc_mean_kwh=e_dc_kwh, e_ac_mean_kwh=e_ac_kwh,
            e_export_mean_kwh=export, h_poa_mean_kwh_m2=h_poa_kwh_m2,
            cell_temp_c=cell_temp_c,
        )
        fields.update(extra)
        return cls(**fields)


def dominant_label(labels: Iterable[Optional[str]]) -> Optional[str]:
    """Most frequent label; ties go to the earlier label in WeatherLabel order."""
    counts = Counter(label for label in labels if label is not None and label == label)
    if not counts:
        return None
    return max(counts, key=lambda label: (counts[label], -LABEL_ORDER.index(label)))


def _combine_sources(sources: Iterable[Optional[str]]) -> Optional[str]:
    found = {s for s in sources if s is not None}
    if not found:
        return None
    return found.pop() if len(found) == 1 else "mixed"


def _optional_mean(values: pd.Series) -> Optional[float]:
    values = values.dropna()
    return float(values.mean()) if len(values) else None


def aggregate_daily(series: AlignedSeries) -> List[DailySummary]:
    """
    Summarise each local day of an aligned series.

    Energies and insolation are summed over joined hours only. Grid export
    uses the metered value where present and ``e_ac_kwh * grid_export_fraction``
    otherwise.

    Args:
        series: Aligned series

    Returns:
        One DailySummary per local date, in date order
    """
    fraction = series.config.grid_export_fraction
    joined = series.joined.copy()
    metered = joined["e_export_kwh"].notna()
    joined["export"] = np.where(metered, joined["e_export_kwh"], joined["e_ac_kwh"] * fraction)
    joined["export_source"] = np.where(metered, "metered", "estimated")

    summaries = []
    by_day = dict(tuple(joined.groupby("local_date")))
    for day, flags in series.days.iterrows():
        hours = by_day.get(day)
        if hours is None or hours.empty:
            summaries.append(DailySummary(
                date=day, e_dc_kwh=0.0, e_ac_kwh=0.0, e_export_kwh=0.0, h_poa_kwh_m2=0.0,
                temp_c=None, wind_ms=None, cell_temp_c=None, weather_label=None, clearness_index=None,
                joined_hours=0, joined_daylight_hours=0,
                expected_daylight_hours=int(flags["expected_daylight_hours"]),
                poa_source=None, export_source=None, valid=bool(flags["valid"]),
            ))
            continue

        daylight = hours[hours["daylight"]]
        extraterrestrial = float(daylight["extraterrestrial_horizontal_w_m2"].sum())
        clearness = float(daylight["ghi_w_m2"].sum()) / extraterrestrial if extraterrestrial > 0 else None

        summaries.append(DailySummary(
            date=day,
            e_dc_kwh=float(hours["e_dc_kwh"].sum()),
            e_ac_kwh=float(hours["e_ac_kwh"].sum()),
            e_export_kwh=float(hours["export"].sum()),
            h_poa_kwh_m2=float(hours["poa_w_m2"].fillna(0.0).sum()) / 1000.0,
            temp_c=_optional_mean(hours["temp_c"]),
            wind_ms=_optional_mean(hours["wind_ms"]),
            cell_temp_c=_optional_mean(daylight["cell_temp_c"]),
            weather_label=dominant_label(daylight["weather_label"]),
            clearness_index=clearness,
            joined_hours=int(flags["joined_hours"]),
            joined_daylight_hours=int(flags["joined_daylight_hours"]),
            expected_daylight_hours=int(flags["expected_daylight_hours"]),
            poa_source=_combine_sources(daylight["poa_source"]),
            export_source=_combine_sources(hours["export_source"]),
            valid=bool(flags["valid"]),
        ))

    logger.debug(f"Built {len(summaries)} daily summaries")
    return summaries


def _summarise_month(year: int, month: int, days: Sequence[DailySummary], min_valid_days: int) -> MonthlySummary:
    valid = [d for d in days if d.valid]
    n_valid = len(valid)

    def total(attr: str) -> float:
        return float(sum(getattr(d, attr) for d in valid))

    def mean(attr: str) -> Optional[float]:
        values = [getattr(d, attr) for d in valid if getattr(d, attr) is not None]
        return float(np.mean(values)) if values else None

    sums = {name: total(name) for name in ("e_dc_kwh", "e_ac_kwh", "e_export_kwh", "h_poa_kwh_m2")}
    summary = MonthlySummary(
        year=year,
        month=month,
        n_days=len(days),
        n_valid_days=n_valid,
        valid=n_valid >= min_valid_days,
        e_dc_sum_kwh=sums["e_dc_kwh"],
        e_ac_sum_kwh=sums["e_ac_kwh"],
        e_export_sum_kwh=sums["e_export_kwh"],
        h_poa_sum_kwh_m2=sums["h_poa_kwh_m2"],
        e_dc_mean_kwh=sums["e_dc_kwh"] / n_valid if n_valid else None,
        e_ac_mean_kwh=sums["e_ac_kwh"] / n_valid if n_valid else None,
        e_export_mean_kwh=sums["e_export_kwh"] / n_valid if n_valid else None,
        h_poa_mean_kwh_m2=sums["h_poa_kwh_m2"] / n_valid if n_valid else None,
        temp_c=mean("temp_c"),
        wind_ms=mean("wind_ms"),
        cell_temp_c=mean("cell_temp_c"),
        weather_label=dominant_label(d.weather_label for d in valid),
        poa_source=_combine_sources(d.poa_source for d in valid),
        export_source=_combine_sources(d.export_source for d in valid),
    )
    if not summary.valid:
        logger.warning(f"Month {summary.label} has {n_valid} valid days (< {min_valid_days}); flagged invalid")
    return summary


def aggregate_monthly(series: AlignedSeries,
                      daily: Optional[Sequence[DailySummary]] = None) -> List[MonthlySummary]:
    """
    Summarise each calendar month of an aligned series.

    Args:
        series: Aligned series
        daily: Precomputed daily summaries of ``series`` (computed when omitted)

    Returns:
        One MonthlySummary per calendar month present, in time order
    """
    daily = aggregate_daily(series) if daily is None else daily
    grouped = {}
    for summary in daily:
        grouped.setdefault((summary.date.year, summary.date.month), []).append(summary)

    months = [
        _summarise_month(year, month, days, series.policy.min_valid_days)
        for (year, month), days in sorted(grouped.items())
    ]
    logger.info(f"Aggregated {len(daily)} days into {len(months)} months "
                f"({sum(m.valid for m in months)} valid)")
    return months
