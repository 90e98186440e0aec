"""
Join generation and weather series on their hourly timestamps and apply the
data-quality policy.

Each timestamp marks the end of a one-hour interval; sun position is taken at
the interval midpoint, which also dates the hour: a local day runs from the
01:00 stamp to the 24:00 stamp. A local day is valid when enough of its daylight hours
carry both a generation and a weather record; a month is valid when it has
enough valid days.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import INGESTION_CONFIG
from src.core_model.errors import DataError
from src.core_model.system_config import SystemConfig
from src.ingestion.records import Gap, GenerationRecord, WeatherRecord, hours_missing
from src.metrics.performance import estimate_cell_temperature
from src.solar_geometry.sun_position import solar_positions_at
from src.solar_geometry.transposition import (
    clearness_index_series,
    extraterrestrial_horizontal,
    transpose_series,
)

logger = logging.getLogger(__name__)

HALF_HOUR = pd.Timedelta(minutes=30)
ONE_HOUR = pd.Timedelta(hours=1)


@dataclass(frozen=True)
class ValidityPolicy:
    """Thresholds for day and month validity."""

    daylight_fraction: float = 0.9
    min_valid_days: int = 25

    @classmethod
    def from_config(cls) -> "ValidityPolicy":
        return cls(
            daylight_fraction=INGESTION_CONFIG["daylight_fraction"],
            min_valid_days=INGESTION_CONFIG["min_valid_days"],
        )


@dataclass(frozen=True)
class GapReport:
    """Missing and unmatched hours found while aligning."""

    generation_gaps: Tuple[Gap, ...] = ()
    weather_gaps: Tuple[Gap, ...] = ()
    generation_only: Tuple[pd.Timestamp, ...] = ()
    weather_only: Tuple[pd.Timestamp, ...] = ()

    @property
    def missing_generation_hours(self) -> int:
        return sum(g.missing_hours for g in self.generation_gaps)

    @property
    def missing_weather_hours(self) -> int:
        return sum(g.missing_hours for g in self.weather_gaps)


@dataclass(frozen=True)
class AlignedSeries:
    """
    Hourly joined records with quality flags.

    Attributes:
        frame: One row per timestamp present in either input, indexed by UTC
            timestamp, with the generation and weather columns plus
            has_generation, has_weather, joined, local_date, zenith_deg,
            azimuth_deg, daylight, poa_w_m2, poa_source, clearness_index,
            extraterrestrial_horizontal_w_m2 and cell_temp_c
        days: Per local date: expected_daylight_hours, joined_daylight_hours,
            joined_hours, coverage, valid
        months: Per (year, month): n_days, n_valid_days, valid
        gaps: Gap report
        config: System configuration used
        policy: Validity thresholds used
    """

    frame: pd.DataFrame
    days: pd.DataFrame
    months: pd.DataFrame
    gaps: GapReport
    config: SystemConfig = field(default_factory=SystemConfig)
    policy: ValidityPolicy = field(default_factory=ValidityPolicy)

    @property
    def joined(self) -> pd.DataFrame:
        """Rows carrying both a generation and a weather record."""
        return self.frame[self.frame["joined"]]

    @property
    def day_valid(self) -> pd.Series:
        return self.days["valid"]

    @property
    def month_valid(self) -> Dict[Tuple[int, int], bool]:
        return {key: bool(v) for key, v in self.months["valid"].items()}

    @property
    def valid_dates(self) -> List:
        return list(self.days.index[self.days["valid"].to_numpy()])

    @property
    def poa_source(self) -> Optional[str]:
        """POA provenance over joined daylight hours: measured, transposed or mixed."""
        sources = set(self.joined.loc[self.joined["daylight"], "poa_source"].dropna())
        if not sources:
            return None
        return sources.pop() if len(sources) == 1 else "mixed"


def _find_gaps(index: pd.DatetimeIndex) -> Tuple[Gap, ...]:
    gaps = []
    for previous, current in zip(index[:-1], index[1:]):
        delta = current - previous
        if delta != ONE_HOUR:
            gaps.append(Gap(after=previous, before=current, missing_hours=hours_missing(delta)))
    return tuple(gaps)


def _utc_index(rows) -> pd.DatetimeIndex:
    return pd.DatetimeIndex([pd.Timestamp(r.timestamp).tz_convert("UTC") for r in rows], name="timestamp")


def _generation_frame(gen: Iterable[GenerationRecord]) -> pd.DataFrame:
    rows = sorted(gen, key=lambda r: r.timestamp)
    frame = pd.DataFrame(
        {
            "e_dc_kwh": [r.e_dc_kwh for r in rows],
            "e_ac_kwh": [r.e_ac_kwh for r in rows],
            "e_export_kwh": [np.nan if r.e_export_kwh is None else r.e_export_kwh for r in rows],
        },
        index=_utc_index(rows),
        dtype=float,
    )
    return frame


def _weather_frame(weather: Iterable[WeatherRecord]) -> pd.DataFrame:
    rows = sorted(weather, key=lambda r: r.timestamp)
    frame = pd.DataFrame(
        {
            "ghi_w_m2": [r.ghi_w_m2 for r in rows],
            "dni_w_m2": [r.dni_w_m2 for r in rows],
            "dhi_w_m2": [r.dhi_w_m2 for r in rows],
            "gpoa_w_m2": [np.nan if r.gpoa_w_m2 is None else r.gpoa_w_m2 for r in rows],
            "temp_c": [r.temp_c for r in rows],
            "wind_ms": [r.wind_ms for r in rows],
        },
        index=_utc_index(rows),
        dtype=float,
    )
    frame["weather_label"] = pd.Series(
        [None if r.weather_label is None else r.weather_label.value for r in rows],
        index=frame.index, dtype=object,
    )
    return frame


def _check_unique(frame: pd.DataFrame, name: str) -> None:
    if frame.index.has_duplicates:
        first = frame.index[frame.index.duplicated()][0]
        raise DataError(f"duplicate {name} timestamp {first.isoformat()}", module="ingestion")


def _local_dates(index: pd.DatetimeIndex, utc_offset_h: float) -> np.ndarray:
    # the interval midpoint dates the hour, so a 24:00 stamp closes its own day
    local = index.tz_convert("UTC").tz_localize(None) + pd.Timedelta(hours=utc_offset_h) - HALF_HOUR
    return local.date


def expected_daylight_hours(dates: Sequence, cfg: SystemConfig) -> pd.Series:
    """
    Number of hourly stamps per local date whose interval midpoint has the sun
    above the horizon.

    Args:
        dates: Local calendar dates
        cfg: System configuration

    Returns:
        Series of counts indexed by date
    """
    dates = list(dates)
    if not dates:
        return pd.Series(dtype=int)
    offset = pd.Timedelta(hours=cfg.utc_offset_h)
    midnights = pd.DatetimeIndex([pd.Timestamp(d) for d in dates]) - offset
    stamps = (midnights.values[:, None] + np.arange(1, 25).astype("timedelta64[h]")[None, :]).ravel()
    midpoints = pd.DatetimeIndex(stamps).tz_localize("UTC") - HALF_HOUR
    zenith = solar_positions_at(cfg.latitude_deg, cfg.longitude_deg, midpoints)["zenith_deg"].to_numpy()
    counts = (zenith < 90.0).reshape(len(dates), 24).sum(axis=1)
    return pd.Series(counts, index=pd.Index(dates, name="local_date"))


def align(gen: Iterable[GenerationRecord], weather: Iterable[WeatherRecord],
          cfg: Optional[SystemConfig] = None, policy: Optional[ValidityPolicy] = None) -> AlignedSeries:
    """
    Join generation and weather records on timestamp and flag data quality.

    Args:
        gen: Generation records (any order)
        weather: Weather records (any order)
        cfg: System configuration (defaults when omitted)
        policy: Validity thresholds (environment defaults when omitted)

    Returns:
        AlignedSeries

    Raises:
        DataError: On empty inputs, duplicate timestamps, or no common timestamp
    """
    cfg = cfg or SystemConfig()
    policy = policy or ValidityPolicy.from_config()

    gen_frame = _generation_frame(gen)
    wx_frame = _weather_frame(weather)
    if gen_frame.empty:
        raise DataError("empty input: no generation records", module="ingestion")
    if wx_frame.empty:
        raise DataError("empty input: no weather records", module="ingestion")
    _check_unique(gen_frame, "generation")
    _check_unique(wx_frame, "weather")

    frame = pd.concat([gen_frame, wx_frame], axis=1, join="outer").sort_index()
    frame["has_generation"] = frame.index.isin(gen_frame.index)
    frame["has_weather"] = frame.index.isin(wx_frame.index)
    frame["joined"] = frame["has_generation"] & frame["has_weather"]
    n_joined = int(frame["joined"].sum())
    if n_joined == 0:
        raise DataError("no overlap between generation and weather timestamps", module="ingestion")

    frame["local_date"] = _local_dates(frame.index, cfg.utc_offset_h)

    sun = solar_positions_at(cfg.latitude_deg, cfg.longitude_deg, frame.index - HALF_HOUR)
    frame["zenith_deg"] = sun["zenith_deg"].to_numpy()
    frame["azimuth_deg"] = sun["azimuth_deg"].to_numpy()
    frame["daylight"] = frame["zenith_deg"] < 90.0

    transposed = transpose_series(frame["ghi_w_m2"].to_numpy(), frame["dni_w_m2"].to_numpy(),
                                  frame["dhi_w_m2"].to_numpy(), frame["zenith_deg"].to_numpy(),
                                  frame["azimuth_deg"].to_numpy(), cfg)
    measured = frame["gpoa_w_m2"].notna()
    frame["poa_w_m2"] = np.where(measured, frame["gpoa_w_m2"], transposed)
    frame["poa_source"] = np.where(measured, "measured", np.where(frame["has_weather"], "transposed", None))

    g_on = sun["extraterrestrial_normal_w_m2"].to_numpy()
    frame["extraterrestrial_horizontal_w_m2"] = extraterrestrial_horizontal(frame["zenith_deg"].to_numpy(), g_on)
    frame["clearness_index"] = clearness_index_series(frame["ghi_w_m2"].to_numpy(),
                                                      frame["zenith_deg"].to_numpy(), g_on)
    frame["cell_temp_c"] = estimate_cell_temperature(frame["temp_c"], frame["poa_w_m2"], cfg.noct_c)

    days = _day_flags(frame, cfg, policy)
    months = _month_flags(days, policy)

    gaps = GapReport(
        generation_gaps=_find_gaps(gen_frame.index),
        weather_gaps=_find_gaps(wx_frame.index),
        generation_only=tuple(frame.index[frame["has_generation"] & ~frame["has_weather"]]),
        weather_only=tuple(frame.index[frame["has_weather"] & ~frame["has_generation"]]),
    )
    if gaps.generation_only or gaps.weather_only:
        logger.warning(f"{len(gaps.generation_only)} generation hours lack weather, "
                       f"{len(gaps.weather_only)} weather hours lack generation")
    logger.info(f"Aligned {n_joined} hours over {len(days)} days "
                f"({int(days['valid'].sum())} valid), {int(months['valid'].sum())} valid months")

    return AlignedSeries(frame=frame, days=days, months=months, gaps=gaps, config=cfg, policy=policy)


def _day_flags(frame: pd.DataFrame, cfg: SystemConfig, policy: ValidityPolicy) -> pd.DataFrame:
    dates = sorted(set(frame["local_date"]))
    expected = expected_daylight_hours(dates, cfg)
    joined = frame[frame["joined"]]
    joined_daylight = joined[joined["daylight"]].groupby("local_date").size()
    joined_hours = joined.groupby("local_date").size()

    days = pd.DataFrame(index=pd.Index(dates, name="local_date"))
    days["expected_daylight_hours"] = expected.reindex(days.index).astype(int)
    days["joined_daylight_hours"] = joined_daylight.reindex(days.index, fill_value=0).astype(int)
    days["joined_hours"] = joined_hours.reindex(days.index, fill_value=0).astype(int)
    with np.errstate(divide="ignore", invalid="ignore"):
        coverage = days["joined_daylight_hours"] / days["expected_daylight_hours"].replace(0, np.nan)
    days["coverage"] = coverage.fillna(0.0)
    days["valid"] = (days["expected_daylight_hours"] > 0) & (days["coverage"] >= policy.daylight_fraction)

    for day, row in days[~days["valid"]].iterrows():
        logger.debug(f"Day {day} invalid: {row['joined_daylight_hours']}/{row['expected_daylight_hours']} "
                     f"daylight hours joined")
    return days


def _month_flags(days: pd.DataFrame, policy: ValidityPolicy) -> pd.DataFrame:
    keys = pd.MultiIndex.from_tuples([(d.year, d.month) for d in days.index], names=["year", "month"])
    per_day = pd.DataFrame({"valid": days["valid"].to_numpy()}, index=keys)
    grouped = per_day.groupby(level=["year", "month"])
    months = pd.DataFrame({
        "n_days": grouped.size(),
        "n_valid_days": grouped["valid"].sum().astype(int),
    })
    months["valid"] = months["n_valid_days"] >= policy.min_valid_days
    return months
