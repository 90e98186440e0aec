"""
Solar position from the Spencer Fourier series.

Declination, equation of time and the extraterrestrial normal irradiance are
evaluated from the fractional year, taken as the phase within the tropical
year since the 1950 epoch of the series. The hour angle comes from true solar
time, built from UTC, the site longitude and the equation of time. Angles are
in degrees, azimuth clockwise from true north.
"""

import logging
from dataclasses import dataclass
from datetime import date, datetime
from typing import Iterable, Union

import numpy as np
import pandas as pd

from src.core_model.system_config import SystemConfig

logger = logging.getLogger(__name__)

SOLAR_CONSTANT_W_M2 = 1367.0
SERIES_EPOCH = pd.Timestamp("1950-01-01", tz="UTC")
TROPICAL_YEAR_DAYS = 365.2422

TimeLike = Union[datetime, pd.Timestamp, str]


@dataclass(frozen=True)
class SunPosition:
    """Position of the sun at one instant."""

    zenith_deg: float
    azimuth_deg: float
    declination_deg: float
    hour_angle_deg: float
    extraterrestrial_normal_w_m2: float

    @property
    def elevation_deg(self) -> float:
        return 90.0 - self.zenith_deg

    @property
    def above_horizon(self) -> bool:
        return self.zenith_deg < 90.0


def to_utc_index(times: Union[TimeLike, Iterable[TimeLike]], utc_offset_h: float = 0.0) -> pd.DatetimeIndex:
    """
    Convert timestamps to a UTC DatetimeIndex.

    Naive timestamps are read as local civil time at ``utc_offset_h``.

    Args:
        times: A single timestamp or an iterable of timestamps
        utc_offset_h: Offset applied to naive timestamps

    Returns:
        Timezone-aware index in UTC
    """
    if isinstance(times, pd.DatetimeIndex):
        index = times
    else:
        if isinstance(times, (datetime, pd.Timestamp, str)):
            times = [times]
        stamps = [pd.Timestamp(t) for t in times]
        aware = {s.tzinfo is not None for s in stamps}
        if len(aware) > 1:
            raise ValueError("cannot mix naive and timezone-aware timestamps")
        if aware == {True}:
            stamps = [s.tz_convert("UTC") for s in stamps]
        index = pd.DatetimeIndex(stamps)
    if index.tz is None:
        index = (index - pd.Timedelta(hours=utc_offset_h)).tz_localize("UTC")
    return index.tz_convert("UTC")


def _fractional_year(index: pd.DatetimeIndex) -> np.ndarray:
    # phase within the tropical year counted from the series' 1950 epoch, so
    # the leap-year cycle does not shift the equinoxes by up to a day
    days = np.asarray((index - SERIES_EPOCH) / pd.Timedelta(days=1), dtype=float)
    return 2.0 * np.pi * np.mod(days, TROPICAL_YEAR_DAYS) / TROPICAL_YEAR_DAYS


def _declination_rad(gamma: np.ndarray) -> np.ndarray:
    return (0.006918
            - 0.399912 * np.cos(gamma) + 0.070257 * np.sin(gamma)
            - 0.006758 * np.cos(2 * gamma) + 0.000907 * np.sin(2 * gamma)
            - 0.002697 * np.cos(3 * gamma) + 0.00148 * np.sin(3 * gamma))


def _equation_of_time_min(gamma: np.ndarray) -> np.ndarray:
    return 229.18 * (0.000075
                     + 0.001868 * np.cos(gamma) - 0.032077 * np.sin(gamma)
                     - 0.014615 * np.cos(2 * gamma) - 0.040849 * np.sin(2 * gamma))


def _extraterrestrial_normal(gamma: np.ndarray) -> np.ndarray:
    return SOLAR_CONSTANT_W_M2 * (1.00011
                                  + 0.034221 * np.cos(gamma) + 0.00128 * np.sin(gamma)
                                  + 0.000719 * np.cos(2 * gamma) + 0.000077 * np.sin(2 * gamma))


def solar_positions_at(latitude_deg: float, longitude_deg: float, index: pd.DatetimeIndex) -> pd.DataFrame:
    """
    Vectorised solar position for a UTC index.

    Args:
        latitude_deg: Site latitude, degrees north
        longitude_deg: Site longitude, degrees east
        index: UTC DatetimeIndex

    Returns:
        DataFrame indexed like ``index`` with columns zenith_deg, azimuth_deg,
        declination_deg, hour_angle_deg, extraterrestrial_normal_w_m2
    """
    gamma = _fractional_year(index)
    decl = _declination_rad(gamma)
    eot = _equation_of_time_min(gamma)

    utc_minutes = np.asarray(index.hour * 60.0 + index.minute + index.second / 60.0)
    true_solar_minutes = utc_minutes + eot + 4.0 * longitude_deg
    # wrapped to [-180, 180), negative before solar noon
    hour_angle = np.mod(true_solar_minutes / 4.0, 360.0) - 180.0

    lat = np.radians(latitude_deg)
    ha = np.radians(hour_angle)
    cos_zenith = np.sin(lat) * np.sin(decl) + np.cos(lat) * np.cos(decl) * np.cos(ha)
    zenith = np.degrees(np.arccos(np.clip(cos_zenith, -1.0, 1.0)))

    azimuth = np.degrees(np.arctan2(np.sin(ha), np.cos(ha) * np.sin(lat) - np.tan(decl) * np.cos(lat))) + 180.0
    azimuth = np.mod(azimuth, 360.0)

    return pd.DataFrame({
        "zenith_deg": zenith,
        "azimuth_deg": azimuth,
        "declination_deg": np.degrees(decl),
        "hour_angle_deg": hour_angle,
        "extraterrestrial_normal_w_m2": _extraterrestrial_normal(gamma),
    }, index=index)


def solar_positions(cfg: SystemConfig, times) -> pd.DataFrame:
    """
    Solar position table for a configured site.

    Args:
        cfg: System configuration (latitude, longitude, UTC offset)
        times: Timestamps; naive values are local civil time

    Returns:
        DataFrame of SunPosition fields indexed by UTC timestamp
    """
    index = to_utc_index(times, cfg.utc_offset_h)
    return solar_positions_at(cfg.latitude_deg, cfg.longitude_deg, index)


def sun_position(cfg: SystemConfig, timestamp: TimeLike) -> SunPosition:
    """
    Position of the sun at a single instant.

    Args:
        cfg: System configuration
        timestamp: Aware timestamp, or naive local civil time

    Returns:
        SunPosition
    """
    row = solar_positions(cfg, timestamp).iloc[0]
    return SunPosition(
        zenith_deg=float(row["zenith_deg"]),
        azimuth_deg=float(row["azimuth_deg"]),
        declination_deg=float(row["declination_deg"]),
        hour_angle_deg=float(row["hour_angle_deg"]),
        extraterrestrial_normal_w_m2=float(row["extraterrestrial_normal_w_m2"]),
    )


def solar_noon(cfg: SystemConfig, day: date) -> pd.Timestamp:
    """
    Instant of true solar noon on a local calendar day.

    Args:
        cfg: System configuration
        day: Local calendar date

    Returns:
        Aware timestamp in UTC
    """
    local_midnight_utc = pd.Timestamp(day) - pd.Timedelta(hours=cfg.utc_offset_h)
    guess = local_midnight_utc + pd.Timedelta(hours=12 + cfg.utc_offset_h - cfg.longitude_deg / 15.0)
    # two fixed-point passes converge to well under a second
    for _ in range(2):
        gamma = _fractional_year(pd.DatetimeIndex([guess]).tz_localize("UTC"))
        eot = float(_equation_of_time_min(gamma)[0])
        utc_day_start = guess.normalize()
        minutes = 720.0 - 4.0 * cfg.longitude_deg - eot
        guess = utc_day_start + pd.Timedelta(minutes=minutes)
        if guess - local_midnight_utc >= pd.Timedelta(hours=24):
            guess -= pd.Timedelta(days=1)
        elif guess < local_midnight_utc:
            guess += pd.Timedelta(days=1)
    return guess.tz_localize("UTC")
