"""Correlation of PV output with irradiance, per weather class and overall."""

import logging
from dataclasses import dataclass, field
from datetime import date
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from src.core_model import published
from src.core_model.errors import DataError, UndefinedValueError
from src.ingestion.aggregation import DailySummary, aggregate_daily
from src.ingestion.alignment import AlignedSeries
from src.ingestion.records import WeatherLabel
from src.weather_stats.classification import ClearnessThresholds, WeatherClass, classify_days

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ["hour", "e_ac_kwh", "irradiance_w_m2", "class"]


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """
    Sample Pearson correlation coefficient.

    Args:
        xs: First sample
        ys: Second sample, same length

    Returns:
        r in [-1, 1]

    Raises:
        DataError: If the lengths differ or fewer than two pairs are given
        UndefinedValueError: If either sample has zero variance
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DataError(f"pearson needs two 1-D samples of equal length, got {x.shape} and {y.shape}",
                        module="weather_stats")
    if len(x) < 2:
        raise DataError("pearson needs at least two pairs", module="weather_stats")

    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedValueError("correlation undefined for a constant sample", module="weather_stats")
    r = float(np.dot(dx, dy)) / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


@dataclass(frozen=True)
class WeatherClassStats:
    """Daily output and hourly output/irradiance correlation of one weather class."""

    weather_class: str
    n_days: int
    mean_daily_e_ac_kwh: float
    mean_daily_h_poa_kwh_m2: float
    pearson_r_hourly: Optional[float]
    n_hour_pairs: int
    labeled_days: int = 0
    derived_days: int = 0

    def to_dict(self) -> Dict:
        return {
            "weather_class": self.weather_class,
            "n_days": self.n_days,
            "mean_daily_e_ac_kwh": self.mean_daily_e_ac_kwh,
            "mean_daily_h_poa_kwh_m2": self.mean_daily_h_poa_kwh_m2,
            "pearson_r_hourly": self.pearson_r_hourly,
            "n_hour_pairs": self.n_hour_pairs,
            "labeled_days": self.labeled_days,
            "derived_days": self.derived_days,
        }


@dataclass(frozen=True)
class CorrelationReport:
    """Per-class statistics, the overall daily correlation and hourly plot data."""

    classes: Dict[str, WeatherClassStats]
    overall_daily_r: Optional[float]
    n_valid_days: int
    unclassifiable_days: int
    day_classes: Dict[date, WeatherClass] = field(default_factory=dict)
    plot_data: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=PLOT_COLUMNS))

    @property
    def reference(self) -> Dict:
        """Published per-class values, for side-by-side display."""
        return {"classes": published.CLASS_STATS, "overall_daily_r": published.OVERALL_DAILY_R}

    def to_dict(self) -> Dict:
        return {
            "classes": {name: stats.to_dict() for name, stats in self.classes.items()},
            "overall_daily_r": self.overall_daily_r,
            "n_valid_days": self.n_valid_days,
            "unclassifiable_days": self.unclassifiable_days,
            "reference": self.reference,
        }


def _safe_pearson(xs, ys) -> Optional[float]:
    try:
        return pearson(xs, ys)
    except (UndefinedValueError, DataError) as e:
        logger.warning(f"Correlation unavailable: {e.message}")
        return None


def correlation_report(series: AlignedSeries, thresholds: Optional[ClearnessThresholds] = None,
                       daily: Optional[Sequence[DailySummary]] = None) -> CorrelationReport:
    """
    Weather-conditioned correlation analysis of an aligned series.

    Per class, r is computed over the pooled (hourly E_AC, hourly POA
    irradiance) pairs of all daylight hours of that class's days. Classes
    with fewer than two days are omitted. The overall r pairs daily E_AC with
    daily insolation across all valid days.

    Args:
        series: Aligned series
        thresholds: Classification thresholds
        daily: Precomputed daily summaries of ``series``

    Returns:
        CorrelationReport
    """
    daily = aggregate_daily(series) if daily is None else daily
    valid_daily = {d.date: d for d in daily if d.valid}
    day_classes = classify_days(series, thresholds)

    joined = series.joined
    hours = joined[joined["daylight"] & joined["local_date"].isin(list(day_classes))].copy()
    hours["class"] = hours["local_date"].map(
        lambda d: day_classes[d].kind.value if day_classes[d].classifiable else None
    )
    hours = hours[hours["class"].notna()]

    classes: Dict[str, WeatherClassStats] = {}
    for label in WeatherLabel:
        days = sorted(d for d, c in day_classes.items() if c.kind == label)
        if len(days) < 2:
            if days:
                logger.info(f"Class {label.value}: only {len(days)} day, statistics omitted")
            continue
        class_hours = hours[hours["class"] == label.value]
        r = _safe_pearson(class_hours["e_ac_kwh"].to_numpy(), class_hours["poa_w_m2"].to_numpy())
        classes[label.value] = WeatherClassStats(
            weather_class=label.value,
            n_days=len(days),
            mean_daily_e_ac_kwh=float(np.mean([valid_daily[d].e_ac_kwh for d in days])),
            mean_daily_h_poa_kwh_m2=float(np.mean([valid_daily[d].h_poa_kwh_m2 for d in days])),
            pearson_r_hourly=r,
            n_hour_pairs=len(class_hours) if r is not None else 0,
            labeled_days=sum(day_classes[d].provenance.value == "labeled" for d in days),
            derived_days=sum(day_classes[d].provenance.value == "derived_from_clearness" for d in days),
        )

    ordered_days = sorted(valid_daily)
    overall = None
    if len(ordered_days) >= 2:
        overall = _safe_pearson([valid_daily[d].e_ac_kwh for d in ordered_days],
                                [valid_daily[d].h_poa_kwh_m2 for d in ordered_days])

    unclassifiable = sum(not c.classifiable for c in day_classes.values())
    logger.info(f"Correlation over {len(valid_daily)} valid days: "
                f"{', '.join(f'{k} n={v.n_days}' for k, v in classes.items()) or 'no class with 2+ days'}")

    return CorrelationReport(
        classes=classes,
        overall_daily_r=overall,
        n_valid_days=len(valid_daily),
        unclassifiable_days=unclassifiable,
        day_classes=day_classes,
        plot_data=_plot_data(hours, series.config.utc_offset_h),
    )


def _plot_data(hours: pd.DataFrame, utc_offset_h: float) -> pd.DataFrame:
    """Mean hourly profile per class, one row per (class, local hour)."""
    if hours.empty:
        return pd.DataFrame(columns=PLOT_COLUMNS)
    local = hours.index.tz_convert("UTC").tz_localize(None) + pd.Timedelta(hours=utc_offset_h)
    profile = pd.DataFrame({
        "class": hours["class"].to_numpy(),
        "hour": local.hour,
        "e_ac_kwh": hours["e_ac_kwh"].to_numpy(),
        "irradiance_w_m2": hours["poa_w_m2"].to_numpy(),
    })
    profile = profile.groupby(["class", "hour"], as_index=False)[["e_ac_kwh", "irradiance_w_m2"]].mean()
    order = {label.value: i for i, label in enumerate(WeatherLabel)}
    profile["_order"] = profile["class"].map(order)
    profile = profile.sort_values(["_order", "hour"]).drop(columns="_order").reset_index(drop=True)
    return profile[PLOT_COLUMNS]
