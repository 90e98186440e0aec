"""Assignment of one weather class per valid day."""

import logging
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Dict, Optional

import pandas as pd

from config import CLASSIFICATION_CONFIG
from src.ingestion.aggregation import dominant_label
from src.ingestion.alignment import AlignedSeries
from src.ingestion.records import WeatherLabel

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    LABELED = "labeled"
    DERIVED_FROM_CLEARNESS = "derived_from_clearness"


@dataclass(frozen=True)
class ClearnessThresholds:
    """Lower clearness-index bounds of each class, and the label coverage needed to trust labels."""

    clear: float = 0.65
    partly_cloudy: float = 0.45
    overcast: float = 0.25
    label_coverage: float = 0.5

    @classmethod
    def from_config(cls) -> "ClearnessThresholds":
        return cls(
            clear=CLASSIFICATION_CONFIG["kt_clear"],
            partly_cloudy=CLASSIFICATION_CONFIG["kt_partly"],
            overcast=CLASSIFICATION_CONFIG["kt_overcast"],
            label_coverage=CLASSIFICATION_CONFIG["label_coverage"],
        )


@dataclass(frozen=True)
class WeatherClass:
    """Weather class of a day; ``kind`` is None when the day has no daylight records."""

    kind: Optional[WeatherLabel]
    provenance: Optional[Provenance]
    clearness_index: Optional[float] = None
    label_coverage: float = 0.0

    @property
    def classifiable(self) -> bool:
        return self.kind is not None


def classify_clearness(kt: float, thresholds: Optional[ClearnessThresholds] = None) -> WeatherLabel:
    """Weather class for a daily clearness index."""
    thresholds = thresholds or ClearnessThresholds.from_config()
    if kt >= thresholds.clear:
        return WeatherLabel.CLEAR
    if kt >= thresholds.partly_cloudy:
        return WeatherLabel.PARTLY_CLOUDY
    if kt >= thresholds.overcast:
        return WeatherLabel.OVERCAST
    return WeatherLabel.RAIN


def classify_day(hours: pd.DataFrame, thresholds: Optional[ClearnessThresholds] = None) -> WeatherClass:
    """
    Weather class of one day from its hourly records.

    Labels win when they cover enough daylight hours (majority label, ties in
    WeatherLabel order). Otherwise the class follows the daily clearness index,
    the ratio of summed GHI to summed extraterrestrial horizontal irradiance
    over daylight hours.

    Args:
        hours: The day's joined rows of an aligned frame (needs daylight,
            weather_label, ghi_w_m2 and extraterrestrial_horizontal_w_m2)
        thresholds: Class thresholds

    Returns:
        WeatherClass (unclassifiable when there are no daylight records)
    """
    thresholds = thresholds or ClearnessThresholds.from_config()
    daylight = hours[hours["daylight"]]
    if daylight.empty:
        return WeatherClass(kind=None, provenance=None)

    labels = daylight["weather_label"]
    labeled = labels.map(lambda v: v is not None and v == v)
    coverage = float(labeled.mean())

    extraterrestrial = float(daylight["extraterrestrial_horizontal_w_m2"].sum())
    kt = float(daylight["ghi_w_m2"].sum()) / extraterrestrial if extraterrestrial > 0 else None

    if coverage >= thresholds.label_coverage:
        return WeatherClass(kind=WeatherLabel(dominant_label(labels)), provenance=Provenance.LABELED,
                            clearness_index=kt, label_coverage=coverage)
    if kt is None:
        return WeatherClass(kind=None, provenance=None, label_coverage=coverage)
    return WeatherClass(kind=classify_clearness(kt, thresholds), provenance=Provenance.DERIVED_FROM_CLEARNESS,
                        clearness_index=kt, label_coverage=coverage)


def classify_days(series: AlignedSeries, thresholds: Optional[ClearnessThresholds] = None) -> Dict[date, WeatherClass]:
    """
    Classify every valid day of an aligned series.

    Returns:
        Mapping from local date to WeatherClass, in date order
    """
    thresholds = thresholds or ClearnessThresholds.from_config()
    joined = series.joined
    by_day = dict(tuple(joined.groupby("local_date")))
    classes = {}
    for day in series.valid_dates:
        hours = by_day.get(day)
        if hours is None:
            classes[day] = WeatherClass(kind=None, provenance=None)
            continue
        classes[day] = classify_day(hours, thresholds)
    unclassifiable = sum(not c.classifiable for c in classes.values())
    if unclassifiable:
        logger.warning(f"{unclassifiable} valid days could not be classified")
    return classes
