"""
Weather statistics package: day classification and correlation analysis.
"""

from src.weather_stats.classification import (
    ClearnessThresholds,
    Provenance,
    WeatherClass,
    classify_clearness,
    classify_day,
    classify_days,
)
from src.weather_stats.correlation import (
    CorrelationReport,
    WeatherClassStats,
    correlation_report,
    pearson,
)

__all__ = [
    'ClearnessThresholds',
    'CorrelationReport',
    'Provenance',
    'WeatherClass',
    'WeatherClassStats',
    'classify_clearness',
    'classify_day',
    'classify_days',
    'correlation_report',
    'pearson',
]
