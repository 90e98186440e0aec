"""
Ingestion package: CSV loaders, canonical writers, alignment and aggregation.
"""

from src.ingestion.aggregation import (
    DailySummary,
    MonthlySummary,
    aggregate_daily,
    aggregate_monthly,
    dominant_label,
)
from src.ingestion.alignment import AlignedSeries, GapReport, ValidityPolicy, align
from src.ingestion.loaders import (
    GenerationLoader,
    LoaderFactory,
    WeatherLoader,
    parse_generation_csv,
    parse_weather_csv,
)
from src.ingestion.records import (
    Gap,
    GenerationRecord,
    ParsedSeries,
    WeatherLabel,
    WeatherRecord,
)
from src.ingestion.writers import write_generation_csv, write_weather_csv

__all__ = [
    'AlignedSeries',
    'DailySummary',
    'Gap',
    'GapReport',
    'GenerationLoader',
    'GenerationRecord',
    'LoaderFactory',
    'MonthlySummary',
    'ParsedSeries',
    'ValidityPolicy',
    'WeatherLabel',
    'WeatherLoader',
    'WeatherRecord',
    'aggregate_daily',
    'aggregate_monthly',
    'align',
    'dominant_label',
    'parse_generation_csv',
    'parse_weather_csv',
    'write_generation_csv',
    'write_weather_csv',
]
