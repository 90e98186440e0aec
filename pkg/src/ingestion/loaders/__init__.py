"""CSV loaders for generation and weather exports."""

from src.ingestion.loaders.base_loader import BaseCsvLoader, parse_timestamp
from src.ingestion.loaders.generation_loader import GenerationLoader, parse_generation_csv
from src.ingestion.loaders.loader_factory import LoaderFactory
from src.ingestion.loaders.weather_loader import WeatherLoader, parse_weather_csv

__all__ = [
    'BaseCsvLoader',
    'GenerationLoader',
    'LoaderFactory',
    'WeatherLoader',
    'parse_generation_csv',
    'parse_timestamp',
    'parse_weather_csv',
]
