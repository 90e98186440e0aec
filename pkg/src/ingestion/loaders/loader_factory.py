"""Factory for choosing a loader from a file's header row."""

import logging
import os

from src.core_model.errors import DataError
from src.ingestion.loaders.base_loader import BaseCsvLoader
from src.ingestion.loaders.generation_loader import GenerationLoader
from src.ingestion.loaders.weather_loader import WeatherLoader
from src.ingestion.records import GENERATION_COLUMNS, WEATHER_COLUMNS

logger = logging.getLogger(__name__)


class LoaderFactory:
    """Factory for creating the appropriate CSV loader."""

    @staticmethod
    def get_loader(source_path: str) -> BaseCsvLoader:
        """
        Get the loader matching the header of a CSV file.

        Args:
            source_path: Path to the CSV file

        Returns:
            A GenerationLoader or WeatherLoader

        Raises:
            DataError: If the file is missing or the header matches neither schema
        """
        if not os.path.exists(source_path):
            logger.error(f"File not found: {source_path}")
            raise DataError("file not found", module="ingestion", path=source_path)

        with open(source_path, 'r', encoding='utf-8-sig') as f:
            header = tuple(cell.strip() for cell in f.readline().strip().split(","))

        if header[:len(GENERATION_COLUMNS)] == GENERATION_COLUMNS:
            logger.info(f"Creating generation loader for {source_path}")
            return GenerationLoader()
        if header == WEATHER_COLUMNS:
            logger.info(f"Creating weather loader for {source_path}")
            return WeatherLoader()

        raise DataError(f"unrecognised header {','.join(header)!r}", module="ingestion",
                        path=source_path, line=1)
