"""Configuration package for the PV performance toolkit."""
from .config import (
    ROOT_DIR,
    INGESTION_CONFIG,
    METRICS_CONFIG,
    CLASSIFICATION_CONFIG,
    REPORT_CONFIG,
    LOG_LEVEL,
    LOG_FILE,
    logger
)
