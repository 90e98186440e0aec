"""Configuration module for the PV performance toolkit."""
import os
import logging
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Project root directory
ROOT_DIR = Path(__file__).parent.parent.absolute()

# Data-quality policy for aligned series
INGESTION_CONFIG = {
    "daylight_fraction": float(os.getenv("PV_DAYLIGHT_FRACTION", 0.9)),
    "min_valid_days": int(os.getenv("PV_MIN_VALID_DAYS", 25)),
}

# Metric engine settings
METRICS_CONFIG = {
    # relative tolerance before E_AC > E_DC is treated as a metering error
    "meter_tolerance": float(os.getenv("PV_METER_TOLERANCE", 0.005)),
    # "auto": 8784 h for a single leap calendar year, else 8760
    "hours_basis": os.getenv("PV_HOURS_BASIS", "auto"),
}

# Weather-class assignment
CLASSIFICATION_CONFIG = {
    "kt_clear": float(os.getenv("PV_KT_CLEAR", 0.65)),
    "kt_partly": float(os.getenv("PV_KT_PARTLY", 0.45)),
    "kt_overcast": float(os.getenv("PV_KT_OVERCAST", 0.25)),
    "label_coverage": float(os.getenv("PV_LABEL_COVERAGE", 0.5)),
}

# Report rendering
REPORT_CONFIG = {
    "decimals": int(os.getenv("PV_REPORT_DECIMALS", 4)),
    "schema_version": "1.0",
}

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LOG_FILE")

logger = logging.getLogger("pv_performance")
