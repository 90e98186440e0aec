"""
Core model package: configuration types, validation and the error hierarchy.
"""

from src.core_model.errors import ConfigError, DataError, PVToolkitError, UndefinedValueError
from src.core_model.system_config import (
    EmissionConfig,
    FinanceConfig,
    SystemConfig,
    ToolkitConfig,
    config_from_dict,
    config_to_dict,
    load_config,
)
from src.core_model.validation import (
    ValidationReport,
    Violation,
    validate_all,
    validate_config,
    validate_emissions,
    validate_finance,
)

__all__ = [
    'ConfigError',
    'DataError',
    'PVToolkitError',
    'UndefinedValueError',
    'EmissionConfig',
    'FinanceConfig',
    'SystemConfig',
    'ToolkitConfig',
    'config_from_dict',
    'config_to_dict',
    'load_config',
    'ValidationReport',
    'Violation',
    'validate_all',
    'validate_config',
    'validate_emissions',
    'validate_finance',
]
